#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "alcove/cf.hpp"
#include "alcove/crystal_group.hpp"
#include "alcove/finite_group.hpp"
#include "alcove/presentation.hpp"
#include "alcove/quotients.hpp"
#include "alcove/root_datum.hpp"

using namespace alcove;

namespace {

using Table = std::vector<std::vector<unsigned>>;

IntegerMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  return IntegerMatrix::from_rows(rows);
}

Table cyclic(unsigned k) {
  Table t(k, std::vector<unsigned>(k));
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) t[i][j] = (i + j) % k;
  return t;
}

Table product(const Table& a, const Table& b) {
  const unsigned m = (unsigned)a.size(), n = (unsigned)b.size();
  Table t(m * n, std::vector<unsigned>(m * n));
  for (unsigned i1 = 0; i1 < m; ++i1)
    for (unsigned j1 = 0; j1 < n; ++j1)
      for (unsigned i2 = 0; i2 < m; ++i2)
        for (unsigned j2 = 0; j2 < n; ++j2)
          t[i1 * n + j1][i2 * n + j2] = a[i1][i2] * n + b[j1][j2];
  return t;
}

// elements are the permutations of {0..letters-1} in lexicographic order,
// so index 0 is the identity; product composes left factor after right
Table symmetric(unsigned letters) {
  std::vector<std::vector<unsigned>> perms;
  std::vector<unsigned> p(letters);
  std::iota(p.begin(), p.end(), 0u);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::vector<unsigned>& q) {
    return (unsigned)(std::lower_bound(perms.begin(), perms.end(), q) -
                      perms.begin());
  };
  Table t(perms.size(), std::vector<unsigned>(perms.size()));
  std::vector<unsigned> comp(letters);
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      for (unsigned x = 0; x < letters; ++x) comp[x] = perms[a][perms[b][x]];
      t[a][b] = index_of(comp);
    }
  return t;
}

// s^b r^a at index b*k + a, with r^a s = s r^{-a}
Table dihedral(unsigned k) {
  Table t(2 * k, std::vector<unsigned>(2 * k));
  for (unsigned b = 0; b < 2; ++b)
    for (unsigned a = 0; a < k; ++a)
      for (unsigned d = 0; d < 2; ++d)
        for (unsigned c = 0; c < k; ++c) {
          unsigned rot = ((d ? k - a : a) + c) % k;
          t[b * k + a][d * k + c] = ((b + d) % 2) * k + rot;
        }
  return t;
}

// unit quaternions: index = 2*u + s encodes (-1)^s * {1,i,j,k}[u]
Table quaternion() {
  static const unsigned unit[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {
      {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
  Table t(8, std::vector<unsigned>(8));
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b) {
      unsigned u = unit[a / 2][b / 2];
      int s = sign[a / 2][b / 2];
      unsigned neg = ((a % 2) + (b % 2) + (s < 0 ? 1 : 0)) % 2;
      t[a][b] = 2 * u + neg;
    }
  return t;
}

// relabel a table through a permutation fixing 0: same group, new names
Table relabel(const Table& t, const std::vector<unsigned>& sigma) {
  std::vector<unsigned> inv(sigma.size());
  for (unsigned i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
  Table out(t.size(), std::vector<unsigned>(t.size()));
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b)
      out[a][b] = inv[t[sigma[a]][sigma[b]]];
  return out;
}

FiniteGroup point_table(const CrystalGroup& g) {
  const std::size_t m = g.point_order();
  const std::size_t e = g.index_of(IntegerMatrix::identity(g.dim()));
  std::vector<unsigned> rl(m);
  unsigned next = 1;
  for (std::size_t i = 0; i < m; ++i) rl[i] = i == e ? 0 : next++;
  Table t(m, std::vector<unsigned>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      t[rl[i]][rl[j]] =
          rl[g.index_of(g.point_elements()[i] * g.point_elements()[j])];
  return FiniteGroup(std::move(t));
}

std::vector<IntVec> box(std::size_t n, long w) {
  std::vector<IntVec> grid;
  IntVec cur(n, Int(-w));
  while (true) {
    grid.push_back(cur);
    std::size_t i = 0;
    while (i < n && cur[i] == w) {
      cur[i] = -w;
      ++i;
    }
    if (i == n) break;
    cur[i] += 1;
  }
  return grid;
}

// independent count of finite subgroup classes for groups whose finite
// subgroups all have order two: classify the order-two elements inside a
// translation window under conjugation from the same window
std::size_t window_class_count(const CrystalGroup& g, long w) {
  const std::size_t n = g.dim();
  auto grid = box(n, w);
  AffineElement id = AffineElement::identity(n);
  std::vector<AffineElement> torsion;
  for (std::size_t i = 0; i < g.point_order(); ++i) {
    if (g.point_elements()[i].is_identity()) continue;
    for (const auto& z : grid) {
      AffineElement x = g.element(i);
      for (std::size_t r = 0; r < n; ++r) x.shift[r] += Rat(z[r]);
      AffineElement acc = x;
      std::size_t o = 1;
      while (!(acc == id) && o <= 2 * g.point_order()) {
        acc = acc.compose(x);
        ++o;
      }
      if (acc == id) {
        REQUIRE(o == 2);
        torsion.push_back(x);
      }
    }
  }
  std::vector<std::size_t> parent(torsion.size());
  std::iota(parent.begin(), parent.end(), std::size_t(0));
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < torsion.size(); ++i)
    for (std::size_t q = 0; q < g.point_order(); ++q)
      for (const auto& u : grid) {
        AffineElement c = g.element(q);
        for (std::size_t r = 0; r < n; ++r) c.shift[r] += Rat(u[r]);
        AffineElement y = c.compose(torsion[i]).compose(c.inverse());
        for (std::size_t j = 0; j < torsion.size(); ++j)
          if (torsion[j] == y) {
            std::size_t a = find(i), b = find(j);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
          }
      }
  std::size_t classes = 0;
  for (std::size_t i = 0; i < torsion.size(); ++i)
    if (find(i) == i) ++classes;
  return classes + 1;
}

void check_poset_axioms(const CFPoset& cf) {
  const std::size_t c = cf.classes.size();
  REQUIRE(std::is_sorted(cf.relation.begin(), cf.relation.end()));
  for (const auto& [a, b] : cf.relation) {
    CHECK(a < c);
    CHECK(b < c);
  }
  for (std::size_t i = 0; i < c; ++i) CHECK(cf.below(i, i));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (i != j && cf.below(i, j)) CHECK(!cf.below(j, i));
      for (std::size_t k = 0; k < c; ++k)
        if (cf.below(i, j) && cf.below(j, k)) CHECK(cf.below(i, k));
    }
  REQUIRE(!cf.classes.empty());
  CHECK(cf.classes[0].order == 1);
  for (std::size_t j = 0; j < c; ++j) CHECK(cf.below(0, j));
  for (const auto& cl : cf.classes) {
    CHECK(cl.order == cl.structure.order());
    CHECK(cl.order == cl.point_indices.size());
    CHECK(!cl.generators.empty());
  }
}

FinPres permuted(const FinPres& p, const std::vector<std::size_t>& sigma) {
  FinPres out;
  out.generators.resize(p.generators.size());
  for (std::size_t i = 0; i < sigma.size(); ++i)
    out.generators[sigma[i]] = p.generators[i];
  for (const Word& w : p.relators) {
    Word nw;
    for (int l : w) {
      std::size_t i = (std::size_t)(l > 0 ? l : -l) - 1;
      int nl = (int)sigma[i] + 1;
      nw.push_back(l > 0 ? nl : -nl);
    }
    out.relators.push_back(std::move(nw));
  }
  return out;
}

}  // namespace

TEST_CASE("multiplication table groups") {
  FiniteGroup s3{symmetric(3)};
  CHECK(s3.order() == 6);
  CHECK(s3.element_order(0) == 1);
  CHECK(s3.order_profile() == std::vector<std::size_t>({1, 2, 2, 2, 3, 3}));
  CHECK(s3.class_size_profile() == std::vector<std::size_t>({1, 2, 3}));
  CHECK(!s3.is_abelian());
  CHECK(s3.abelianization() == AbelianInvariants::elementary(2, 1));
  CHECK(s3.subgroup_closure({1}).size() == 2);
  CHECK(s3.subgroup_closure({1, 2}).size() == 6);
  CHECK(s3.mul(s3.inv(4), 4) == 0);

  FiniteGroup s4{symmetric(4)};
  CHECK(s4.order() == 24);
  CHECK(s4.abelianization() == AbelianInvariants::elementary(2, 1));
  CHECK(s4.subgroup_closure(s4.generators()).size() == 24);
  CHECK(s4.generators().size() <= 3);

  FiniteGroup big{product(cyclic(12), cyclic(18))};
  CHECK(big.is_abelian());
  auto ab = big.abelianization();
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion == std::vector<Int>({Int(6), Int(36)}));

  FiniteGroup q8{quaternion()};
  CHECK(q8.order_profile() ==
        std::vector<std::size_t>({1, 2, 4, 4, 4, 4, 4, 4}));
  CHECK(q8.abelianization() == AbelianInvariants::elementary(2, 2));
  FiniteGroup d4{dihedral(4)};
  CHECK(d4.abelianization() == AbelianInvariants::elementary(2, 2));
  CHECK(q8.structure_key() != d4.structure_key());
}

TEST_CASE("table validation rejects non-groups") {
  CHECK_THROWS_AS(FiniteGroup(Table{{0, 1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup(Table{{0, 1}, {1, 7}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup(Table{{1, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup(Table{{0, 1}, {1, 1}}), std::invalid_argument);
  // a Latin square with identity that is not associative: swap the
  // intercalate {1,4}x{1,4} of the cyclic table of order six
  Table t = cyclic(6);
  std::swap(t[1][1], t[1][4]);
  std::swap(t[4][1], t[4][4]);
  CHECK_THROWS_AS(FiniteGroup{t}, std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup(cyclic(3), {"a", "b"}), std::invalid_argument);
}

TEST_CASE("abstract isomorphism testing") {
  FiniteGroup z4{cyclic(4)};
  FiniteGroup klein{product(cyclic(2), cyclic(2))};
  CHECK(!isomorphic_finite(z4, klein));
  CHECK(isomorphic_finite(FiniteGroup{cyclic(6)},
                          FiniteGroup{product(cyclic(2), cyclic(3))}));
  CHECK(!isomorphic_finite(FiniteGroup{symmetric(3)}, FiniteGroup{cyclic(6)}));
  CHECK(!isomorphic_finite(FiniteGroup{quaternion()},
                           FiniteGroup{dihedral(4)}));

  // the same group under a relabeling must come back isomorphic
  std::vector<unsigned> sigma(24);
  std::iota(sigma.begin(), sigma.end(), 0u);
  std::reverse(sigma.begin() + 1, sigma.end());
  CHECK(isomorphic_finite(FiniteGroup{symmetric(4)},
                          FiniteGroup{relabel(symmetric(4), sigma)}));
  CHECK(!isomorphic_finite(FiniteGroup{symmetric(4)},
                           FiniteGroup{dihedral(12)}));
}

TEST_CASE("quotients by sublattices") {
  auto zz = CrystalGroup::semidirect(2, {IntegerMatrix::identity(2)});
  auto q4 = quotient_by_sublattice(zz, Lattice::scaled_standard(2, Int(2)));
  CHECK(q4.order() == 4);
  CHECK(q4.is_abelian());
  CHECK(q4.abelianization() == AbelianInvariants::elementary(2, 2));

  auto model = build_affine_coxeter(SeriesKind::B, 3);
  auto w = quotient_by_sublattice(model.group, Lattice::standard(3));
  CHECK(w.order() == 48);
  CHECK(!w.is_abelian());
  CHECK(w.abelianization() == AbelianInvariants::elementary(2, 2));
  CHECK(isomorphic_finite(w, point_table(model.group)));

  auto chain = bc_chain(3);
  auto rd = build_root_datum(SeriesKind::B, 3);
  auto big = lattice_semidirect(rd, chain.lattices[2]);
  auto inner = chain.lattices[2].coordinates(chain.lattices[0]);
  REQUIRE(inner.has_value());
  Lattice sub(3, *inner);
  auto q192 = quotient_by_sublattice(big, sub);
  CHECK(q192.order() == 192);
  CHECK(q192.abelianization().torsion_order() >= 4);

  auto c4 = CrystalGroup::semidirect(2, {mat({{0, -1}, {1, 0}})});
  CHECK(quotient_by_sublattice(c4, Lattice::scaled_standard(2, Int(2)))
            .order() == 16);
  CHECK_THROWS_AS(
      quotient_by_sublattice(c4, Lattice(2, mat({{1, 0}, {0, 2}}))),
      std::invalid_argument);
  CHECK_THROWS_AS(
      quotient_by_sublattice(zz, Lattice::span(2, mat({{1}, {0}}))),
      std::invalid_argument);
  CHECK_THROWS_AS(
      quotient_by_sublattice(zz, Lattice::scaled_standard(2, Int(100)), 1000),
      BudgetExceeded);
}

TEST_CASE("quotient map is a homomorphism") {
  auto p2 = CrystalGroup::semidirect(2, {mat({{-1, 0}, {0, -1}})});
  auto lq = lattice_quotient(p2, Lattice::scaled_standard(2, Int(2)));
  CHECK(lq.group.order() == 8);
  CHECK(lq.group.labels().size() == 8);
  CHECK(lq.index_of(AffineElement::identity(2)) == 0);

  std::vector<AffineElement> sample;
  for (std::size_t i = 0; i < p2.point_order(); ++i)
    for (const auto& z : box(2, 1)) {
      AffineElement x = p2.element(i);
      for (std::size_t r = 0; r < 2; ++r) x.shift[r] += Rat(z[r]);
      sample.push_back(x);
    }
  for (const auto& x : sample)
    for (const auto& y : sample)
      CHECK(lq.index_of(x.compose(y)) ==
            lq.group.mul(lq.index_of(x), lq.index_of(y)));

  CHECK_THROWS_AS(lq.index_of(AffineElement{mat({{1, 1}, {0, 1}}),
                                            RatVec(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(lq.index_of(AffineElement{IntegerMatrix::identity(2),
                                            RatVec{Rat(1, 2), Rat(0)}}),
                  std::invalid_argument);
}

TEST_CASE("hom enumeration") {
  FinPres inv1{{"s"}, {{1, 1}}};
  CHECK(all_homs(inv1, FiniteGroup{cyclic(2)}).size() == 2);
  CHECK(all_homs(inv1, FiniteGroup{cyclic(3)}).size() == 1);

  FinPres pres2{{"s", "t"}, {{1, 1}, {2, 2}}};
  FiniteGroup s3{symmetric(3)};
  auto hs = all_homs(pres2, s3);
  CHECK(hs.size() == 16);
  CHECK(std::is_sorted(hs.begin(), hs.end(),
                       [](const Hom& a, const Hom& b) {
                         return a.images < b.images;
                       }));
  for (const auto& h : hs) CHECK(satisfies_relators(pres2, s3, h));

  auto epi = epimorphism_exists(pres2, s3);
  REQUIRE(epi.has_value());
  CHECK(is_epimorphism(pres2, s3, *epi));
  // the lexicographically least surjection, against the filtered list
  std::optional<Hom> first;
  for (const auto& h : hs)
    if (is_epimorphism(pres2, s3, h)) {
      first = h;
      break;
    }
  REQUIRE(first.has_value());
  CHECK(epi->images == first->images);
  CHECK(epi->images == std::vector<unsigned>({1, 2}));

  CHECK_THROWS_AS(all_homs(pres2, s3, 5), BudgetExceeded);
}

TEST_CASE("coxeter presentations onto finite targets") {
  auto i1 = coxeter_presentation(affine_graph(SeriesKind::I1, 1));
  FiniteGroup klein{product(cyclic(2), cyclic(2))};
  auto e = epimorphism_exists(i1, klein);
  REQUIRE(e.has_value());
  CHECK(is_epimorphism(i1, klein, *e));
  CHECK(e->images == std::vector<unsigned>({1, 2}));

  auto a2 = coxeter_presentation(affine_graph(SeriesKind::A, 2));
  CHECK(!epimorphism_exists(a2, FiniteGroup{cyclic(3)}).has_value());
  CHECK_THROWS_AS(epimorphism_exists(a2, FiniteGroup{symmetric(4)}, 10),
                  BudgetExceeded);

  // hom counts ignore generator ordering
  FiniteGroup s3{symmetric(3)};
  auto base = all_homs(a2, s3);
  auto swapped = all_homs(permuted(a2, {2, 0, 1}), s3);
  CHECK(base.size() == swapped.size());
}

TEST_CASE("first cohomology of point actions") {
  CHECK(h1({mat({{-1}})}) == AbelianInvariants::elementary(2, 1));
  CHECK(h1({mat({{1}})}).is_trivial());
  CHECK(h1({mat({{-1, 0}, {0, -1}})}) == AbelianInvariants::elementary(2, 2));
  CHECK(h1({mat({{0, -1}, {1, 0}})}) == AbelianInvariants::elementary(2, 1));

  std::vector<std::vector<IntegerMatrix>> actions = {
      {mat({{0, -1}, {1, 0}})},
      {mat({{-1, 0}, {0, 1}}), mat({{1, 0}, {0, -1}})},
      build_root_datum(SeriesKind::B, 2).weyl_gens,
      build_root_datum(SeriesKind::A, 3).weyl_gens,
  };
  for (const auto& gens : actions) {
    auto grp = enumerate_point_group(gens);
    auto inv = h1(gens);
    CHECK(inv.free_rank == 0);
    Int order((unsigned long)grp.size());
    for (const Int& t : inv.torsion) CHECK(order % t == 0);
  }
}

TEST_CASE("cocycle data round trips") {
  auto cd = cocycle_data({mat({{-1, 0}, {0, -1}})});
  REQUIRE(cd.elements.size() == 2);
  CHECK(cd.invariants == AbelianInvariants::elementary(2, 2));
  REQUIRE(cd.class_reps.size() == 4);
  for (unsigned long k = 0; k < 4; ++k)
    CHECK(cd.class_id(cd.class_reps[k]) == k);
  for (const Int& x : cd.class_reps[0]) CHECK(x == 0);

  // every representative satisfies the cocycle law f(gh) = f(g) + g f(h)
  for (const auto& rep : cd.class_reps)
    for (std::size_t gi = 0; gi < 2; ++gi)
      for (std::size_t hi = 0; hi < 2; ++hi) {
        std::size_t pi = 0;
        while (cd.elements[pi] != cd.elements[gi] * cd.elements[hi]) ++pi;
        IntVec lhs = cd.value(rep, pi);
        IntVec gv = cd.elements[gi] * cd.value(rep, hi);
        IntVec rhs = cd.value(rep, gi);
        for (std::size_t r = 0; r < 2; ++r) CHECK(lhs[r] == rhs[r] + gv[r]);
      }

  auto cd2 = cocycle_data(build_root_datum(SeriesKind::B, 2).weyl_gens);
  for (unsigned long k = 0; k < cd2.class_reps.size(); ++k)
    CHECK(cd2.class_id(cd2.class_reps[k]) == k);
}

TEST_CASE("finite subgroup classes of the infinite dihedral group") {
  auto g = CrystalGroup::semidirect(1, {mat({{-1}})});
  auto cf = finite_subgroup_classes(g);
  REQUIRE(cf.complete);
  REQUIRE(cf.classes.size() == 3);
  CHECK(cf.classes[0].order == 1);
  CHECK(cf.classes[1].order == 2);
  CHECK(cf.classes[2].order == 2);
  CHECK(cf.classes[1].label == cf.classes[2].label);
  CHECK(cf.below(0, 1));
  CHECK(cf.below(0, 2));
  CHECK(!cf.below(1, 2));
  CHECK(!cf.below(2, 1));
  CHECK(!cf.below(1, 0));
  check_poset_axioms(cf);
  CHECK(window_class_count(g, 2) == 3);
}

TEST_CASE("finite subgroup classes of the planar inversion group") {
  auto g = CrystalGroup::semidirect(2, {mat({{-1, 0}, {0, -1}})});
  auto cf = finite_subgroup_classes(g);
  REQUIRE(cf.complete);
  REQUIRE(cf.classes.size() == 5);
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(cf.classes[i].order == 2);
    for (std::size_t j = 1; j < 5; ++j)
      CHECK(cf.below(i, j) == (i == j));
  }
  check_poset_axioms(cf);
  CHECK(window_class_count(g, 2) == 5);
}

TEST_CASE("finite subgroup classes detect torsion freeness and splitness") {
  AffineElement gl{mat({{1, 0}, {0, -1}}), RatVec{Rat(1, 2), Rat(0)}};
  auto glide = CrystalGroup::from_generators(
      {gl, AffineElement::translation(int_vec({0, 1}))});
  auto cf_glide = finite_subgroup_classes(glide);
  REQUIRE(cf_glide.complete);
  CHECK(cf_glide.classes.size() == 1);
  CHECK(glide.is_torsion_free());

  auto mirror = CrystalGroup::semidirect(2, {mat({{1, 0}, {0, -1}})});
  auto cf_mirror = finite_subgroup_classes(mirror);
  REQUIRE(cf_mirror.complete);
  CHECK(cf_mirror.classes.size() == 3);
  bool full = false;
  for (const auto& cl : cf_mirror.classes)
    if (cl.order == mirror.point_order())
      full = full || isomorphic_finite(cl.structure, point_table(mirror));
  CHECK(full);
  check_poset_axioms(cf_mirror);
}

TEST_CASE("finite subgroup classes of an affine rank two model") {
  auto c2 = build_affine_coxeter(SeriesKind::C, 2);
  auto cf = finite_subgroup_classes(c2.group, 1u << 22);
  REQUIRE(cf.complete);
  check_poset_axioms(cf);
  REQUIRE(c2.group.is_symmorphic());
  bool full = false;
  for (const auto& cl : cf.classes)
    if (cl.order == c2.group.point_order())
      full = full || isomorphic_finite(cl.structure, point_table(c2.group));
  CHECK(full);

  CHECK(cf_equal(cf, cf));
  auto moved = conjugate_group(c2.group, mat({{1, 1}, {0, 1}}));
  auto cf2 = finite_subgroup_classes(moved, 1u << 22);
  REQUIRE(cf2.complete);
  CHECK(cf_equal(cf, cf2));
}

TEST_CASE("poset comparison") {
  auto dinf = CrystalGroup::semidirect(1, {mat({{-1}})});
  auto zz = CrystalGroup::semidirect(2, {IntegerMatrix::identity(2)});
  auto a = finite_subgroup_classes(dinf);
  auto b = finite_subgroup_classes(zz);
  CHECK(cf_equal(a, finite_subgroup_classes(dinf)));
  CHECK(!cf_equal(a, b));

  auto p2 = CrystalGroup::semidirect(2, {mat({{-1, 0}, {0, -1}})});
  auto cfa = finite_subgroup_classes(p2);
  auto cfb =
      finite_subgroup_classes(conjugate_group(p2, mat({{2, 1}, {1, 1}})));
  CHECK(cf_equal(cfa, cfb));

  auto partial = finite_subgroup_classes(p2, 2);
  CHECK(!partial.complete);
  CHECK_THROWS_AS(cf_equal(partial, cfa), BudgetExceeded);
}

TEST_CASE("quotient isomorphism across coordinate changes") {
  auto chain = bc_chain(3);
  auto rd = build_root_datum(SeriesKind::B, 3);
  auto big = lattice_semidirect(rd, chain.lattices[2]);
  auto inner = chain.lattices[2].coordinates(chain.lattices[0]);
  REQUIRE(inner.has_value());
  Lattice sub(3, *inner);
  auto q = quotient_by_sublattice(big, sub);

  IntegerMatrix u = mat({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  auto big2 = conjugate_group(big, u);
  Lattice sub2 = Lattice::span(3, u * sub.basis());
  auto q2 = quotient_by_sublattice(big2, sub2);
  CHECK(q2.order() == 192);
  CHECK(isomorphic_finite(q, q2));
}

TEST_CASE("finite subgroup classes at rank three") {
  auto b3 = build_affine_coxeter(SeriesKind::B, 3);
  auto cf = finite_subgroup_classes(b3.group, 1u << 24);
  REQUIRE(cf.complete);
  check_poset_axioms(cf);
  bool full = false;
  for (const auto& cl : cf.classes)
    if (cl.order == 48) full = true;
  CHECK(full);
  CHECK(cf.classes.size() >= 10);
}
