#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>

#include "alcove/crystal_group.hpp"
#include "alcove/presentation.hpp"

using namespace alcove;

namespace {

IntegerMatrix mat2(long a, long b, long c, long d) {
  return IntegerMatrix::from_rows({{a, b}, {c, d}});
}

RatVec rat_vec(std::initializer_list<Rat> xs) { return RatVec(xs); }

Rat half() { return Rat(1, 2); }

// the plane group with a single glide reflection axis
CrystalGroup glide_group() {
  AffineElement g{mat2(1, 0, 0, -1), rat_vec({half(), Rat(0)})};
  AffineElement t2 = AffineElement::translation(int_vec({0, 1}));
  return CrystalGroup::from_generators({g, t2});
}

// its split counterpart: a plain mirror
CrystalGroup mirror_group() {
  return CrystalGroup::semidirect(2, {mat2(1, 0, 0, -1)});
}

// Z^2 with the point inversion
CrystalGroup inversion_group() {
  return CrystalGroup::semidirect(2, {mat2(-1, 0, 0, -1)});
}

struct TypeCase {
  SeriesKind kind;
  std::size_t rank;
};

std::vector<TypeCase> affine_cases_small() {
  return {{SeriesKind::I1, 1}, {SeriesKind::A, 2},  {SeriesKind::A, 3},
          {SeriesKind::A, 4},  {SeriesKind::B, 3},  {SeriesKind::B, 4},
          {SeriesKind::C, 2},  {SeriesKind::C, 3},  {SeriesKind::C, 4},
          {SeriesKind::D, 4},  {SeriesKind::F4, 4}, {SeriesKind::G2, 2}};
}

std::size_t weyl_order(SeriesKind kind, std::size_t n) {
  std::size_t fact = 1;
  for (std::size_t k = 2; k <= n; ++k) fact *= k;
  switch (kind) {
    case SeriesKind::I1:
      return 2;
    case SeriesKind::A: {
      return fact * (n + 1);
    }
    case SeriesKind::B:
    case SeriesKind::C:
      return fact << n;
    case SeriesKind::D:
      return fact << (n - 1);
    case SeriesKind::F4:
      return 1152;
    case SeriesKind::G2:
      return 12;
    default:
      throw std::logic_error("no order on file");
  }
}

}  // namespace

TEST_CASE("affine elements compose and invert") {
  AffineElement g{mat2(0, -1, 1, 0), rat_vec({half(), Rat(0)})};
  AffineElement id = AffineElement::identity(2);
  CHECK(g.compose(g.inverse()) == id);
  CHECK(g.inverse().compose(g) == id);
  CHECK(g.compose(id) == g);

  // (A, s)(B, t) moves t through A
  AffineElement t = AffineElement::translation(int_vec({1, 0}));
  AffineElement gt = g.compose(t);
  CHECK(gt.point == g.point);
  CHECK(gt.shift == rat_vec({half(), Rat(1)}));

  RatVec x = g.apply(rat_vec({Rat(1), Rat(0)}));
  CHECK(x == rat_vec({half(), Rat(1)}));

  CHECK(reduce_mod_lattice(rat_vec({Rat(-1, 4), Rat(7, 2)})) ==
        rat_vec({Rat(3, 4), half()}));
}

TEST_CASE("point group enumeration and orders") {
  IntegerMatrix rot = mat2(0, -1, 1, 0);
  IntegerMatrix mir = mat2(1, 0, 0, -1);
  auto d4 = enumerate_point_group({rot, mir});
  CHECK(d4.size() == 8);
  CHECK(std::is_sorted(d4.begin(), d4.end()));

  CHECK(matrix_order(rot) == 4);
  CHECK(matrix_order(mir) == 2);
  CHECK(matrix_order(IntegerMatrix::identity(3)) == 1);
  CHECK_THROWS_AS(matrix_order(mat2(1, 1, 0, 1)), BudgetExceeded);

  CHECK_THROWS_AS(enumerate_point_group({rot, mir}, 4), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_point_group({mat2(2, 0, 0, 1)}),
                  std::invalid_argument);

  // (order, trace) tallies of the dihedral group of the square
  auto data = character_data(d4);
  std::vector<CharTriple> want = {
      {1, Int(2), 1}, {2, Int(-2), 1}, {2, Int(0), 4}, {4, Int(0), 2}};
  std::sort(want.begin(), want.end());
  CHECK(data == want);
}

TEST_CASE("constructor rejects malformed vector systems") {
  IntegerMatrix id = IntegerMatrix::identity(2);
  IntegerMatrix rot = mat2(0, -1, 1, 0);
  IntegerMatrix r2 = mat2(-1, 0, 0, -1);
  IntegerMatrix r3 = mat2(0, 1, -1, 0);
  RatVec zero(2, Rat(0));

  CHECK_THROWS_AS(CrystalGroup({id, id}, {zero, zero}), std::invalid_argument);
  CHECK_THROWS_AS(CrystalGroup({rot, r2, r3}, {zero, zero, zero}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CrystalGroup({id}, {rat_vec({half(), Rat(0)})}),
                  std::invalid_argument);

  // shifts must satisfy the cocycle law: here rot carries 1/2 along x
  // but rot^2 is declared shiftless, contradicting rot * rot
  CHECK_THROWS_AS(CrystalGroup({id, rot, r2, r3},
                               {zero, rat_vec({half(), Rat(0)}), zero, zero}),
                  std::invalid_argument);

  // the same shifts made consistent are accepted
  CrystalGroup ok({id, rot, r2, r3},
                  {zero, rat_vec({half(), Rat(0)}), rat_vec({half(), half()}),
                   rat_vec({Rat(0), half()})});
  CHECK(ok.point_order() == 4);
}

TEST_CASE("glide group: non-split, torsion free") {
  CrystalGroup pg = glide_group();
  CHECK(pg.dim() == 2);
  CHECK(pg.point_order() == 2);
  CHECK(!pg.is_symmorphic());
  CHECK(pg.is_torsion_free());
  CHECK(!pg.is_just_infinite());
  CHECK(pg.centre_rank() == 1);

  AbelianInvariants ab = pg.abelianize();
  CHECK(ab.free_rank == 1);
  CHECK(ab.torsion == std::vector<Int>{Int(2)});
  CHECK(pg.centre_rank() == ab.free_rank);

  // membership is taken modulo the translation lattice
  AffineElement g{mat2(1, 0, 0, -1), rat_vec({half(), Rat(0)})};
  CHECK(pg.contains(g));
  CHECK(pg.contains(g.compose(AffineElement::translation(int_vec({3, -2})))));
  CHECK(pg.contains(AffineElement::translation(int_vec({1, 0}))));
  CHECK(!pg.contains(AffineElement{mat2(1, 0, 0, -1), rat_vec({Rat(0), half()})}));
  CHECK(!pg.contains(AffineElement{IntegerMatrix::identity(2),
                                   rat_vec({half(), Rat(0)})}));

  // transfer doubles the central axis and kills the reflected one
  CHECK(pg.transfer_of_translation(int_vec({1, 0})) == int_vec({2, 0}));
  CHECK(pg.transfer_of_translation(int_vec({0, 1})) == int_vec({0, 0}));
  CHECK(pg.fixed_sublattice().rank() == 1);
}

TEST_CASE("mirror group: split counterpart of the glide") {
  CrystalGroup pm = mirror_group();
  CHECK(pm.is_symmorphic());
  CHECK(!pm.is_torsion_free());
  CHECK(!pm.is_just_infinite());
  CHECK(pm.centre_rank() == 1);

  AbelianInvariants ab = pm.abelianize();
  CHECK(ab.free_rank == 1);
  CHECK(ab.torsion == std::vector<Int>{Int(2), Int(2)});

  // same point data as the glide group, different vector system
  CrystalGroup pg = glide_group();
  CHECK(pm.point_elements() == pg.point_elements());
  CHECK(pm.point_character() == pg.point_character());
  CHECK(!(pm == pg));
  CHECK(pg.abelianize() != pm.abelianize());
}

TEST_CASE("inversion group") {
  CrystalGroup p2 = inversion_group();
  CHECK(p2.point_order() == 2);
  CHECK(p2.is_symmorphic());
  CHECK(!p2.is_torsion_free());
  CHECK(!p2.is_just_infinite());
  CHECK(p2.centre_rank() == 0);
  AbelianInvariants ab = p2.abelianize();
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion == std::vector<Int>{Int(2), Int(2), Int(2)});
  CHECK(p2.translation_coinvariants() == AbelianInvariants::elementary(2, 2));
}

TEST_CASE("generated groups must have full translation lattices") {
  // no translations at all
  CHECK_THROWS_AS(CrystalGroup::from_generators(
                      {AffineElement{mat2(0, -1, 1, 0), RatVec(2, Rat(0))}}),
                  std::invalid_argument);
  // translations of deficient rank
  CHECK_THROWS_AS(CrystalGroup::from_generators(
                      {AffineElement::translation(int_vec({1, 0}))}),
                  std::invalid_argument);
  // translation lattice finer than Z^n
  CHECK_THROWS_AS(
      CrystalGroup::from_generators(
          {AffineElement{IntegerMatrix::identity(2), rat_vec({half(), Rat(0)})},
           AffineElement::translation(int_vec({0, 1}))}),
      std::invalid_argument);
}

TEST_CASE("affine Coxeter models match their diagrams") {
  for (const auto& c : affine_cases_small()) {
    std::string tname = kind_name(c.kind);
    CAPTURE(tname);
    CAPTURE(c.rank);
    AffineCoxeterModel model = build_affine_coxeter(c.kind, c.rank);

    CHECK(model.generators.size() == c.rank + 1);
    CHECK(model.group.dim() == c.rank);
    CHECK(model.group.point_order() == weyl_order(c.kind, c.rank));
    CHECK(graph_isomorphism(model.graph, affine_graph(c.kind, c.rank))
              .has_value());

    AffineElement id = AffineElement::identity(c.rank);
    for (const auto& g : model.generators) {
      CHECK(model.group.contains(g));
      CHECK(g.compose(g) == id);
      CHECK(g != id);
    }

    CHECK(model.group.is_symmorphic());
    CHECK(!model.group.is_torsion_free());
    CHECK(model.group.is_just_infinite());
    CHECK(model.group.centre_rank() == 0);

    // the crystallographic abelianization agrees with the one read off
    // the presentation by diagram
    AbelianInvariants ab = model.group.abelianize();
    CHECK(ab == abelianization(coxeter_presentation(model.graph)));
    CHECK(ab.free_rank == 0);

    // one generator per class of the diagram under odd bonds
    std::size_t classes = ab.torsion.size();
    if (c.kind == SeriesKind::A && c.rank >= 2) CHECK(classes == 1);
    if (c.kind == SeriesKind::D) CHECK(classes == 1);
    if (c.kind == SeriesKind::B) CHECK(classes == 2);
    if (c.kind == SeriesKind::F4 || c.kind == SeriesKind::G2 ||
        c.kind == SeriesKind::I1)
      CHECK(classes == 2);
    if (c.kind == SeriesKind::C) CHECK(classes == 3);
  }

  CHECK_THROWS_AS(build_affine_coxeter(SeriesKind::B, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_affine_coxeter(SeriesKind::D, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_affine_coxeter(SeriesKind::I1, 2),
                  std::invalid_argument);
}

TEST_CASE("affine Coxeter groups are translation lattice semidirects") {
  for (SeriesKind kind : {SeriesKind::A, SeriesKind::G2}) {
    AffineCoxeterModel model = build_affine_coxeter(kind, 2);
    CHECK(model.group == lattice_semidirect(model.datum, model.datum.qv));
  }
  AffineCoxeterModel b3 = build_affine_coxeter(SeriesKind::B, 3);
  CHECK(b3.group == lattice_semidirect(b3.datum, b3.datum.qv));
}

TEST_CASE("semidirect products over the invariant lattice chain") {
  RootDatum rd = build_root_datum(SeriesKind::B, 3);
  LatticeChain chain = bc_chain(3);
  for (const auto& l : chain.lattices) {
    CrystalGroup g = lattice_semidirect(rd, l);
    CHECK(g.point_order() == 48);
    CHECK(g.is_symmorphic());
    CHECK(g.is_just_infinite());
    CHECK(g.centre_rank() == 0);
    CHECK(g.abelianize().free_rank == 0);
  }

  // unstable or mismatched lattices are rejected
  IntegerMatrix cols = IntegerMatrix::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 6}});
  CHECK_THROWS_AS(lattice_semidirect(rd, Lattice::span(3, cols)),
                  std::invalid_argument);
  CHECK_THROWS_AS(lattice_semidirect(rd, Lattice::standard(2)),
                  std::invalid_argument);
}

TEST_CASE("rational class comparison of point groups") {
  auto points = [](SeriesKind kind, std::size_t rank) {
    RootDatum rd = build_root_datum(kind, rank);
    return lattice_semidirect(rd, rd.qv).point_elements();
  };

  auto b3 = points(SeriesKind::B, 3);
  CHECK(qclass_equivalent(b3, b3));

  // the B and C realizations of one Weyl group act equivalently over Q
  auto c3 = points(SeriesKind::C, 3);
  CHECK(qclass_equivalent(b3, c3));
  CHECK(qclass_equivalent(points(SeriesKind::B, 4), points(SeriesKind::C, 4)));

  // as does one Weyl group on root and weight lattices
  RootDatum a2 = build_root_datum(SeriesKind::A, 2);
  CHECK(qclass_equivalent(lattice_semidirect(a2, a2.q).point_elements(),
                          lattice_semidirect(a2, a2.p).point_elements()));

  CHECK(!qclass_equivalent(b3, points(SeriesKind::A, 3)));
  CHECK(!qclass_equivalent(b3, points(SeriesKind::D, 4)));

  // equal orders, different characters
  CHECK(!qclass_equivalent(inversion_group().point_elements(),
                           mirror_group().point_elements()));

  CHECK(qclass_equivalent({IntegerMatrix::identity(2)},
                          {IntegerMatrix::identity(2)}));
}

TEST_CASE("direct products combine invariants") {
  CrystalGroup pg = glide_group();
  CrystalGroup pm = mirror_group();
  CrystalGroup prod = direct_product(pg, pm);

  CHECK(prod.dim() == 4);
  CHECK(prod.point_order() == 4);
  CHECK(prod.centre_rank() == 2);
  CHECK(!prod.is_symmorphic());
  CHECK(!prod.is_torsion_free());
  CHECK(!prod.is_just_infinite());

  AbelianInvariants ab = prod.abelianize();
  CHECK(ab.free_rank == 2);
  CHECK(ab.torsion == std::vector<Int>{Int(2), Int(2), Int(2)});

  CrystalGroup split = direct_product(pm, inversion_group());
  CHECK(split.is_symmorphic());
  CHECK(!split.is_torsion_free());
}

TEST_CASE("transfer lands in the fixed sublattice") {
  AffineCoxeterModel model = build_affine_coxeter(SeriesKind::B, 3);
  // the Weyl orbit of any vector sums to zero: no fixed directions
  CHECK(model.group.transfer_of_translation(int_vec({1, 0, 0})) ==
        IntVec(3, Int(0)));
  CHECK(model.group.transfer_of_translation(int_vec({1, 2, 3})) ==
        IntVec(3, Int(0)));

  CrystalGroup pm = mirror_group();
  Lattice fixed = pm.fixed_sublattice();
  for (long x = -2; x <= 2; ++x)
    for (long y = -2; y <= 2; ++y)
      CHECK(fixed.contains(pm.transfer_of_translation(int_vec({x, y}))));
}

TEST_CASE("element access round trips") {
  CrystalGroup pm = mirror_group();
  for (std::size_t i = 0; i < pm.point_order(); ++i) {
    AffineElement g = pm.element(i);
    CHECK(pm.contains(g));
    CHECK(pm.index_of(g.point) == i);
  }
  CHECK_THROWS_AS(pm.index_of(mat2(0, -1, 1, 0)), std::invalid_argument);
  CHECK(pm.point_character() == character_data(pm.point_elements()));
}

namespace {

// every pairwise product of lift elements must land back in the lift
bool closed_under_composition(const std::vector<AffineElement>& lift) {
  for (const auto& a : lift)
    for (const auto& b : lift) {
      AffineElement ab = a.compose(b);
      if (std::count(lift.begin(), lift.end(), ab) != 1) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("complement search agrees with the coboundary route") {
  for (const CrystalGroup& g :
       {mirror_group(), inversion_group(),
        build_affine_coxeter(SeriesKind::B, 3).group}) {
    REQUIRE(g.is_symmorphic());
    auto lift = g.symmorphic_complement();
    REQUIRE(lift.has_value());
    CHECK(lift->size() == g.point_order());
    CHECK(closed_under_composition(*lift));
  }

  CrystalGroup pg = glide_group();
  CHECK(!pg.is_symmorphic());
  CHECK(!pg.symmorphic_complement().has_value());

  // a mirror shifted along its own axis splits: tau is a coboundary
  CrystalGroup shifted({IntegerMatrix::identity(2), mat2(1, 0, 0, -1)},
                       {RatVec(2, Rat(0)), rat_vec({Rat(0), half()})});
  CHECK(shifted.is_symmorphic());
  auto lift = shifted.symmorphic_complement();
  REQUIRE(lift.has_value());
  CHECK(closed_under_composition(*lift));
  CHECK(!(shifted == mirror_group()));
}

TEST_CASE("transfer of general elements") {
  CrystalGroup pg = glide_group();
  AffineElement g{mat2(1, 0, 0, -1), rat_vec({half(), Rat(0)})};
  CHECK(pg.transfer(g) == int_vec({1, 0}));
  CHECK(pg.transfer(g.compose(g)) == int_vec({2, 0}));
  CHECK(pg.transfer(AffineElement::identity(2)) == int_vec({0, 0}));
  for (long x = -2; x <= 2; ++x)
    for (long y = -2; y <= 2; ++y)
      CHECK(pg.transfer(AffineElement::translation(int_vec({x, y}))) ==
            pg.transfer_of_translation(int_vec({x, y})));
  CHECK_THROWS_AS(
      pg.transfer(AffineElement{mat2(0, -1, 1, 0), RatVec(2, Rat(0))}),
      std::invalid_argument);
}

TEST_CASE("raw data validation") {
  IntegerMatrix id = IntegerMatrix::identity(2);
  IntegerMatrix mir = mat2(1, 0, 0, -1);
  IntegerMatrix rot = mat2(0, -1, 1, 0);
  IntegerMatrix r2 = mat2(-1, 0, 0, -1);
  IntegerMatrix r3 = mat2(0, 1, -1, 0);
  RatVec zero(2, Rat(0));

  CHECK(check_crystallographic({id, mir}, {zero, rat_vec({Rat(0), half()})}));
  CHECK(check_crystallographic({id, rot, r2, r3}, {zero, zero, zero, zero}));
  // duplicated point part: the action is not faithful
  CHECK(!check_crystallographic({id, id}, {zero, zero}));
  // cocycle violation
  CHECK(!check_crystallographic({id, rot, r2, r3},
                                {zero, rat_vec({half(), Rat(0)}), zero, zero}));
  // no identity
  CHECK(!check_crystallographic({mir}, {zero}));
}

TEST_CASE("invariants survive a change of basis") {
  IntegerMatrix u = mat2(1, 1, 0, 1);
  CrystalGroup pg = glide_group();
  CrystalGroup moved = conjugate_group(pg, u);
  CHECK(moved.point_order() == pg.point_order());
  CHECK(moved.abelianize() == pg.abelianize());
  CHECK(moved.centre_rank() == pg.centre_rank());
  CHECK(moved.is_symmorphic() == pg.is_symmorphic());
  CHECK(moved.is_torsion_free() == pg.is_torsion_free());
  CHECK(moved.is_just_infinite() == pg.is_just_infinite());
  CHECK(qclass_equivalent(moved.point_elements(), pg.point_elements()));

  AffineCoxeterModel a2 = build_affine_coxeter(SeriesKind::A, 2);
  CrystalGroup moved2 = conjugate_group(a2.group, mat2(2, 1, 1, 1));
  CHECK(moved2.abelianize() == a2.group.abelianize());
  CHECK(moved2.is_just_infinite());
  CHECK(moved2.is_symmorphic());

  CHECK_THROWS_AS(conjugate_group(pg, mat2(2, 0, 0, 1)),
                  std::invalid_argument);
}
