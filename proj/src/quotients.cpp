#include "alcove/quotients.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace alcove {

namespace {

Int mod_pos(const Int& a, const Int& d) {
  Int r = a % d;
  if (r < 0) r += d;
  return r;
}

}  // namespace

LatticeQuotient::LatticeQuotient(CrystalGroup g, Lattice l, FiniteGroup q,
                                 IntegerMatrix coset_u,
                                 std::vector<Int> coset_diag,
                                 std::vector<unsigned> relabel)
    : source(std::move(g)),
      sublattice(std::move(l)),
      group(std::move(q)),
      coset_u_(std::move(coset_u)),
      coset_diag_(std::move(coset_diag)),
      relabel_(std::move(relabel)) {}

unsigned LatticeQuotient::index_of(const AffineElement& x) const {
  const std::size_t i = source.index_of(x.point);
  const std::size_t n = source.dim();
  IntVec z(n);
  for (std::size_t r = 0; r < n; ++r) {
    Rat d = x.shift[r] - source.shift_of(i)[r];
    if (!is_integral(d))
      throw std::invalid_argument("element is not in the group");
    z[r] = d.get_num();
  }
  IntVec y = coset_u_ * z;
  unsigned long c = 0, stride = 1;
  for (std::size_t r = 0; r < n; ++r) {
    c += mod_pos(y[r], coset_diag_[r]).get_ui() * stride;
    stride *= coset_diag_[r].get_ui();
  }
  return relabel_[i * stride + c];
}

LatticeQuotient lattice_quotient(const CrystalGroup& g, const Lattice& l,
                                 std::size_t max_order) {
  const std::size_t n = g.dim(), m = g.point_order();
  if (l.ambient_rank() != n)
    throw std::invalid_argument("sublattice lives in the wrong dimension");
  if (l.rank() != n)
    throw std::invalid_argument(
        "sublattice must have finite index in the translations");
  for (const auto& a : g.point_elements())
    for (std::size_t j = 0; j < n; ++j)
      if (!l.contains(a * l.basis().column_vec(j)))
        throw std::invalid_argument(
            "sublattice is not stable under the point group");

  auto s = snf(l.basis());
  std::vector<Int> diag(n);
  Int coset_count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = s.d.at(i, i);
    coset_count *= diag[i];
  }
  if (coset_count * Int((unsigned long)m) > Int((unsigned long)max_order))
    throw BudgetExceeded("quotient order larger than the cap");
  const unsigned long D = coset_count.get_ui();
  const std::size_t N = m * D;

  // Coset representatives and their mixed-radix digits.
  IntegerMatrix uinv = s.u.inverse_unimodular();
  std::vector<IntVec> rep(D);
  std::vector<std::vector<unsigned long>> digits(
      D, std::vector<unsigned long>(n));
  for (unsigned long c = 0; c < D; ++c) {
    unsigned long t = c;
    IntVec y(n);
    for (std::size_t r = 0; r < n; ++r) {
      digits[c][r] = t % diag[r].get_ui();
      y[r] = Int((unsigned long)digits[c][r]);
      t /= diag[r].get_ui();
    }
    rep[c] = uinv * y;
  }
  auto key_of = [&](const IntVec& z) {
    IntVec y = s.u * z;
    unsigned long id = 0, stride = 1;
    for (std::size_t r = 0; r < n; ++r) {
      id += mod_pos(y[r], diag[r]).get_ui() * stride;
      stride *= diag[r].get_ui();
    }
    return id;
  };
  auto add_cosets = [&](unsigned long a, unsigned long b) {
    unsigned long id = 0, stride = 1;
    for (std::size_t r = 0; r < n; ++r) {
      id += ((digits[a][r] + digits[b][r]) % diag[r].get_ui()) * stride;
      stride *= diag[r].get_ui();
    }
    return id;
  };

  // Point multiplication plus the integral cocycle defect of the stored
  // vector system: tau_i + A_i tau_j = tau_k + kappa with kappa in Z^n.
  std::vector<std::vector<unsigned>> pm(m, std::vector<unsigned>(m));
  std::vector<std::vector<unsigned long>> kap(m,
                                              std::vector<unsigned long>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& ai = g.point_elements()[i];
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t k = g.index_of(ai * g.point_elements()[j]);
      pm[i][j] = (unsigned)k;
      RatVec at = ai * g.shift_of(j);
      IntVec kz(n);
      for (std::size_t r = 0; r < n; ++r) {
        Rat d = g.shift_of(i)[r] + at[r] - g.shift_of(k)[r];
        if (!is_integral(d))
          throw std::logic_error("vector system violates the cocycle law");
        kz[r] = d.get_num();
      }
      kap[i][j] = key_of(kz);
    }
  }
  std::vector<std::vector<unsigned long>> act(m,
                                              std::vector<unsigned long>(D));
  for (std::size_t i = 0; i < m; ++i)
    for (unsigned long c = 0; c < D; ++c)
      act[i][c] = key_of(g.point_elements()[i] * rep[c]);

  const std::size_t raw_e = g.index_of(IntegerMatrix::identity(n)) * D;
  std::vector<unsigned> relabel(N);
  {
    unsigned next = 1;
    for (std::size_t raw = 0; raw < N; ++raw)
      relabel[raw] = raw == raw_e ? 0 : next++;
  }
  std::vector<std::size_t> raw_of(N);
  for (std::size_t raw = 0; raw < N; ++raw) raw_of[relabel[raw]] = raw;

  std::vector<std::vector<unsigned>> table(N, std::vector<unsigned>(N));
  std::vector<std::string> labels(N);
  for (std::size_t a = 0; a < N; ++a) {
    const std::size_t i = raw_of[a] / D, c = raw_of[a] % D;
    std::ostringstream lab;
    lab << "p" << i;
    if (D > 1) {
      lab << "|";
      for (std::size_t r = 0; r < n; ++r)
        lab << (r ? "," : "") << digits[c][r];
    }
    labels[a] = lab.str();
    for (std::size_t b = 0; b < N; ++b) {
      const std::size_t j = raw_of[b] / D, c2 = raw_of[b] % D;
      unsigned long coset = add_cosets(add_cosets(kap[i][j], c), act[i][c2]);
      table[a][b] = relabel[pm[i][j] * D + coset];
    }
  }
  return LatticeQuotient(g, l,
                         FiniteGroup(std::move(table), std::move(labels)),
                         s.u, std::move(diag), std::move(relabel));
}

FiniteGroup quotient_by_sublattice(const CrystalGroup& g, const Lattice& l,
                                   std::size_t max_order) {
  return lattice_quotient(g, l, max_order).group;
}

bool satisfies_relators(const FinPres& p, const FiniteGroup& g,
                        const Hom& h) {
  if (h.images.size() != p.generators.size())
    throw std::invalid_argument("image count does not match generator count");
  for (unsigned x : h.images)
    if (x >= g.order()) throw std::invalid_argument("image out of range");
  for (const Word& w : p.relators) {
    unsigned x = 0;
    for (int l : w)
      x = l > 0 ? g.mul(x, h.images[(std::size_t)l - 1])
                : g.mul(x, g.inv(h.images[(std::size_t)(-l) - 1]));
    if (x != 0) return false;
  }
  return true;
}

bool is_epimorphism(const FinPres& p, const FiniteGroup& g, const Hom& h) {
  if (!satisfies_relators(p, g, h)) return false;
  return g.subgroup_closure(h.images).size() == g.order();
}

namespace {

/// Depth-first search over generator images in ascending order; relators are
/// checked at the first depth where all their letters are assigned, so every
/// pruned branch is genuinely hom-free.
struct HomSearch {
  HomSearch(const FinPres& p, const FiniteGroup& g, std::size_t b)
      : pres(p), grp(g), budget(b) {}

  const FinPres& pres;
  const FiniteGroup& grp;
  std::size_t budget;
  std::size_t steps = 0;
  std::vector<std::vector<const Word*>> ready;
  std::vector<unsigned> img;
  bool want_epi = false;
  std::vector<Hom>* out = nullptr;
  std::optional<Hom> epi;
  std::vector<std::vector<unsigned>> closures;  // prefix image subgroups

  void tick() {
    if (++steps > budget)
      throw BudgetExceeded("homomorphism search budget exhausted");
  }

  bool word_ok(const Word& w) {
    unsigned x = 0;
    for (int l : w)
      x = l > 0 ? grp.mul(x, img[(std::size_t)l - 1])
                : grp.mul(x, grp.inv(img[(std::size_t)(-l) - 1]));
    return x == 0;
  }

  bool dfs(std::size_t depth) {
    if (depth == pres.generators.size()) {
      if (!want_epi) {
        out->push_back(Hom{img});
        return false;
      }
      if (closures[depth].size() == grp.order()) {
        epi = Hom{img};
        return true;
      }
      return false;
    }
    for (unsigned c = 0; c < grp.order(); ++c) {
      tick();
      img[depth] = c;
      bool ok = true;
      for (const Word* w : ready[depth])
        if (!word_ok(*w)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (want_epi) {
        const auto& cl = closures[depth];
        if (std::binary_search(cl.begin(), cl.end(), c)) {
          closures[depth + 1] = cl;
        } else {
          auto seed = cl;
          seed.push_back(c);
          closures[depth + 1] = grp.subgroup_closure(std::move(seed));
        }
      }
      if (dfs(depth + 1)) return true;
    }
    return false;
  }
};

void index_relators(const FinPres& p, HomSearch& s) {
  s.img.assign(p.generators.size(), 0);
  s.ready.assign(p.generators.size(), {});
  for (const Word& w : p.relators) {
    if (w.empty()) continue;
    std::size_t mi = 0;
    for (int l : w) mi = std::max(mi, (std::size_t)(l > 0 ? l : -l) - 1);
    s.ready[mi].push_back(&w);
  }
}

}  // namespace

std::vector<Hom> all_homs(const FinPres& p, const FiniteGroup& g,
                          std::size_t budget) {
  p.check_letters();
  std::vector<Hom> result;
  HomSearch s{p, g, budget};
  index_relators(p, s);
  s.out = &result;
  s.dfs(0);
  return result;
}

std::optional<Hom> epimorphism_exists(const FinPres& p, const FiniteGroup& g,
                                      std::size_t budget) {
  p.check_letters();
  HomSearch s{p, g, budget};
  index_relators(p, s);
  s.want_epi = true;
  s.closures.assign(p.generators.size() + 1, {});
  s.closures[0] = {0};
  s.dfs(0);
  return s.epi;
}

IntVec CocycleData::value(const IntVec& cocycle, std::size_t i) const {
  const std::size_t n = elements.at(0).rows();
  IntVec v(n);
  if (block.at(i) < 0) return v;
  for (std::size_t r = 0; r < n; ++r)
    v[r] = cocycle.at((std::size_t)block[i] * n + r);
  return v;
}

unsigned long CocycleData::class_id(const IntVec& cocycle) const {
  const std::size_t r = z_basis.cols();
  if (r == 0) {
    for (const Int& x : cocycle)
      if (x != 0) throw std::logic_error("vector is not a cocycle");
    return 0;
  }
  auto gamma = solve_integer(z_basis, cocycle);
  if (!gamma) throw std::logic_error("vector is not a cocycle");
  IntVec dig = h1_u * *gamma;
  unsigned long id = 0, stride = 1;
  for (std::size_t i = 0; i < r; ++i) {
    id += mod_pos(dig[i], h1_diag[i]).get_ui() * stride;
    stride *= h1_diag[i].get_ui();
  }
  return id;
}

CocycleData cocycle_data(const std::vector<IntegerMatrix>& gens,
                         std::size_t class_cap) {
  CocycleData cd;
  cd.elements = enumerate_point_group(gens);
  const std::size_t m = cd.elements.size();
  const std::size_t n = cd.elements[0].rows();
  const IntegerMatrix ident = IntegerMatrix::identity(n);

  cd.block.assign(m, -1);
  long next_block = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (cd.elements[i] != ident) cd.block[i] = next_block++;
  const std::size_t unknowns = (std::size_t)next_block * n;

  if (m == 1) {
    cd.system = IntegerMatrix(0, 0);
    cd.z_basis = IntegerMatrix(0, 0);
    cd.b_coords = IntegerMatrix(0, n);
    cd.h1_u = IntegerMatrix(0, 0);
    if (class_cap > 0) cd.class_reps.push_back(IntVec{});
    return cd;
  }

  // A small generating set keeps the relation system short; the equations
  // over generators force the rest by associativity.
  std::vector<IntegerMatrix> greedy;
  {
    std::vector<IntegerMatrix> closed = {ident};
    while (closed.size() < m) {
      for (const auto& e : cd.elements)
        if (!std::binary_search(closed.begin(), closed.end(), e)) {
          greedy.push_back(e);
          break;
        }
      closed = enumerate_point_group(greedy);
    }
  }
  auto idx_of = [&](const IntegerMatrix& a) {
    return (std::size_t)(std::lower_bound(cd.elements.begin(),
                                          cd.elements.end(), a) -
                         cd.elements.begin());
  };

  for (const auto& gmat : greedy) {
    const std::size_t gi = idx_of(gmat);
    for (std::size_t hi = 0; hi < m; ++hi)
      if (cd.block[hi] >= 0) cd.equation_pairs.emplace_back(gi, hi);
  }
  IntegerMatrix sys(cd.equation_pairs.size() * n, unknowns);
  for (std::size_t e = 0; e < cd.equation_pairs.size(); ++e) {
    const auto [gi, hi] = cd.equation_pairs[e];
    const IntegerMatrix& gmat = cd.elements[gi];
    const long bg = cd.block[gi];
    const long bp = cd.block[idx_of(gmat * cd.elements[hi])];
    const std::size_t rb = e * n;
    for (std::size_t r = 0; r < n; ++r) {
      if (bp >= 0) sys.at(rb + r, (std::size_t)bp * n + r) += 1;
      sys.at(rb + r, (std::size_t)bg * n + r) -= 1;
      for (std::size_t c = 0; c < n; ++c)
        sys.at(rb + r, (std::size_t)cd.block[hi] * n + c) -= gmat.at(r, c);
    }
  }
  cd.z_basis = kernel(sys);
  cd.system = std::move(sys);

  IntegerMatrix bmat(unknowns, n);
  for (std::size_t hi = 0; hi < m; ++hi) {
    if (cd.block[hi] < 0) continue;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j)
        bmat.at((std::size_t)cd.block[hi] * n + r, j) =
            Int(r == j ? 1 : 0) - cd.elements[hi].at(r, j);
  }
  auto coords = solve_integer_matrix(cd.z_basis, bmat);
  if (!coords)
    throw std::logic_error("coboundaries fell outside the cocycle lattice");
  cd.b_coords = *coords;
  cd.invariants = cokernel_invariants(cd.b_coords);
  if (cd.invariants.free_rank != 0)
    throw std::logic_error("first cohomology of a finite group came out "
                           "infinite");

  const std::size_t r = cd.z_basis.cols();
  {
    auto s2 = snf(cd.b_coords);
    cd.h1_u = s2.u;
    cd.h1_diag.resize(r);
    for (std::size_t i = 0; i < r; ++i) cd.h1_diag[i] = s2.d.at(i, i);
  }
  if (class_cap > 0) {
    Int count = 1;
    for (std::size_t i = 0; i < r; ++i) count *= cd.h1_diag[i];
    if (count > Int((unsigned long)class_cap))
      throw BudgetExceeded("more cohomology classes than the cap");
    IntegerMatrix uinv = cd.h1_u.inverse_unimodular();
    for (unsigned long cid = 0; cid < count.get_ui(); ++cid) {
      unsigned long t = cid;
      IntVec y(r);
      for (std::size_t i = 0; i < r; ++i) {
        y[i] = Int(t % cd.h1_diag[i].get_ui());
        t /= cd.h1_diag[i].get_ui();
      }
      cd.class_reps.push_back(cd.z_basis * (uinv * y));
    }
  }
  return cd;
}

AbelianInvariants h1(const std::vector<IntegerMatrix>& gens) {
  return cocycle_data(gens, 0).invariants;
}

}  // namespace alcove
