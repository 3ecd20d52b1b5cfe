#include "alcove/crystal_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace alcove {

namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

RatVec mat_apply(const IntegerMatrix& m, const RatVec& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("dimension mismatch");
  RatVec out(m.rows(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += Rat(m.at(i, j)) * v[j];
  return out;
}

RatVec rat_add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec rat_sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool all_zero(const RatVec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

Int trace_of(const IntegerMatrix& m) {
  Int t(0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m.at(i, i);
  return t;
}

IntegerMatrix scaled(const IntegerMatrix& m, const Int& c) {
  IntegerMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) *= c;
  return out;
}

IntegerMatrix block_diag(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return out;
}

IntegerMatrix vstack(const std::vector<IntegerMatrix>& blocks) {
  std::size_t rows = 0, cols = blocks.empty() ? 0 : blocks[0].cols();
  for (const auto& b : blocks) rows += b.rows();
  IntegerMatrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out.at(r + i, j) = b.at(i, j);
    r += b.rows();
  }
  return out;
}

std::size_t find_in(const std::vector<IntegerMatrix>& sorted,
                    const IntegerMatrix& m) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
  if (it == sorted.end() || !(*it == m)) return kNpos;
  return static_cast<std::size_t>(it - sorted.begin());
}

/// Smallest-index elements that generate the (sorted, identity-containing)
/// set; verifies multiplicative closure along the way.
std::vector<std::size_t> greedy_generators(
    const std::vector<IntegerMatrix>& pts) {
  std::size_t n = pts[0].rows();
  std::size_t id = find_in(pts, IntegerMatrix::identity(n));
  if (id == kNpos)
    throw std::invalid_argument("point set does not contain the identity");
  std::vector<std::size_t> gens;
  std::vector<char> reached(pts.size(), 0);
  std::vector<std::size_t> closure = {id};
  reached[id] = 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (reached[i]) continue;
    gens.push_back(i);
    std::deque<std::size_t> queue(closure.begin(), closure.end());
    while (!queue.empty()) {
      std::size_t a = queue.front();
      queue.pop_front();
      for (std::size_t s : gens) {
        std::size_t j = find_in(pts, pts[a] * pts[s]);
        if (j == kNpos)
          throw std::invalid_argument(
              "point parts are not closed under multiplication");
        if (!reached[j]) {
          reached[j] = 1;
          closure.push_back(j);
          queue.push_back(j);
        }
      }
    }
  }
  return gens;
}

/// Order of an affine element if it is at most `cap`, else 0.
std::size_t affine_order_capped(const AffineElement& g, std::size_t cap) {
  AffineElement id = AffineElement::identity(g.dim());
  AffineElement p = g;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p.compose(g);
  }
  return 0;
}

/// Labeled-graph isomorphism sending vertex 0 of a to vertex 0 of b.
std::optional<std::vector<std::size_t>> pinned_graph_match(
    const CoxeterGraph& a, const CoxeterGraph& b) {
  std::size_t n = a.size();
  if (b.size() != n) return std::nullopt;
  std::vector<std::size_t> img(n, kNpos);
  std::vector<char> used(n, 0);
  img[0] = 0;
  used[0] = 1;
  auto extend = [&](auto&& self, std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u)
        ok = a.bond(v, u) == b.bond(w, img[u]);
      if (!ok) continue;
      img[v] = w;
      used[w] = 1;
      if (self(self, v + 1)) return true;
      used[w] = 0;
      img[v] = kNpos;
    }
    return false;
  };
  if (!extend(extend, 1)) return std::nullopt;
  return img;
}

IntegerMatrix conjugate_into_basis(const IntegerMatrix& basis,
                                   const IntegerMatrix& m, const char* what) {
  auto x = solve_integer_matrix(basis, m * basis);
  if (!x)
    throw std::invalid_argument(std::string(what) +
                                ": lattice is not stable under the action");
  return *x;
}

}  // namespace

AffineElement AffineElement::identity(std::size_t n) {
  return {IntegerMatrix::identity(n), RatVec(n, Rat(0))};
}

AffineElement AffineElement::translation(const IntVec& z) {
  return {IntegerMatrix::identity(z.size()), to_rat(z)};
}

AffineElement AffineElement::compose(const AffineElement& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
  return {point * o.point, rat_add(shift, mat_apply(point, o.shift))};
}

AffineElement AffineElement::inverse() const {
  IntegerMatrix inv = point.inverse_unimodular();
  RatVec s = mat_apply(inv, shift);
  for (Rat& x : s) x = -x;
  return {std::move(inv), std::move(s)};
}

RatVec AffineElement::apply(const RatVec& x) const {
  return rat_add(mat_apply(point, x), shift);
}

RatVec reduce_mod_lattice(const RatVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = frac_part(v[i]);
  return out;
}

std::vector<IntegerMatrix> enumerate_point_group(
    const std::vector<IntegerMatrix>& gens, std::size_t budget) {
  if (gens.empty())
    throw std::invalid_argument("point group needs at least one generator");
  std::size_t n = gens[0].rows();
  for (const auto& g : gens) {
    if (!g.is_square() || g.rows() != n)
      throw std::invalid_argument("generators must be square, of one size");
    Int d = g.det();
    if (d != 1 && d != -1)
      throw std::invalid_argument(
          "generator is not invertible over the integers");
  }
  std::set<IntegerMatrix> seen;
  std::deque<IntegerMatrix> queue;
  seen.insert(IntegerMatrix::identity(n));
  queue.push_back(IntegerMatrix::identity(n));
  while (!queue.empty()) {
    IntegerMatrix g = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      IntegerMatrix h = g * s;
      if (seen.count(h)) continue;
      if (seen.size() >= budget)
        throw BudgetExceeded("point group closure exceeds " +
                             std::to_string(budget) + " elements");
      queue.push_back(h);
      seen.insert(std::move(h));
    }
  }
  return {seen.begin(), seen.end()};
}

Int matrix_order(const IntegerMatrix& m, std::size_t budget) {
  if (!m.is_square())
    throw std::invalid_argument("order of a non-square matrix");
  IntegerMatrix p = m;
  for (std::size_t k = 1; k <= budget; ++k) {
    if (p.is_identity()) return Int(static_cast<long>(k));
    p = p * m;
  }
  throw BudgetExceeded("no finite matrix order within budget");
}

std::vector<CharTriple> character_data(
    const std::vector<IntegerMatrix>& group) {
  std::map<std::pair<Int, Int>, std::size_t> tally;
  for (const auto& g : group)
    ++tally[{matrix_order(g, group.size() + 1), trace_of(g)}];
  std::vector<CharTriple> out;
  out.reserve(tally.size());
  for (const auto& [key, count] : tally)
    out.push_back({key.first, key.second, count});
  return out;
}

CrystalGroup::CrystalGroup(std::vector<IntegerMatrix> point_elements,
                           std::vector<RatVec> shifts) {
  if (point_elements.empty())
    throw std::invalid_argument("a crystallographic group needs point parts");
  if (point_elements.size() != shifts.size())
    throw std::invalid_argument("one shift per point element");
  dim_ = point_elements[0].rows();
  for (std::size_t i = 0; i < point_elements.size(); ++i) {
    if (!point_elements[i].is_square() || point_elements[i].rows() != dim_)
      throw std::invalid_argument("point parts must be square, of one size");
    if (shifts[i].size() != dim_)
      throw std::invalid_argument("shift dimension mismatch");
  }
  std::vector<std::size_t> order(point_elements.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return point_elements[a] < point_elements[b];
  });
  points_.reserve(order.size());
  shifts_.reserve(order.size());
  for (std::size_t i : order) {
    points_.push_back(std::move(point_elements[i]));
    shifts_.push_back(reduce_mod_lattice(shifts[i]));
  }
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    if (points_[i] == points_[i + 1])
      throw std::invalid_argument("repeated point part");

  std::size_t id = find_in(points_, IntegerMatrix::identity(dim_));
  if (id == kNpos)
    throw std::invalid_argument("point parts do not include the identity");
  if (!all_zero(shifts_[id]))
    throw std::invalid_argument("identity carries a fractional shift");

  gen_indices_ = greedy_generators(points_);
  for (std::size_t s : gen_indices_) {
    Int d = points_[s].det();
    if (d != 1 && d != -1)
      throw std::invalid_argument(
          "point part is not invertible over the integers");
  }
  // cocycle law on (everything, generator) pairs extends to all products
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t s : gen_indices_) {
      std::size_t j = find_in(points_, points_[a] * points_[s]);
      RatVec expect =
          reduce_mod_lattice(rat_add(shifts_[a], mat_apply(points_[a], shifts_[s])));
      if (expect != shifts_[j])
        throw std::invalid_argument("vector system violates the cocycle law");
    }
  }
}

std::size_t CrystalGroup::index_of(const IntegerMatrix& point) const {
  std::size_t i = find_in(points_, point);
  if (i == kNpos)
    throw std::invalid_argument("matrix is not in the point group");
  return i;
}

AffineElement CrystalGroup::element(std::size_t i) const {
  return {points_.at(i), shifts_.at(i)};
}

bool CrystalGroup::contains(const AffineElement& g) const {
  std::size_t i = find_in(points_, g.point);
  if (i == kNpos) return false;
  return reduce_mod_lattice(g.shift) == shifts_[i];
}

std::vector<std::size_t> CrystalGroup::point_generator_indices() const {
  return gen_indices_;
}

CrystalGroup CrystalGroup::semidirect(
    std::size_t dim, const std::vector<IntegerMatrix>& point_gens,
    std::size_t budget) {
  std::vector<IntegerMatrix> pts =
      point_gens.empty() ? std::vector<IntegerMatrix>{IntegerMatrix::identity(dim)}
                         : enumerate_point_group(point_gens, budget);
  if (pts[0].rows() != dim)
    throw std::invalid_argument("generator size disagrees with the dimension");
  std::vector<RatVec> sh(pts.size(), RatVec(dim, Rat(0)));
  return CrystalGroup(std::move(pts), std::move(sh));
}

CrystalGroup CrystalGroup::from_generators(
    const std::vector<AffineElement>& gens, std::size_t budget) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  std::size_t n = gens[0].dim();
  std::vector<AffineElement> alphabet;
  for (const auto& g : gens) {
    if (g.dim() != n || g.shift.size() != n)
      throw std::invalid_argument("generators must share one dimension");
    alphabet.push_back(g);
    alphabet.push_back(g.inverse());
  }

  // breadth-first closure of the point parts, one representative shift each;
  // revisits measure the translation subgroup (Schreier generators of the
  // kernel of the projection onto the point group)
  std::map<IntegerMatrix, RatVec> rep;
  std::deque<AffineElement> queue;
  AffineElement e = AffineElement::identity(n);
  rep.emplace(e.point, e.shift);
  queue.push_back(e);
  std::vector<RatVec> diffs;
  while (!queue.empty()) {
    AffineElement g = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : alphabet) {
      AffineElement h = g.compose(s);
      auto it = rep.find(h.point);
      if (it == rep.end()) {
        if (rep.size() >= budget)
          throw BudgetExceeded("point group closure exceeds " +
                               std::to_string(budget) + " elements");
        rep.emplace(h.point, h.shift);
        queue.push_back(std::move(h));
      } else {
        RatVec d = rat_sub(h.shift, it->second);
        if (!all_zero(d)) diffs.push_back(std::move(d));
      }
    }
  }

  if (diffs.empty())
    throw std::invalid_argument(
        "generated group is finite: its translation subgroup is trivial");
  Int den(1);
  for (const RatVec& d : diffs)
    for (const Rat& x : d) {
      Int xd = x.get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), xd.get_mpz_t());
    }
  IntegerMatrix cols(n, diffs.size());
  for (std::size_t j = 0; j < diffs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Rat y = diffs[j][i] * Rat(den);
      cols.at(i, j) = y.get_num();
    }
  Lattice t = Lattice::span(n, cols);
  if (!(t == Lattice::scaled_standard(n, den))) {
    std::ostringstream msg;
    msg << "translation subgroup of the generated group is not Z^" << n
        << " (rank " << t.rank() << ", denominator " << den.get_str() << ")";
    throw std::invalid_argument(msg.str());
  }

  std::vector<IntegerMatrix> pts;
  std::vector<RatVec> sh;
  pts.reserve(rep.size());
  sh.reserve(rep.size());
  for (auto& [p, s] : rep) {
    pts.push_back(p);
    sh.push_back(s);
  }
  return CrystalGroup(std::move(pts), std::move(sh));
}

Lattice CrystalGroup::fixed_sublattice() const {
  if (gen_indices_.empty()) return Lattice::standard(dim_);
  std::vector<IntegerMatrix> blocks;
  for (std::size_t i : gen_indices_)
    blocks.push_back(points_[i] - IntegerMatrix::identity(dim_));
  return Lattice(dim_, kernel(vstack(blocks)));
}

std::size_t CrystalGroup::centre_rank() const {
  return fixed_sublattice().rank();
}

AbelianInvariants CrystalGroup::translation_coinvariants() const {
  // span{(A - 1)Z^n : A in P} is the closure of the generator contributions
  // under left multiplication by the generators
  Lattice m = Lattice::zero(dim_);
  for (std::size_t i : gen_indices_)
    m = lattice_sum(
        m, Lattice::span(dim_, points_[i] - IntegerMatrix::identity(dim_)));
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i : gen_indices_) {
      Lattice img = Lattice::span(dim_, points_[i] * m.basis());
      Lattice s = lattice_sum(m, img);
      if (!(s == m)) {
        m = std::move(s);
        grew = true;
      }
    }
  }
  return cokernel_invariants(m.basis());
}

std::vector<CharTriple> CrystalGroup::point_character() const {
  return character_data(points_);
}

bool CrystalGroup::is_symmorphic() const {
  bool zero = true;
  for (const RatVec& s : shifts_)
    if (!all_zero(s)) {
      zero = false;
      break;
    }
  if (zero) return true;

  // If tau is the coboundary of d, averaging over the point group lets d be
  // rewritten with denominator K = |P| * lcm(shift denominators), so the
  // search is an integer linear system in u = K d and one slack vector per
  // generator: (A - 1)u + K z = K tau(A).
  std::size_t n = dim_, k = gen_indices_.size();
  Int m(static_cast<long>(points_.size()));
  Int lcm(1);
  for (std::size_t s : gen_indices_)
    for (const Rat& x : shifts_[s]) {
      Int xd = x.get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), xd.get_mpz_t());
    }
  Int K = m * lcm;

  IntegerMatrix sys(n * k, n * (k + 1));
  IntVec rhs(n * k, Int(0));
  for (std::size_t gi = 0; gi < k; ++gi) {
    const IntegerMatrix& a = points_[gen_indices_[gi]];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        sys.at(gi * n + i, j) = a.at(i, j) - (i == j ? 1 : 0);
      sys.at(gi * n + i, n + gi * n + i) = K;
      Rat r = shifts_[gen_indices_[gi]][i] * Rat(K);
      rhs[gi * n + i] = r.get_num();  // integral: lcm covers the denominator
    }
  }
  return solve_integer(sys, rhs).has_value();
}

std::optional<std::vector<AffineElement>> CrystalGroup::symmorphic_complement()
    const {
  std::size_t n = dim_, k = gen_indices_.size();
  std::size_t m = points_.size();

  bool zero = true;
  for (const RatVec& s : shifts_)
    if (!all_zero(s)) {
      zero = false;
      break;
    }
  if (zero) {
    std::vector<AffineElement> lift;
    for (std::size_t i = 0; i < m; ++i) lift.push_back(element(i));
    return lift;
  }

  // An exact section sigma(p) = tau(p) + y(p) with integral y exists iff the
  // group splits. Keep y on the generators as unknowns, propagate y over a
  // spanning tree of the point group via y(pg) = y(p) + p y(g) + c(p, g)
  // with c(p, g) = tau(p) + p tau(g) - tau(pg), and turn every non-tree edge
  // into rows of one integer system.
  auto defect = [&](std::size_t p, std::size_t gi, std::size_t pg) {
    RatVec r = rat_add(shifts_[p], mat_apply(points_[p], shifts_[gi]));
    r = rat_sub(r, shifts_[pg]);
    IntVec c(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_integral(r[i]))
        throw std::logic_error("cocycle defect is not integral");
      c[i] = r[i].get_num();
    }
    return c;
  };

  std::size_t id = find_in(points_, IntegerMatrix::identity(n));
  // y(p) = consts[p] + sum_j coeffs[p][j] * y(g_j)
  std::vector<IntVec> consts(m, IntVec(n, Int(0)));
  std::vector<std::vector<IntegerMatrix>> coeffs(
      m, std::vector<IntegerMatrix>(k, IntegerMatrix(n, n)));
  std::vector<bool> known(m, false);
  known[id] = true;

  std::vector<IntegerMatrix> rows;
  std::vector<IntVec> rhs_blocks;
  std::vector<std::size_t> queue = {id};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t p = queue[head];
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t gi = gen_indices_[j];
      std::size_t pg = find_in(points_, points_[p] * points_[gi]);
      IntVec c = defect(p, gi, pg);
      // y(pg) - y(p) - p y(g_j) as an affine expression in the unknowns
      IntVec cst = consts[p];
      for (std::size_t i = 0; i < n; ++i) cst[i] += c[i];
      std::vector<IntegerMatrix> cf = coeffs[p];
      cf[j] = cf[j] + points_[p];
      if (!known[pg]) {
        known[pg] = true;
        consts[pg] = std::move(cst);
        coeffs[pg] = std::move(cf);
        queue.push_back(pg);
      } else {
        IntegerMatrix row(n, n * k);
        for (std::size_t j2 = 0; j2 < k; ++j2) {
          IntegerMatrix d = coeffs[pg][j2] - cf[j2];
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t cidx = 0; cidx < n; ++cidx)
              row.at(r, j2 * n + cidx) = d.at(r, cidx);
        }
        IntVec b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = cst[i] - consts[pg][i];
        rows.push_back(std::move(row));
        rhs_blocks.push_back(std::move(b));
      }
    }
  }

  IntegerMatrix sys(rows.size() * n, n * k);
  IntVec rhs(rows.size() * n, Int(0));
  for (std::size_t b = 0; b < rows.size(); ++b)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n * k; ++j)
        sys.at(b * n + i, j) = rows[b].at(i, j);
      rhs[b * n + i] = rhs_blocks[b][i];
    }
  auto sol = solve_integer(sys, rhs);
  if (!sol) return std::nullopt;

  std::vector<AffineElement> lift;
  for (std::size_t p = 0; p < m; ++p) {
    IntVec y = consts[p];
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < n; ++c)
          y[i] += coeffs[p][j].at(i, c) * (*sol)[j * n + c];
    RatVec s = shifts_[p];
    for (std::size_t i = 0; i < n; ++i) s[i] += Rat(y[i]);
    lift.push_back({points_[p], std::move(s)});
  }
  return lift;
}

bool CrystalGroup::is_torsion_free() const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].is_identity()) continue;
    // (A, tau + z)^k = (1, N(tau + z)) for k the order of A and N the orbit
    // sum; the element is torsion iff N z = -N tau has an integer solution
    IntegerMatrix norm = IntegerMatrix::identity(dim_);
    IntegerMatrix p = points_[i];
    std::size_t guard = 0;
    while (!p.is_identity()) {
      norm = norm + p;
      p = p * points_[i];
      if (++guard > points_.size())
        throw std::logic_error("point part has no finite order");
    }
    RatVec w = mat_apply(norm, shifts_[i]);
    Int den(1);
    for (const Rat& x : w) {
      Int xd = x.get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), xd.get_mpz_t());
    }
    IntVec rhs(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      Rat r = -w[j] * Rat(den);
      rhs[j] = r.get_num();
    }
    if (solve_integer(scaled(norm, den), rhs)) return false;
  }
  return true;
}

namespace {

// dense integer polynomials, coefficient of t^i at index i, no trailing zeros
using Poly = std::vector<Int>;

void ptrim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::size_t pdeg(const Poly& p) { return p.empty() ? 0 : p.size() - 1; }

/// Characteristic polynomial by the Faddeev-LeVerrier recurrence; every
/// division is exact over the integers.
Poly char_poly(const IntegerMatrix& a) {
  std::size_t n = a.rows();
  Poly c(n + 1, Int(0));
  c[n] = 1;
  IntegerMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
    IntegerMatrix am = a * m;
    Int tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += am.at(i, i);
    Int num = -tr;
    mpz_divexact_ui(c[n - k].get_mpz_t(), num.get_mpz_t(),
                    static_cast<unsigned long>(k));
  }
  return c;
}

Int peval(const Poly& p, const Int& x) {
  Int v(0);
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

Poly pderiv(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i)
    d.push_back(Int(static_cast<long>(i)) * p[i]);
  ptrim(d);
  return d;
}

void pprimitive(Poly& p) {
  Int g(0);
  for (const Int& c : p)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g <= 1) return;
  for (Int& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

Poly prem(Poly f, const Poly& g) {
  const Int& lg = g.back();
  while (!f.empty() && f.size() >= g.size()) {
    Int c = f.back();
    std::size_t shift = f.size() - g.size();
    for (Int& x : f) x *= lg;
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= c * g[i];
    ptrim(f);
  }
  return f;
}

/// Primitive remainder sequence; result is primitive with positive lead.
Poly poly_gcd(Poly a, Poly b) {
  pprimitive(a);
  pprimitive(b);
  while (!b.empty()) {
    Poly r = prem(a, b);
    pprimitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0)
    for (Int& c : a) c = -c;
  return a;
}

/// Quotient f / g for monic g, or nullopt when the division is inexact.
std::optional<Poly> pdiv_monic(Poly f, const Poly& g) {
  Poly q(f.size() >= g.size() ? f.size() - g.size() + 1 : 1, Int(0));
  while (!f.empty() && f.size() >= g.size()) {
    Int c = f.back();
    std::size_t shift = f.size() - g.size();
    q[shift] = c;
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= c * g[i];
    ptrim(f);
  }
  if (!f.empty()) return std::nullopt;
  ptrim(q);
  return q;
}

/// Product of the distinct irreducible factors: chi / gcd(chi, chi').
Poly radical(const Poly& chi) {
  Poly g = poly_gcd(chi, pderiv(chi));
  if (pdeg(g) == 0) return chi;
  if (g.back() != 1)
    throw std::logic_error("gcd of a monic polynomial is not monic");
  auto q = pdiv_monic(chi, g);
  if (!q) throw std::logic_error("radical division failed");
  return *q;
}

/// All positive divisors of v (v nonzero), by trial division.
std::vector<Int> divisors(const Int& v) {
  Int m = v < 0 ? Int(-v) : v;
  std::vector<std::pair<Int, unsigned>> fac;
  for (Int p(2); p * p <= m && p < 2000000; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    fac.emplace_back(p, e);
  }
  if (m > 1) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) == 0)
      throw std::logic_error("divisor enumeration out of range");
    fac.emplace_back(m, 1);
  }
  std::vector<Int> divs = {Int(1)};
  for (const auto& [q, e] : fac) {
    std::size_t old = divs.size();
    Int pw(1);
    for (unsigned i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < old; ++j) divs.push_back(divs[j] * pw);
    }
  }
  return divs;
}

/// Irreducibility over Q for a monic squarefree integer polynomial of
/// degree at most seven: strip integer roots, then search monic quadratic
/// and cubic factors through their values at 0, 1, -1 (Kronecker).
bool poly_irreducible(const Poly& rho) {
  std::size_t deg = pdeg(rho);
  if (deg <= 1) return true;
  if (deg > 7) throw std::logic_error("factor search above degree seven");
  if (rho[0] == 0) return false;
  for (const Int& dv : divisors(rho[0]))
    for (int s = -1; s <= 1; s += 2)
      if (peval(rho, Int(dv * s)) == 0) return false;
  if (deg < 4) return true;
  Int r1 = peval(rho, Int(1)), rm1 = peval(rho, Int(-1));
  auto d0s = divisors(rho[0]);
  auto d1s = divisors(r1);
  for (const Int& d0 : d0s)
    for (int s0 = -1; s0 <= 1; s0 += 2)
      for (const Int& d1 : d1s)
        for (int s1 = -1; s1 <= 1; s1 += 2) {
          Int c = d0 * s0;
          Poly g = {c, d1 * s1 - 1 - c, Int(1)};
          if (pdiv_monic(rho, g)) return false;
        }
  if (deg < 6) return true;
  auto dms = divisors(rm1);
  for (const Int& d0 : d0s)
    for (int s0 = -1; s0 <= 1; s0 += 2)
      for (const Int& d1 : d1s)
        for (int s1 = -1; s1 <= 1; s1 += 2)
          for (const Int& dm : dms)
            for (int sm = -1; sm <= 1; sm += 2) {
              Int c = d0 * s0, e1 = d1 * s1, em = dm * sm;
              Int ta = e1 + em - 2 * c, tb = e1 - em - 2;
              if (ta % 2 != 0 || tb % 2 != 0) continue;
              Poly g = {c, tb / 2, ta / 2, Int(1)};
              if (pdiv_monic(rho, g)) return false;
            }
  return true;
}

Int squarefree_part(const Int& v) {
  if (v == 0) return Int(0);
  bool neg = v < 0;
  Int m = neg ? Int(-v) : v;
  Int out(1);
  for (Int p(2); p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    unsigned e = 0;
    while (m % p == 0) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e % 2) out *= p;
  }
  out *= m;
  return neg ? Int(-out) : out;
}

/// Does z^2 = a x^2 + b y^2 have a nontrivial rational solution?  Reduce to
/// a pairwise coprime squarefree Legendre form, then search the Holzer box,
/// inside which a solution exists whenever one exists at all.
bool conic_solvable(const Int& a0, const Int& b0) {
  Int a = squarefree_part(a0), b = squarefree_part(b0);
  if (a == 1 || b == 1) return true;
  Int ca = a, cb = b, cc(-1);
  for (;;) {
    Int g;
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cc.get_mpz_t());
    if (g <= 1) break;
    mpz_divexact(ca.get_mpz_t(), ca.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(cb.get_mpz_t(), cb.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(cc.get_mpz_t(), cc.get_mpz_t(), g.get_mpz_t());
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto shift_pair = [&](Int& x, Int& y, Int& z) {
      Int g;
      mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      if (g <= 1) return;
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t());
      z = squarefree_part(z * g);
      changed = true;
    };
    shift_pair(ca, cb, cc);
    shift_pair(ca, cc, cb);
    shift_pair(cb, cc, ca);
  }
  if (ca > 0 && cb > 0 && cc > 0) return false;
  if (ca < 0 && cb < 0 && cc < 0) return false;
  Int bx, by;
  Int pbc = cb * cc, pac = ca * cc;
  if (pbc < 0) pbc = -pbc;
  if (pac < 0) pac = -pac;
  mpz_sqrt(bx.get_mpz_t(), pbc.get_mpz_t());
  mpz_sqrt(by.get_mpz_t(), pac.get_mpz_t());
  for (Int x(0); x <= bx; ++x)
    for (Int y(0); y <= by; ++y) {
      if (x == 0 && y == 0) continue;
      Int num = -(ca * x * x + cb * y * y);
      if (num % cc != 0) continue;
      Int zz = num / cc;
      if (zz < 0) continue;
      if (mpz_perfect_square_p(zz.get_mpz_t())) return true;
    }
  return false;
}

}  // namespace

bool CrystalGroup::is_just_infinite() const {
  // just infinite == the point action is Q-irreducible: any nonzero normal
  // subgroup meets the translations in a stable sublattice, which has full
  // rank exactly when no proper invariant subspace exists
  std::size_t n = dim_;
  if (gen_indices_.empty()) return n == 1;

  std::size_t k = gen_indices_.size();
  IntegerMatrix sys(n * n * k, n * n);
  for (std::size_t gi = 0; gi < k; ++gi) {
    const IntegerMatrix& a = points_[gen_indices_[gi]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t kk = 0; kk < n; ++kk)
          for (std::size_t l = 0; l < n; ++l) {
            Int coeff = (l == j ? a.at(i, kk) : Int(0)) -
                        (kk == i ? a.at(l, j) : Int(0));
            if (coeff != 0)
              sys.at(gi * n * n + i * n + j, kk * n + l) = coeff;
          }
  }
  IntegerMatrix basis = kernel(sys);
  std::size_t d = basis.cols();
  if (d == 1) return true;  // commutant is Q: the module is simple

  auto as_matrix = [&](const IntVec& coeffs) {
    IntegerMatrix x(n, n);
    for (std::size_t c = 0; c < d; ++c)
      if (coeffs[c] != 0)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            x.at(i, j) += coeffs[c] * basis.at(i * n + j, c);
    return x;
  };
  auto singular = [&](const IntegerMatrix& x) {
    return !x.is_zero() && x.det() == 0;
  };
  // a singular commuting matrix has an invariant kernel, a proper subspace
  std::vector<IntegerMatrix> bas;
  for (std::size_t c = 0; c < d; ++c) {
    IntVec e(d, Int(0));
    e[c] = 1;
    bas.push_back(as_matrix(e));
    if (singular(bas.back())) return false;
  }

  bool commutative = true;
  for (std::size_t i = 0; i < d && commutative; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (!(bas[i] * bas[j] == bas[j] * bas[i])) {
        commutative = false;
        break;
      }

  if (commutative) {
    // the commutant is a product of number fields (the module is
    // semisimple); it is a single field exactly when the module is simple.
    // A primitive element has squarefree minimal polynomial of degree d,
    // read off as the radical of its characteristic polynomial.
    for (long box = 1; box <= 2; ++box) {
      std::vector<long> c(d, -box);
      for (;;) {
        IntegerMatrix x(n, n);
        bool zero = true;
        for (std::size_t k = 0; k < d; ++k) {
          if (c[k] == 0) continue;
          zero = false;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              x.at(i, j) += Int(c[k]) * bas[k].at(i, j);
        }
        if (!zero) {
          Poly rho = radical(char_poly(x));
          if (pdeg(rho) > d)
            throw std::logic_error("minimal polynomial exceeds the commutant");
          if (pdeg(rho) == d) return poly_irreducible(rho);
        }
        std::size_t k = 0;
        while (k < d && ++c[k] > box) c[k++] = -box;
        if (k == d) break;
      }
    }
    throw std::logic_error(
        "cannot decide just-infiniteness: no primitive commutant element "
        "within the search box");
  }

  // noncommutative commutant: classify through the centre. A component
  // with a noncommutative endomorphism ring over a bigger centre needs at
  // least eight dimensions, so below that a split centre means a split
  // module.
  IntegerMatrix zsys(d * n * n, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      IntegerMatrix comm = bas[k] * bas[j];
      IntegerMatrix rev = bas[j] * bas[k];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          zsys.at(j * n * n + i * n + l, k) = comm.at(i, l) - rev.at(i, l);
    }
  std::size_t zdim = kernel(zsys).cols();
  if (zdim >= 2) {
    if (n < 8) return false;
    throw std::logic_error(
        "cannot decide just-infiniteness above dimension seven");
  }
  if (n > 6)
    throw std::logic_error(
        "cannot decide just-infiniteness above dimension six");
  // central simple over Q; dimensions 9, 16, 25, 36 in a module of at most
  // six dimensions force a matrix algebra over Q
  if (d == 9 || d == 16 || d == 25 || d == 36) return false;
  if (d != 4)
    throw std::logic_error(
        "commutant dimension is not that of a central simple algebra");
  if (n != 4) return false;  // Mat_2(Q) on a doubled plane or triple

  // dimension four: a quaternion algebra; the module is reducible exactly
  // when the algebra splits. Extract a standard pair i, j and test the
  // norm conic.
  IntegerMatrix ielt(n, n);
  bool found = false;
  for (const auto& bm : bas) {
    Int tr(0);
    for (std::size_t t = 0; t < n; ++t) tr += bm.at(t, t);
    IntegerMatrix cand(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cand.at(i, j) = Int(4) * bm.at(i, j) - (i == j ? tr : Int(0));
    if (!cand.is_zero()) {
      ielt = cand;
      found = true;
      break;
    }
  }
  if (!found)
    throw std::logic_error("noncommutative commutant with scalar basis");
  auto scalar_square = [&](const IntegerMatrix& x) -> Int {
    IntegerMatrix sq = x * x;
    Int val = sq.at(0, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (sq.at(i, j) != (i == j ? val : Int(0)))
          throw std::logic_error(
              "trace zero element squares to a nonscalar");
    return val;
  };
  Int alpha = scalar_square(ielt);
  if (alpha == 0) return false;
  if (alpha > 0 && mpz_perfect_square_p(alpha.get_mpz_t())) return false;
  IntegerMatrix asys(n * n, d);
  for (std::size_t k = 0; k < d; ++k) {
    IntegerMatrix anti = ielt * bas[k] + bas[k] * ielt;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        asys.at(i * n + l, k) = anti.at(i, l);
  }
  IntegerMatrix jcoords = kernel(asys);
  if (jcoords.cols() == 0)
    throw std::logic_error("quaternion algebra without an anticommuting pair");
  IntVec jc(d);
  for (std::size_t k = 0; k < d; ++k) jc[k] = jcoords.at(k, 0);
  IntegerMatrix jelt = as_matrix(jc);
  if (jelt.is_zero())
    throw std::logic_error("quaternion algebra without an anticommuting pair");
  Int beta = scalar_square(jelt);
  if (beta == 0) return false;
  if (beta > 0 && mpz_perfect_square_p(beta.get_mpz_t())) return false;
  return !conic_solvable(alpha, beta);
}

FinPres CrystalGroup::presentation(std::size_t budget) const {
  std::size_t n = dim_, k = gen_indices_.size();
  if (points_.size() * std::max<std::size_t>(k, 1) > budget)
    throw BudgetExceeded("presentation table larger than the budget");

  FinPres pres;
  for (std::size_t i = 0; i < n; ++i)
    pres.generators.push_back("t" + std::to_string(i + 1));
  for (std::size_t j = 0; j < k; ++j)
    pres.generators.push_back("g" + std::to_string(j + 1));
  auto t_letter = [](std::size_t i) { return static_cast<int>(i) + 1; };
  auto g_letter = [&](std::size_t j) { return static_cast<int>(n + j) + 1; };
  auto translation_word = [&](const IntVec& v) {
    Word w;
    for (std::size_t i = 0; i < v.size(); ++i) {
      long count = static_cast<long>(mpz_get_si(v[i].get_mpz_t()));
      for (long c = 0; c < std::labs(count); ++c)
        w.push_back(count > 0 ? t_letter(i) : -t_letter(i));
    }
    return w;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pres.relators.push_back(
          {t_letter(i), t_letter(j), -t_letter(i), -t_letter(j)});

  for (std::size_t j = 0; j < k; ++j) {
    const IntegerMatrix& a = points_[gen_indices_[j]];
    for (std::size_t i = 0; i < n; ++i) {
      Word w = {g_letter(j), t_letter(i), -g_letter(j)};
      Word conj = inverse_word(translation_word(a.column_vec(i)));
      w.insert(w.end(), conj.begin(), conj.end());
      pres.relators.push_back(std::move(w));
    }
  }

  // Reidemeister-Schreier relators over a breadth-first spanning tree of the
  // point group's Cayley graph; each non-tree edge closes to a translation,
  // computed exactly from the affine representatives
  std::size_t id = find_in(points_, IntegerMatrix::identity(dim_));
  std::vector<Word> tree_word(points_.size());
  std::vector<char> seen(points_.size(), 0);
  std::vector<AffineElement> lift(points_.size(), AffineElement::identity(n));
  seen[id] = 1;
  std::deque<std::size_t> queue = {id};
  std::vector<std::pair<std::size_t, std::size_t>> skipped;
  while (!queue.empty()) {
    std::size_t a = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t b = find_in(points_, points_[a] * points_[gen_indices_[j]]);
      if (!seen[b]) {
        seen[b] = 1;
        tree_word[b] = tree_word[a];
        tree_word[b].push_back(g_letter(j));
        lift[b] = lift[a].compose(element(gen_indices_[j]));
        queue.push_back(b);
      } else {
        skipped.emplace_back(a, j);
      }
    }
  }
  for (auto [a, j] : skipped) {
    std::size_t b = find_in(points_, points_[a] * points_[gen_indices_[j]]);
    AffineElement val =
        lift[a].compose(element(gen_indices_[j])).compose(lift[b].inverse());
    if (!val.point.is_identity())
      throw std::logic_error("cycle relator has a nontrivial point part");
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_integral(val.shift[i]))
        throw std::logic_error("cycle relator has a fractional translation");
      v[i] = val.shift[i].get_num();
    }
    Word w = tree_word[a];
    w.push_back(g_letter(j));
    Word back = inverse_word(tree_word[b]);
    w.insert(w.end(), back.begin(), back.end());
    Word corr = inverse_word(translation_word(v));
    w.insert(w.end(), corr.begin(), corr.end());
    pres.relators.push_back(std::move(w));
  }
  return pres;
}

AbelianInvariants CrystalGroup::abelianize(std::size_t budget) const {
  return abelianization(presentation(budget));
}

IntVec CrystalGroup::transfer_of_translation(const IntVec& z) const {
  if (z.size() != dim_)
    throw std::invalid_argument("translation dimension mismatch");
  IntVec out(dim_, Int(0));
  for (const auto& a : points_) {
    IntVec az = a * z;
    for (std::size_t i = 0; i < dim_; ++i) out[i] += az[i];
  }
  return out;
}

IntVec CrystalGroup::transfer(const AffineElement& x) const {
  if (!contains(x)) throw std::invalid_argument("element is not in the group");
  IntVec out(dim_, Int(0));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    std::size_t j = find_in(points_, x.point * points_[i]);
    AffineElement rel = element(j).inverse().compose(x).compose(element(i));
    if (!rel.point.is_identity())
      throw std::logic_error("coset representative bookkeeping failed");
    for (std::size_t c = 0; c < dim_; ++c) {
      if (!is_integral(rel.shift[c]))
        throw std::logic_error("transfer left the translation subgroup");
      out[c] += rel.shift[c].get_num();
    }
  }
  return out;
}

CrystalGroup direct_product(const CrystalGroup& a, const CrystalGroup& b) {
  std::vector<IntegerMatrix> pts;
  std::vector<RatVec> sh;
  pts.reserve(a.point_order() * b.point_order());
  for (std::size_t i = 0; i < a.point_order(); ++i)
    for (std::size_t j = 0; j < b.point_order(); ++j) {
      pts.push_back(
          block_diag(a.point_elements()[i], b.point_elements()[j]));
      RatVec s = a.shift_of(i);
      const RatVec& t = b.shift_of(j);
      s.insert(s.end(), t.begin(), t.end());
      sh.push_back(std::move(s));
    }
  return CrystalGroup(std::move(pts), std::move(sh));
}

bool check_crystallographic(const std::vector<IntegerMatrix>& points,
                            const std::vector<RatVec>& shifts) {
  try {
    CrystalGroup g(points, shifts);
    std::size_t m = g.point_order();
    // the constructor verifies the cocycle law against generators; recheck
    // it on pairs directly, all of them for small groups
    std::size_t step = m <= 48 ? 1 : m / 48 + 1;
    for (std::size_t i = 0; i < m; i += step)
      for (std::size_t j = 0; j < m; ++j)
        if (!g.contains(g.element(i).compose(g.element(j)))) return false;
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

CrystalGroup conjugate_group(const CrystalGroup& g, const IntegerMatrix& u) {
  IntegerMatrix ui = u.inverse_unimodular();
  std::vector<IntegerMatrix> pts;
  std::vector<RatVec> sh;
  for (std::size_t i = 0; i < g.point_order(); ++i) {
    pts.push_back(u * g.point_elements()[i] * ui);
    sh.push_back(mat_apply(u, g.shift_of(i)));
  }
  return CrystalGroup(std::move(pts), std::move(sh));
}

CrystalGroup lattice_semidirect(const RootDatum& rd, const Lattice& l) {
  if (l.ambient_rank() != rd.rank() || l.rank() != rd.rank())
    throw std::invalid_argument("lattice rank disagrees with the datum");
  std::vector<IntegerMatrix> gens;
  for (const auto& m : rd.weyl_gens)
    gens.push_back(conjugate_into_basis(l.basis(), m, "lattice_semidirect"));
  return CrystalGroup::semidirect(rd.rank(), gens);
}

AffineCoxeterModel build_affine_coxeter(SeriesKind kind, std::size_t rank) {
  if (kind == SeriesKind::I1 && rank != 1)
    throw std::invalid_argument("the infinite dihedral type has rank 1");
  affine_graph(kind, rank);  // reject ranks with no affine diagram up front
  SeriesKind datum_kind = kind == SeriesKind::I1 ? SeriesKind::A : kind;
  RootDatum rd = build_root_datum(datum_kind, rank);
  std::size_t n = rd.rank();
  const IntegerMatrix& tb = rd.qv.basis();

  std::vector<AffineElement> gens;
  IntVec v = affine_translation(rd);
  IntegerMatrix a0 =
      conjugate_into_basis(tb, reflection_matrix(rd, v), "affine node");
  auto c = rd.qv.coordinates(v);
  if (!c)
    throw std::logic_error("affine translation escapes the translation lattice");
  gens.push_back({std::move(a0), to_rat(*c)});
  for (const auto& m : rd.weyl_gens)
    gens.push_back(
        {conjugate_into_basis(tb, m, "affine Coxeter build"), RatVec(n, Rat(0))});

  CrystalGroup group = CrystalGroup::from_generators(gens);

  // read the diagram back off the generators and insist it classifies as the
  // requested affine type
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i)
    names.push_back("v" + std::to_string(i));
  CoxeterGraph built(names);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (affine_order_capped(gens[i], 2) != 2)
      throw std::logic_error("generator is not an involution");
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      std::size_t m = affine_order_capped(gens[i].compose(gens[j]), 6);
      if (m == 1) throw std::logic_error("coincident generators");
      if (m == 0)
        built.add_edge(names[i], names[j], CoxLabel::unbounded());
      else if (m >= 3)
        built.add_edge(names[i], names[j],
                       CoxLabel::order(static_cast<unsigned>(m)));
    }
  ComponentType t = classify_component(built);
  if (!(t.family == GraphFamily::affine && t.kind == kind && t.rank == rank))
    throw std::logic_error(
        "constructed group does not classify as the requested affine type: " +
        t.to_string());

  CoxeterGraph tmpl = affine_graph(kind, rank);
  auto match = pinned_graph_match(built, tmpl);
  if (!match)
    throw std::logic_error("no diagram match fixing the affine node");
  std::vector<AffineElement> ordered(gens.size(), AffineElement::identity(n));
  for (std::size_t i = 0; i < gens.size(); ++i) ordered[(*match)[i]] = gens[i];

  return {std::move(group), std::move(ordered), std::move(tmpl), std::move(rd)};
}

bool qclass_equivalent(const std::vector<IntegerMatrix>& a,
                       const std::vector<IntegerMatrix>& b,
                       std::size_t budget) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("empty point group");
  if (a.size() != b.size()) return false;
  std::vector<IntegerMatrix> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  (void)greedy_generators(sb);  // closure check
  if (character_data(sa) != character_data(sb)) return false;

  std::size_t m = sa.size();
  std::vector<std::pair<Int, Int>> ka(m), kb(m);
  for (std::size_t i = 0; i < m; ++i) {
    ka[i] = {matrix_order(sa[i], m + 1), trace_of(sa[i])};
    kb[i] = {matrix_order(sb[i], m + 1), trace_of(sb[i])};
  }
  std::vector<std::size_t> gens = greedy_generators(sa);
  std::size_t steps = 0;

  // partial isomorphism as index maps, grown multiplicatively from the
  // generator images; traces must agree element by element
  struct State {
    std::vector<std::size_t> a2b, b2a;
    std::vector<std::size_t> known;  // a-indices with images, in closure order
  };
  std::size_t ida = find_in(sa, IntegerMatrix::identity(sa[0].rows()));
  std::size_t idb = find_in(sb, IntegerMatrix::identity(sb[0].rows()));

  auto close = [&](State& st, std::size_t from) -> bool {
    // multiply known elements by mapped generators until stable
    for (std::size_t qi = from; qi < st.known.size(); ++qi) {
      std::size_t x = st.known[qi];
      for (std::size_t g : gens) {
        if (st.a2b[g] == kNpos) continue;
        std::size_t xg = find_in(sa, sa[x] * sa[g]);
        std::size_t img = find_in(sb, sb[st.a2b[x]] * sb[st.a2b[g]]);
        if (img == kNpos) return false;
        if (st.a2b[xg] == kNpos) {
          if (st.b2a[img] != kNpos) return false;
          if (ka[xg] != kb[img]) return false;
          st.a2b[xg] = img;
          st.b2a[img] = xg;
          st.known.push_back(xg);
        } else if (st.a2b[xg] != img) {
          return false;
        }
      }
    }
    return true;
  };

  auto search = [&](auto&& self, const State& st, std::size_t gi) -> bool {
    if (gi == gens.size()) return st.known.size() == m;
    std::size_t g = gens[gi];
    for (std::size_t cand = 0; cand < m; ++cand) {
      if (kb[cand] != ka[g]) continue;
      State next = st;
      if (next.b2a[cand] != kNpos) continue;
      next.a2b[g] = cand;
      next.b2a[cand] = g;
      std::size_t from = next.known.size();
      next.known.push_back(g);
      if (++steps > budget)
        throw BudgetExceeded("isomorphism search exceeds its budget");
      if (!close(next, 0)) continue;
      (void)from;
      if (self(self, next, gi + 1)) return true;
    }
    return false;
  };

  State init;
  init.a2b.assign(m, kNpos);
  init.b2a.assign(m, kNpos);
  init.a2b[ida] = idb;
  init.b2a[idb] = ida;
  init.known.push_back(ida);
  return search(search, init, 0);
}

}  // namespace alcove
