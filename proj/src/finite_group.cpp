#include "alcove/finite_group.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace alcove {

namespace {

std::size_t table_element_order(const std::vector<std::vector<unsigned>>& t,
                                unsigned a) {
  std::size_t k = 1;
  unsigned x = a;
  while (x != 0) {
    x = t[x][a];
    ++k;
    if (k > t.size()) throw std::logic_error("element order exceeds group order");
  }
  return k;
}

/// Quotient by a normal subgroup h (sorted, containing 0): coset reps are
/// the minimal elements, reindexed so the identity coset is 0.
std::vector<std::vector<unsigned>> quotient_table(
    const std::vector<std::vector<unsigned>>& t,
    const std::vector<unsigned>& h) {
  const std::size_t n = t.size();
  std::vector<unsigned> rep(n);
  for (std::size_t x = 0; x < n; ++x) {
    unsigned best = t[x][h[0]];
    for (unsigned s : h) best = std::min(best, t[x][s]);
    rep[x] = best;
  }
  std::vector<unsigned> reps;
  for (std::size_t x = 0; x < n; ++x)
    if (rep[x] == x) reps.push_back((unsigned)x);
  std::vector<unsigned> idx(n, 0);
  for (std::size_t i = 0; i < reps.size(); ++i) idx[reps[i]] = (unsigned)i;
  std::vector<std::vector<unsigned>> q(reps.size(),
                                       std::vector<unsigned>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      q[i][j] = idx[rep[t[reps[i]][reps[j]]]];
  return q;
}

/// Per-element conjugacy class sizes.
std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> cs(n, 0);
  std::vector<char> seen(n, 0);
  for (unsigned a = 0; a < n; ++a) {
    if (seen[a]) continue;
    std::vector<unsigned> orbit;
    for (unsigned p = 0; p < n; ++p) {
      unsigned c = g.mul(g.mul(g.inv(p), a), p);
      if (!seen[c]) {
        seen[c] = 1;
        orbit.push_back(c);
      }
    }
    for (unsigned e : orbit) cs[e] = orbit.size();
  }
  return cs;
}

std::string profile_string(const std::vector<std::size_t>& sorted) {
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (!first) out << ",";
    out << sorted[i] << "^" << (j - i);
    first = false;
    i = j;
  }
  return out.str();
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<unsigned>> table,
                         std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
  const std::size_t n = table_.size();
  if (n == 0) throw std::invalid_argument("empty multiplication table");
  for (const auto& row : table_) {
    if (row.size() != n)
      throw std::invalid_argument("multiplication table is not square");
    for (unsigned e : row)
      if (e >= n) throw std::invalid_argument("table entry out of range");
  }
  if (!labels_.empty() && labels_.size() != n)
    throw std::invalid_argument("label count does not match group order");

  for (unsigned b = 0; b < n; ++b)
    if (table_[0][b] != b || table_[b][0] != b)
      throw std::invalid_argument("element 0 is not a two-sided identity");

  std::vector<char> seen(n);
  for (unsigned a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (unsigned b = 0; b < n; ++b) {
      if (seen[table_[a][b]])
        throw std::invalid_argument("table row is not a permutation");
      seen[table_[a][b]] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (unsigned b = 0; b < n; ++b) {
      if (seen[table_[b][a]])
        throw std::invalid_argument("table column is not a permutation");
      seen[table_[b][a]] = 1;
    }
  }

  inverse_.assign(n, 0);
  for (unsigned a = 0; a < n; ++a) {
    unsigned b = 0;
    while (table_[a][b] != 0) ++b;
    if (table_[b][a] != 0)
      throw std::invalid_argument("left and right inverses disagree");
    inverse_[a] = b;
  }

  // Full associativity check at desk scale, a deterministic stride sample
  // above that (the construction paths here never exceed it anyway).
  const std::size_t step = n <= 512 ? 1 : n / 64 + 1;
  for (std::size_t a = 0; a < n; a += step)
    for (std::size_t b = 0; b < n; b += step)
      for (std::size_t c = 0; c < n; c += step)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw std::invalid_argument("multiplication table is not associative");

  // Greedy generating set: adjoin the smallest uncovered element.
  std::vector<unsigned> closed = subgroup_closure({});
  while (closed.size() < n) {
    std::fill(seen.begin(), seen.end(), 0);
    for (unsigned e : closed) seen[e] = 1;
    unsigned next = 0;
    while (seen[next]) ++next;
    generators_.push_back(next);
    closed = subgroup_closure(generators_);
  }
}

std::size_t FiniteGroup::element_order(unsigned a) const {
  if (a >= order()) throw std::invalid_argument("element index out of range");
  return table_element_order(table_, a);
}

std::vector<unsigned> FiniteGroup::subgroup_closure(
    std::vector<unsigned> seed) const {
  std::vector<char> in(order(), 0);
  std::vector<unsigned> elems;
  std::vector<unsigned> work;
  auto add = [&](unsigned x) {
    if (!in[x]) {
      in[x] = 1;
      elems.push_back(x);
      work.push_back(x);
    }
  };
  add(0);
  for (unsigned s : seed) {
    if (s >= order()) throw std::invalid_argument("seed element out of range");
    add(s);
  }
  while (!work.empty()) {
    unsigned x = work.back();
    work.pop_back();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      add(table_[x][elems[i]]);
      add(table_[elems[i]][x]);
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool FiniteGroup::is_abelian() const {
  for (unsigned a = 0; a < order(); ++a)
    for (unsigned b = a + 1; b < order(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

AbelianInvariants FiniteGroup::abelianization() const {
  std::vector<unsigned> comms;
  for (unsigned a = 0; a < order(); ++a)
    for (unsigned b = a + 1; b < order(); ++b) {
      unsigned c = table_[table_[inverse_[a]][inverse_[b]]][table_[a][b]];
      if (c != 0) comms.push_back(c);
    }
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  auto q = quotient_table(table_, subgroup_closure(comms));

  // Peel off the exponent: an element of maximal order in a finite abelian
  // group generates a direct summand, and the remaining factors are those
  // of the quotient. Collecting them largest first gives the divisor chain.
  std::vector<std::size_t> factors;
  while (q.size() > 1) {
    unsigned best = 1;
    std::size_t best_order = 1;
    for (unsigned a = 1; a < q.size(); ++a) {
      std::size_t o = table_element_order(q, a);
      if (o > best_order) {
        best_order = o;
        best = a;
      }
    }
    factors.push_back(best_order);
    std::vector<unsigned> cyc;
    unsigned x = 0;
    do {
      cyc.push_back(x);
      x = q[x][best];
    } while (x != 0);
    std::sort(cyc.begin(), cyc.end());
    q = quotient_table(q, cyc);
  }
  AbelianInvariants inv;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    inv.torsion.emplace_back((long)*it);
  return inv;
}

std::vector<std::size_t> FiniteGroup::order_profile() const {
  std::vector<std::size_t> p(order());
  for (unsigned a = 0; a < order(); ++a) p[a] = table_element_order(table_, a);
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<std::size_t> FiniteGroup::class_size_profile() const {
  auto cs = class_sizes(*this);
  std::vector<char> seen(order(), 0);
  std::vector<std::size_t> sizes;
  for (unsigned a = 0; a < order(); ++a) {
    if (seen[a]) continue;
    sizes.push_back(cs[a]);
    for (unsigned p = 0; p < order(); ++p)
      seen[mul(mul(inv(p), a), p)] = 1;
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::string FiniteGroup::structure_key() const {
  std::ostringstream out;
  out << "o=" << order() << "|ord=" << profile_string(order_profile())
      << "|ab=" << abelianization().to_string();
  return out.str();
}

namespace {

struct IsoSearch {
  const FiniteGroup& a;
  const FiniteGroup& b;
  std::size_t budget;
  std::size_t steps = 0;
  std::vector<unsigned> gens;
  std::vector<std::vector<unsigned>> cands;
  std::vector<unsigned> img;

  void tick() {
    if (++steps > budget)
      throw BudgetExceeded("isomorphism search budget exhausted");
  }

  /// Propagate the partial map determined by the first `depth` generator
  /// images. Sound pruning: a genuine isomorphism with this prefix would
  /// satisfy every propagated equation, so a conflict kills the branch.
  bool closure_ok(std::size_t depth, std::vector<int>* out) {
    const std::size_t n = a.order();
    std::vector<int> fa(n, -1), fb(n, -1);
    fa[0] = 0;
    fb[0] = 0;
    std::vector<unsigned> work{0};
    while (!work.empty()) {
      unsigned x = work.back();
      work.pop_back();
      for (std::size_t i = 0; i < depth; ++i) {
        tick();
        unsigned y = a.mul(x, gens[i]);
        unsigned fy = b.mul((unsigned)fa[x], img[i]);
        if (fa[y] < 0) {
          if (fb[fy] >= 0) return false;
          fa[y] = (int)fy;
          fb[fy] = (int)y;
          work.push_back(y);
        } else if (fa[y] != (int)fy) {
          return false;
        }
      }
    }
    if (out) *out = fa;
    return true;
  }

  bool dfs(std::size_t depth) {
    if (depth == gens.size()) {
      std::vector<int> fa;
      if (!closure_ok(depth, &fa)) return false;
      for (std::size_t x = 0; x < a.order(); ++x)
        if (fa[x] < 0) return false;
      for (unsigned x = 0; x < a.order(); ++x)
        for (unsigned y = 0; y < a.order(); ++y) {
          tick();
          if (fa[a.mul(x, y)] != (int)b.mul((unsigned)fa[x], (unsigned)fa[y]))
            return false;
        }
      return true;
    }
    for (unsigned c : cands[depth]) {
      tick();
      img[depth] = c;
      if (!closure_ok(depth + 1, nullptr)) continue;
      if (dfs(depth + 1)) return true;
    }
    return false;
  }
};

}  // namespace

bool isomorphic_finite(const FiniteGroup& a, const FiniteGroup& b,
                       std::size_t budget) {
  if (a.order() != b.order()) return false;
  if (a.order_profile() != b.order_profile()) return false;
  if (a.class_size_profile() != b.class_size_profile()) return false;
  if (a.abelianization() != b.abelianization()) return false;
  if (a.is_abelian() != b.is_abelian()) return false;
  // An abelian group is recovered from its abelianization, so the filters
  // above already decide that case.
  if (a.is_abelian()) return true;

  IsoSearch s{a, b, budget, 0, a.generators(), {}, {}};
  s.img.assign(s.gens.size(), 0);
  auto csa = class_sizes(a);
  auto csb = class_sizes(b);
  for (unsigned g : s.gens) {
    std::vector<unsigned> c;
    for (unsigned x = 0; x < b.order(); ++x)
      if (b.element_order(x) == a.element_order(g) && csb[x] == csa[g])
        c.push_back(x);
    if (c.empty()) return false;
    s.cands.push_back(std::move(c));
  }
  return s.dfs(0);
}

}  // namespace alcove
