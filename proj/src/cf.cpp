#include "alcove/cf.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace alcove {

namespace {

struct Ticker {
  std::size_t budget;
  std::size_t steps = 0;
  void operator()(std::size_t w = 1) {
    steps += w;
    if (steps > budget)
      throw BudgetExceeded("finite subgroup classification budget exhausted");
  }
};

/// Subgroup closure on point indices over a multiplication table.
std::vector<unsigned> close_indices(
    const std::vector<std::vector<unsigned>>& pm, unsigned e_idx,
    const std::vector<unsigned>& seed, Ticker& tick) {
  std::vector<char> in(pm.size(), 0);
  std::vector<unsigned> elems, work;
  auto add = [&](unsigned x) {
    if (!in[x]) {
      in[x] = 1;
      elems.push_back(x);
      work.push_back(x);
    }
  };
  add(e_idx);
  for (unsigned s : seed) add(s);
  while (!work.empty()) {
    unsigned x = work.back();
    work.pop_back();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      add(pm[x][elems[i]]);
      add(pm[elems[i]][x]);
    }
  }
  tick(elems.size());
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::size_t local_pos(const std::vector<unsigned>& h, unsigned global) {
  auto it = std::lower_bound(h.begin(), h.end(), global);
  if (it == h.end() || *it != global)
    throw std::logic_error("point index fell outside its subgroup");
  return (std::size_t)(it - h.begin());
}

IntVec integral_or_throw(const RatVec& v) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integral(v[i]))
      throw std::logic_error("conjugated lift translation is not integral");
    out[i] = v[i].get_num();
  }
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t k) : parent(k) {
    for (std::size_t i = 0; i < k; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// A class representative during construction: point subgroup, its greedy
/// generators (global indices), and the lift translation per local element.
struct ClassData {
  std::vector<unsigned> h;
  std::vector<unsigned> gens;
  std::vector<IntVec> yv;
};

}  // namespace

bool CFPoset::below(std::size_t a, std::size_t b) const {
  return std::binary_search(relation.begin(), relation.end(),
                            std::make_pair(a, b));
}

CFPoset finite_subgroup_classes(const CrystalGroup& g, std::size_t budget) {
  const std::size_t n = g.dim(), m = g.point_order();
  const auto& pts = g.point_elements();
  CFPoset poset;
  poset.budget = budget;
  Ticker tick{budget};

  const unsigned e_idx = (unsigned)g.index_of(IntegerMatrix::identity(n));
  std::vector<std::vector<unsigned>> pm(m, std::vector<unsigned>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      pm[i][j] = (unsigned)g.index_of(pts[i] * pts[j]);
  std::vector<unsigned> pinv(m);
  for (std::size_t i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j)
      if (pm[i][j] == e_idx) pinv[i] = j;

  auto conj_idx = [&](unsigned p, unsigned x) {
    return pm[pm[p][x]][pinv[p]];
  };
  auto conj_sub = [&](const std::vector<unsigned>& h, unsigned p) {
    std::vector<unsigned> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = conj_idx(p, h[i]);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto greedy_gens = [&](const std::vector<unsigned>& h) {
    std::vector<unsigned> gens;
    std::vector<unsigned> closed = close_indices(pm, e_idx, {}, tick);
    while (closed.size() < h.size()) {
      for (unsigned x : h)
        if (!std::binary_search(closed.begin(), closed.end(), x)) {
          gens.push_back(x);
          break;
        }
      closed = close_indices(pm, e_idx, gens, tick);
    }
    return gens;
  };

  std::vector<ClassData> found;
  try {
    // Subgroups of the point group, by closure of one extra element at a
    // time; every subgroup arises this way from a maximal chain.
    std::vector<std::vector<unsigned>> subs;
    std::set<std::vector<unsigned>> seen;
    subs.push_back(close_indices(pm, e_idx, {}, tick));
    seen.insert(subs[0]);
    for (std::size_t k = 0; k < subs.size(); ++k) {
      const auto base = subs[k];
      for (unsigned x = 0; x < m; ++x) {
        if (std::binary_search(base.begin(), base.end(), x)) continue;
        auto seed = base;
        seed.push_back(x);
        auto s = close_indices(pm, e_idx, seed, tick);
        if (seen.insert(s).second) subs.push_back(std::move(s));
      }
    }

    // One representative per P-conjugacy class, smallest member first.
    std::sort(subs.begin(), subs.end(),
              [](const std::vector<unsigned>& a,
                 const std::vector<unsigned>& b) {
                return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    std::vector<std::vector<unsigned>> reps;
    {
      std::set<std::vector<unsigned>> done;
      for (const auto& s : subs) {
        if (done.count(s)) continue;
        reps.push_back(s);
        for (unsigned p = 0; p < m; ++p) {
          tick();
          done.insert(conj_sub(s, p));
        }
      }
    }

    for (const auto& h : reps) {
      if (h.size() == 1) {
        found.push_back(ClassData{h, {}, {IntVec(n)}});
        continue;
      }
      std::vector<IntegerMatrix> mats;
      for (unsigned idx : h) mats.push_back(pts[idx]);
      tick(h.size() * h.size());
      CocycleData cd = cocycle_data(mats);
      for (std::size_t l = 0; l < h.size(); ++l)
        if (cd.elements[l] != pts[h[l]])
          throw std::logic_error("subgroup element order drifted");

      // Particular lift: the cocycle relation system with the vector-system
      // defect as right-hand side. No solution means no finite subgroup
      // has this point image.
      IntVec rhs(cd.equation_pairs.size() * n);
      for (std::size_t e = 0; e < cd.equation_pairs.size(); ++e) {
        const auto [gi, hi] = cd.equation_pairs[e];
        const unsigned gg = h[gi], hg = h[hi], pg = pm[gg][hg];
        RatVec at = pts[gg] * g.shift_of(hg);
        for (std::size_t r = 0; r < n; ++r) {
          Rat c = g.shift_of(gg)[r] + at[r] - g.shift_of(pg)[r];
          if (!is_integral(c))
            throw std::logic_error("vector system violates the cocycle law");
          rhs[e * n + r] = c.get_num();
        }
      }
      auto y0 = solve_integer(cd.system, rhs);
      if (!y0) continue;

      // Torsor of lifts modulo translation conjugation, then the normalizer
      // action glues classes that are conjugate deeper in the group.
      const std::size_t K = cd.class_reps.size();
      UnionFind uf(K);
      std::vector<unsigned> normalizer;
      for (unsigned p = 0; p < m; ++p)
        if (conj_sub(h, p) == h) normalizer.push_back(p);
      const std::size_t unknowns = y0->size();
      for (unsigned p : normalizer) {
        if (p == e_idx) continue;
        tick(K);
        for (std::size_t k = 0; k < K; ++k) {
          IntVec y(unknowns);
          for (std::size_t i = 0; i < unknowns; ++i)
            y[i] = (*y0)[i] + cd.class_reps[k][i];
          IntVec conj(unknowns);
          for (std::size_t a = 0; a < h.size(); ++a) {
            if (cd.block[a] < 0) continue;
            const unsigned glob = h[a], cg = conj_idx(p, glob);
            const std::size_t ap = local_pos(h, cg);
            IntVec py = pts[p] * cd.value(y, a);
            RatVec pt_tau = pts[p] * g.shift_of(glob);
            RatVec hp_tau = pts[cg] * g.shift_of(p);
            RatVec v(n);
            for (std::size_t r = 0; r < n; ++r)
              v[r] = pt_tau[r] - g.shift_of(cg)[r] + Rat(py[r]) +
                     g.shift_of(p)[r] - hp_tau[r];
            IntVec vi = integral_or_throw(v);
            for (std::size_t r = 0; r < n; ++r)
              conj[(std::size_t)cd.block[ap] * n + r] = vi[r];
          }
          IntVec delta(unknowns);
          for (std::size_t i = 0; i < unknowns; ++i)
            delta[i] = conj[i] - (*y0)[i];
          uf.unite(k, cd.class_id(delta));
        }
      }

      auto gens = greedy_gens(h);
      for (std::size_t k = 0; k < K; ++k) {
        if (uf.find(k) != k) continue;
        IntVec y(unknowns);
        for (std::size_t i = 0; i < unknowns; ++i)
          y[i] = (*y0)[i] + cd.class_reps[k][i];
        std::vector<IntVec> yv;
        for (std::size_t a = 0; a < h.size(); ++a) yv.push_back(cd.value(y, a));
        found.push_back(ClassData{h, gens, std::move(yv)});
      }
    }
  } catch (const BudgetExceeded&) {
    poset.complete = false;
  }

  // Assemble class records and a deterministic order.
  std::vector<ClassData> data;
  {
    struct Pending {
      FiniteSubgroupClass cls;
      ClassData data;
      std::string key;
    };
    std::vector<Pending> pending;
    for (auto& cdta : found) {
      const std::size_t k = cdta.h.size();
      const std::size_t epos = local_pos(cdta.h, e_idx);
      std::vector<unsigned> relab(k);
      {
        unsigned next = 1;
        for (std::size_t a = 0; a < k; ++a)
          relab[a] = a == epos ? 0 : next++;
      }
      std::vector<std::vector<unsigned>> table(k, std::vector<unsigned>(k));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          table[relab[a]][relab[b]] =
              relab[local_pos(cdta.h, pm[cdta.h[a]][cdta.h[b]])];
      FiniteGroup structure(std::move(table));
      std::string label = structure.structure_key();

      std::vector<AffineElement> gens;
      for (unsigned gidx : cdta.gens) {
        RatVec s = g.shift_of(gidx);
        const IntVec& y = cdta.yv[local_pos(cdta.h, gidx)];
        for (std::size_t r = 0; r < n; ++r) s[r] += Rat(y[r]);
        gens.push_back(AffineElement{pts[gidx], std::move(s)});
      }
      if (gens.empty()) gens.push_back(AffineElement::identity(n));

      std::ostringstream key;
      key << k << "|" << label << "|";
      for (unsigned i : cdta.h) key << i << ",";
      key << "|";
      for (const auto& y : cdta.yv)
        for (const auto& x : y) key << x.get_str() << ",";
      std::vector<std::size_t> pidx(cdta.h.begin(), cdta.h.end());
      pending.push_back(Pending{
          FiniteSubgroupClass{std::move(gens), std::move(pidx), k,
                              std::move(label), std::move(structure)},
          std::move(cdta), key.str()});
    }
    std::sort(pending.begin(), pending.end(),
              [](const Pending& a, const Pending& b) {
                return a.cls.order != b.cls.order ? a.cls.order < b.cls.order
                                                  : a.key < b.key;
              });
    for (auto& p : pending) {
      poset.classes.push_back(std::move(p.cls));
      data.push_back(std::move(p.data));
    }
  }

  // Order edges: class a sits below class b when some conjugate of a's
  // representative lands inside b's. The conjugator's point part runs over
  // P; its translation part is an exact integer solve, so the search is
  // complete without any window.
  try {
    const std::size_t C = data.size();
    for (std::size_t a = 0; a < C; ++a) {
      for (std::size_t b = 0; b < C; ++b) {
        if (data[a].h.size() > data[b].h.size()) continue;
        if (data[b].h.size() % data[a].h.size() != 0) continue;
        if (data[a].h.size() == 1) {
          poset.relation.emplace_back(a, b);
          continue;
        }
        bool related = false;
        for (unsigned p = 0; p < m && !related; ++p) {
          tick();
          bool inside = true;
          for (unsigned x : data[a].h)
            if (!std::binary_search(data[b].h.begin(), data[b].h.end(),
                                    conj_idx(p, x))) {
              inside = false;
              break;
            }
          if (!inside) continue;
          const auto& gens = data[a].gens;
          IntegerMatrix sys(gens.size() * n, n);
          IntVec rhs(gens.size() * n);
          for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            const unsigned al = gens[gi], ac = conj_idx(p, al);
            const IntVec& ya = data[a].yv[local_pos(data[a].h, al)];
            const IntVec& yb = data[b].yv[local_pos(data[b].h, ac)];
            IntVec pya = pts[p] * ya;
            RatVec pt_tau = pts[p] * g.shift_of(al);
            RatVec hp_tau = pts[ac] * g.shift_of(p);
            RatVec v(n);
            for (std::size_t r = 0; r < n; ++r)
              v[r] = Rat(yb[r]) - pt_tau[r] + g.shift_of(ac)[r] -
                     Rat(pya[r]) - g.shift_of(p)[r] + hp_tau[r];
            IntVec vi = integral_or_throw(v);
            for (std::size_t r = 0; r < n; ++r) {
              rhs[gi * n + r] = vi[r];
              for (std::size_t c = 0; c < n; ++c)
                sys.at(gi * n + r, c) =
                    Int(r == c ? 1 : 0) - pts[ac].at(r, c);
            }
          }
          if (solve_integer(sys, rhs)) related = true;
        }
        if (related) poset.relation.emplace_back(a, b);
      }
    }
  } catch (const BudgetExceeded&) {
    poset.complete = false;
  }
  return poset;
}

namespace {

struct PosetMatch {
  const CFPoset& a;
  const CFPoset& b;
  const std::vector<std::vector<char>>& ok;
  std::vector<long> map;
  std::vector<char> used;

  bool dfs(std::size_t i) {
    if (i == a.classes.size()) return true;
    for (std::size_t j = 0; j < b.classes.size(); ++j) {
      if (used[j] || !ok[i][j]) continue;
      bool consistent = true;
      for (std::size_t k = 0; k < i && consistent; ++k) {
        const std::size_t fk = (std::size_t)map[k];
        consistent = a.below(i, k) == b.below(j, fk) &&
                     a.below(k, i) == b.below(fk, j);
      }
      if (!consistent) continue;
      map[i] = (long)j;
      used[j] = 1;
      if (dfs(i + 1)) return true;
      used[j] = 0;
      map[i] = -1;
    }
    return false;
  }
};

}  // namespace

bool cf_equal(const CFPoset& a, const CFPoset& b, std::size_t budget) {
  if (!a.complete || !b.complete)
    throw BudgetExceeded(
        "poset comparison inconclusive: an input poset is incomplete");
  const std::size_t c = a.classes.size();
  if (b.classes.size() != c) return false;
  auto labels = [](const CFPoset& p) {
    std::vector<std::string> v;
    for (const auto& cl : p.classes) v.push_back(cl.label);
    std::sort(v.begin(), v.end());
    return v;
  };
  if (labels(a) != labels(b)) return false;

  std::vector<std::vector<char>> ok(c, std::vector<char>(c, 0));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (a.classes[i].label == b.classes[j].label &&
          a.classes[i].order == b.classes[j].order)
        ok[i][j] = isomorphic_finite(a.classes[i].structure,
                                     b.classes[j].structure, budget);
  PosetMatch match{a, b, ok, std::vector<long>(c, -1),
                   std::vector<char>(c, 0)};
  return match.dfs(0);
}

}  // namespace alcove
