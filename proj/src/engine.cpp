#include "alcove/engine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "alcove/cf.hpp"
#include "alcove/presentation.hpp"
#include "alcove/quotients.hpp"

namespace alcove {

namespace {

std::string bool_name(bool b) { return b ? "true" : "false"; }

std::string char_digest(const std::vector<CharTriple>& v) {
  std::string s;
  for (const auto& t : v) {
    if (!s.empty()) s += " ";
    s += "(" + t.order.get_str() + "," + t.trace.get_str() + ")";
    if (t.count > 1) s += "^" + std::to_string(t.count);
  }
  return s.empty() ? "trivial" : s;
}

std::string cf_digest(const CFPoset& cf) {
  std::map<std::size_t, std::size_t> orders;
  for (const auto& c : cf.classes) ++orders[c.order];
  std::string s = std::to_string(cf.classes.size()) + " classes, " +
                  std::to_string(cf.relation.size()) + " comparabilities; orders ";
  bool first = true;
  for (const auto& [o, k] : orders) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(o);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

std::string matrix_key(const IntegerMatrix& m) {
  std::string k;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) k += m.at(i, j).get_str() + ",";
  return k;
}

bool same_matrix_set(const std::vector<IntegerMatrix>& a,
                     const std::vector<IntegerMatrix>& b) {
  if (a.size() != b.size()) return false;
  std::set<std::string> ka, kb;
  for (const auto& m : a) ka.insert(matrix_key(m));
  for (const auto& m : b) kb.insert(matrix_key(m));
  return ka == kb;
}

bool same_graph(const std::optional<CoxeterGraph>& a,
                const std::optional<CoxeterGraph>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || graph_to_json(*a) == graph_to_json(*b);
}

/// Action of ambient matrices on a stable lattice, written in the lattice's
/// own basis.
std::vector<IntegerMatrix> action_on(const Lattice& l,
                                     const std::vector<IntegerMatrix>& gens) {
  const IntegerMatrix& basis = l.basis();
  const std::size_t n = basis.cols();
  std::vector<IntegerMatrix> out;
  for (const auto& a : gens) {
    IntegerMatrix ab = a * basis;
    IntegerMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      IntVec col(ab.rows());
      for (std::size_t i = 0; i < ab.rows(); ++i) col[i] = ab.at(i, j);
      auto co = l.coordinates(col);
      if (!co) throw std::invalid_argument("lattice is not stable under the action");
      for (std::size_t i = 0; i < n; ++i) m.at(i, j) = (*co)[i];
    }
    out.push_back(std::move(m));
  }
  return out;
}

/// Abelianization of (L x| W)/K from the split presentation. The relation
/// matrix has one row per lattice basis vector and per Coxeter generator;
/// its columns are the translation conjugation relators (A - 1 per
/// generator), the abelianized Coxeter relators of W, and the killed
/// sublattice K written in L coordinates. Generator images span the
/// coinvariants since (uv - 1)x = (u - 1)(vx) + (v - 1)x keeps everything
/// inside the lattice block, so this presents the full abelianization.
AbelianInvariants split_quotient_ab(const std::vector<IntegerMatrix>& action,
                                    const FinPres& wpres,
                                    const IntegerMatrix* killed) {
  const std::size_t n = action.empty() ? 0 : action[0].rows();
  const std::size_t k = wpres.generators.size();
  IntegerMatrix wexp = exponent_matrix(wpres);
  const std::size_t cols =
      action.size() * n + wexp.cols() + (killed ? killed->cols() : 0);
  IntegerMatrix m(n + k, cols);
  std::size_t c = 0;
  for (const auto& a : action)
    for (std::size_t j = 0; j < n; ++j, ++c)
      for (std::size_t i = 0; i < n; ++i)
        m.at(i, c) = a.at(i, j) - Int(i == j ? 1 : 0);
  for (std::size_t j = 0; j < wexp.cols(); ++j, ++c)
    for (std::size_t i = 0; i < k; ++i) m.at(n + i, c) = wexp.at(i, j);
  if (killed)
    for (std::size_t j = 0; j < killed->cols(); ++j, ++c)
      for (std::size_t i = 0; i < n; ++i) m.at(i, c) = killed->at(i, j);
  return cokernel_invariants(m);
}

}  // namespace

AbelianInvariants lattice_semidirect_abelianization(const RootDatum& rd,
                                                    const Lattice& l) {
  // B and C share one Coxeter graph; only the lattice data differ
  SeriesKind kind =
      rd.type.kind == SeriesKind::C ? SeriesKind::B : rd.type.kind;
  auto wpres = coxeter_presentation(finite_graph(kind, rd.type.rank));
  return split_quotient_ab(action_on(l, rd.weyl_gens), wpres, nullptr);
}

std::string claim_status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::inconclusive: return "inconclusive";
  }
  throw std::logic_error("unknown claim status");
}

DistinguishReport distinguish(const GroupInput& a, const GroupInput& b,
                              std::size_t budget) {
  const CrystalGroup& g = a.group;
  const CrystalGroup& h = b.group;
  DistinguishReport r;
  r.left_name = a.name.empty() ? "left" : a.name;
  r.right_name = b.name.empty() ? "right" : b.name;
  r.budget = budget;
  const bool same_group = (g == h);

  auto decide = [&](const std::string& field, std::string lv, std::string rv,
                    bool equal, bool conclusive) {
    if (conclusive && !equal && !r.distinguished) {
      r.distinguished = true;
      r.field = field;
      r.left_value = lv;
      r.right_value = rv;
    }
    r.transcript.push_back(
        {field, std::move(lv), std::move(rv), equal, conclusive});
    return r.distinguished;
  };

  if (decide("dimension", std::to_string(g.dim()), std::to_string(h.dim()),
             g.dim() == h.dim(), true))
    return r;
  if (decide("point_group_order", std::to_string(g.point_order()),
             std::to_string(h.point_order()),
             g.point_order() == h.point_order(), true))
    return r;

  {
    auto ca = g.point_character();
    auto cb = h.point_character();
    bool chars_equal = (ca == cb);
    bool equal = chars_equal;
    bool conclusive = true;
    if (chars_equal && !same_group) {
      try {
        equal = qclass_equivalent(g.point_elements(), h.point_elements(), budget);
      } catch (const BudgetExceeded&) {
        conclusive = false;
      }
    }
    if (decide("q_class", char_digest(ca), char_digest(cb), equal, conclusive))
      return r;
  }

  if (decide("abelianization", g.abelianize().to_string(),
             h.abelianize().to_string(), g.abelianize() == h.abelianize(), true))
    return r;
  if (decide("centre_rank", std::to_string(g.centre_rank()),
             std::to_string(h.centre_rank()),
             g.centre_rank() == h.centre_rank(), true))
    return r;
  if (decide("torsion_free", bool_name(g.is_torsion_free()),
             bool_name(h.is_torsion_free()),
             g.is_torsion_free() == h.is_torsion_free(), true))
    return r;
  if (decide("symmorphic", bool_name(g.is_symmorphic()),
             bool_name(h.is_symmorphic()),
             g.is_symmorphic() == h.is_symmorphic(), true))
    return r;
  if (decide("just_infinite", bool_name(g.is_just_infinite()),
             bool_name(h.is_just_infinite()),
             g.is_just_infinite() == h.is_just_infinite(), true))
    return r;

  // dimension and point order already agree, so the size policy treats both
  // sides the same way
  if (g.dim() > kCfMaxDimension || g.point_order() > kCfMaxPointOrder) {
    r.transcript.push_back({"cf_poset", "skipped (size policy)",
                            "skipped (size policy)", true, false});
  } else {
    CFPoset cg = finite_subgroup_classes(g, budget);
    CFPoset ch = same_group ? cg : finite_subgroup_classes(h, budget);
    if (!cg.complete || !ch.complete) {
      r.transcript.push_back({"cf_poset", "incomplete at budget",
                              "incomplete at budget", true, false});
    } else {
      bool equal = true;
      bool conclusive = true;
      try {
        equal = cf_equal(cg, ch, budget);
      } catch (const BudgetExceeded&) {
        conclusive = false;
      }
      if (decide("cf_poset", cf_digest(cg), cf_digest(ch), equal, conclusive))
        return r;
    }
  }

  if (in_bc_qclass(g) && in_bc_qclass(h)) {
    std::vector<QuotientTest> tg = run_bc_battery(a, budget);
    std::vector<QuotientTest> th = (same_group && same_graph(a.graph, b.graph))
                                       ? tg
                                       : run_bc_battery(b, budget);
    for (std::size_t i = 0; i < tg.size() && i < th.size(); ++i) {
      bool conclusive = tg[i].outcome != TestOutcome::inconclusive &&
                        th[i].outcome != TestOutcome::inconclusive;
      if (decide("quotient_test: " + tg[i].target, outcome_name(tg[i].outcome),
                 outcome_name(th[i].outcome), tg[i].outcome == th[i].outcome,
                 conclusive))
        return r;
    }
  } else {
    r.transcript.push_back({"quotient_tests",
                            "skipped (point class outside the chain family)",
                            "skipped (point class outside the chain family)",
                            true, true});
  }
  return r;
}

DistinguishReport distinguish(const CrystalGroup& a, const CrystalGroup& b,
                              std::size_t budget) {
  return distinguish(GroupInput{a, std::nullopt, {}},
                     GroupInput{b, std::nullopt, {}}, budget);
}

FeitScan feit_scan(SeriesKind kind, std::size_t rank) {
  bool admissible = (kind == SeriesKind::A && rank >= 2 && rank <= 6) ||
                    (kind == SeriesKind::D && rank >= 4 && rank <= 6) ||
                    (kind == SeriesKind::E6 && rank == 6) ||
                    (kind == SeriesKind::E7 && rank == 7) ||
                    (kind == SeriesKind::E8 && rank == 8);
  if (!admissible)
    throw std::invalid_argument(
        "the scan covers A ranks 2..6 (rank 1 is the degenerate dihedral "
        "case), D ranks 4..6 and E ranks 6..8");

  auto rd = build_root_datum(kind, rank);
  auto wpres = coxeter_presentation(finite_graph(kind, rank));
  Int full_index = fundamental_quotient(rd).torsion_order();

  FeitScan scan;
  scan.kind = kind;
  scan.rank = rank;
  std::size_t intermediate = 0;
  for (const auto& l : intermediate_invariant_lattices(rd)) {
    auto q_in_l = l.coordinates(rd.q);
    if (!q_in_l) throw std::logic_error("root lattice escaped an invariant lattice");
    Int index = q_in_l->det();
    if (index < 0) index = -index;
    FeitRow row;
    row.index_over_root = index;
    row.is_root_lattice = (index == 1);
    if (index == 1)
      row.label = "Q";
    else if (index == full_index)
      row.label = "P";
    else
      row.label = "M" + std::to_string(++intermediate);
    row.abelianization = split_quotient_ab(action_on(l, rd.weyl_gens), wpres, nullptr);
    scan.rows.push_back(std::move(row));
  }

  std::size_t z2_rows = 0;
  bool z2_is_root = false;
  for (const auto& row : scan.rows)
    if (row.abelianization == AbelianInvariants::elementary(2, 1)) {
      ++z2_rows;
      z2_is_root = row.is_root_lattice;
    }
  if (z2_rows != 1 || !z2_is_root)
    throw std::logic_error(
        "the root lattice law failed: expected exactly one Z_2 row, at the "
        "root lattice");
  return scan;
}

BcReport bc_case_report(std::size_t n, std::size_t search_budget,
                        std::size_t search_max_rank) {
  if (n < 2 || n > 6)
    throw std::invalid_argument("the chain argument runs for ranks 2 through 6");

  BcReport rep;
  rep.rank = n;
  auto add = [&](std::string claim, ClaimStatus st, std::string witness) {
    if (st == ClaimStatus::fail) ++rep.failed;
    if (st == ClaimStatus::inconclusive) ++rep.inconclusive;
    rep.claims.push_back({std::move(claim), st, std::move(witness)});
  };
  auto verdict = [](bool ok) { return ok ? ClaimStatus::pass : ClaimStatus::fail; };

  auto rb = build_root_datum(SeriesKind::B, n);
  auto rc = build_root_datum(SeriesKind::C, n);
  auto chain = bc_chain(n);
  auto wpres = coxeter_presentation(finite_graph(SeriesKind::B, n));

  {
    auto wb = enumerate_point_group(rb.weyl_gens);
    auto wc = enumerate_point_group(rc.weyl_gens);
    bool same = same_matrix_set(wb, wc);
    add("the B and C Weyl groups coincide as matrix groups", verdict(same),
        same ? "common order " + std::to_string(wb.size())
             : "orders " + std::to_string(wb.size()) + " and " +
                   std::to_string(wc.size()));
  }

  for (std::size_t i = 0; i + 1 < chain.lattices.size(); ++i) {
    bool two = chain.steps[i] == AbelianInvariants::elementary(2, 1);
    add("chain step L" + std::to_string(i + 2) + "/L" + std::to_string(i + 1) +
            " has index 2",
        verdict(two), chain.steps[i].to_string());
  }

  {
    auto co = chain.lattices[2].coordinates(chain.lattices[0]);
    if (!co) throw std::logic_error("chain lattices stopped nesting");
    auto q31 = cokernel_invariants(*co);
    AbelianInvariants expected;
    if (n % 2 == 1)
      expected.torsion = {Int(4)};
    else
      expected = AbelianInvariants::elementary(2, 2);
    add(std::string("L3/L1 is ") + (n % 2 == 1 ? "Z_4" : "Z_2 x Z_2"),
        verdict(q31 == expected), q31.to_string());
  }

  auto ab1 = split_quotient_ab(action_on(chain.lattices[0], rb.weyl_gens), wpres,
                               nullptr);
  auto ab2 = split_quotient_ab(action_on(chain.lattices[1], rb.weyl_gens), wpres,
                               nullptr);
  if (n == 2) {
    // degenerate rank: the two chain groups are isomorphic and the B/C
    // separation first appears at rank 3
    bool ok = ab1 == AbelianInvariants::elementary(2, 3) &&
              ab2 == AbelianInvariants::elementary(2, 3) &&
              build_affine_coxeter(SeriesKind::C, 2).group.abelianize() == ab1;
    add("at rank 2 both chain groups abelianize to Z_2^3 (the degenerate case)",
        verdict(ok), ab1.to_string() + " and " + ab2.to_string());
  } else {
    bool ok1 = ab1 == AbelianInvariants::elementary(2, 2);
    std::string w1 = ab1.to_string();
    if (n <= 4) {
      bool cross = build_affine_coxeter(SeriesKind::B, n).group.abelianize() == ab1;
      ok1 = ok1 && cross;
      w1 += cross ? ", matches the affine model" : ", affine model disagrees";
    }
    add("L1 x| W abelianizes to Z_2^2", verdict(ok1), w1);

    bool ok2 = ab2 == AbelianInvariants::elementary(2, 3);
    std::string w2 = ab2.to_string();
    if (n <= 4) {
      bool cross = build_affine_coxeter(SeriesKind::C, n).group.abelianize() == ab2;
      ok2 = ok2 && cross;
      w2 += cross ? ", matches the affine model" : ", affine model disagrees";
    }
    add("L2 x| W abelianizes to Z_2^3", verdict(ok2), w2);
  }

  {
    auto killed = chain.lattices[1].coordinates(chain.lattices[0]);
    if (!killed) throw std::logic_error("chain lattices stopped nesting");
    auto abq = split_quotient_ab(action_on(chain.lattices[1], rb.weyl_gens),
                                 wpres, &*killed);
    std::size_t evens = abq.free_rank;
    for (const auto& t : abq.torsion)
      if (t % 2 == 0) ++evens;
    add("(L2 x| W)/L1 surjects onto Z_2^3", verdict(evens >= 3), abq.to_string());
  }

  if (n <= search_max_rank) {
    auto targets = bc_battery_targets(n);
    const FiniteGroup& t3 = targets[2].second;
    auto search = [&](SeriesKind kind) {
      std::string name = std::string(kind == SeriesKind::B ? "B~" : "C~") +
                         std::to_string(n);
      std::string claim = "no quotient map from the affine " + name +
                          " group onto " + targets[2].first;
      try {
        auto hom = epimorphism_exists(coxeter_presentation(affine_graph(kind, n)),
                                      t3, search_budget);
        if (!hom) {
          add(claim, ClaimStatus::pass, "full search tree explored");
        } else {
          std::string images;
          for (unsigned x : hom->images)
            images += (images.empty() ? "" : " ") + std::to_string(x);
          add(claim, ClaimStatus::fail, "found generator images " + images);
        }
      } catch (const BudgetExceeded&) {
        add(claim, ClaimStatus::inconclusive, "search budget exhausted");
      }
    };
    if (n >= 3) {
      search(SeriesKind::B);
      search(SeriesKind::C);
    } else {
      // rank 2 is degenerate: the map exists, which is exactly why the
      // separation argument starts at rank 3
      try {
        auto hom = epimorphism_exists(
            coxeter_presentation(affine_graph(SeriesKind::C, 2)), t3,
            search_budget);
        add("the affine C~2 group does map onto " + targets[2].first +
                " (rank 2 is degenerate)",
            verdict(hom.has_value()),
            hom ? "found a quotient map" : "full search tree explored, no map");
      } catch (const BudgetExceeded&) {
        add("the affine C~2 group does map onto " + targets[2].first +
                " (rank 2 is degenerate)",
            ClaimStatus::inconclusive, "search budget exhausted");
      }
    }

    {
      auto g3 = lattice_semidirect(rb, chain.lattices[2]);
      auto inner = chain.lattices[2].coordinates(chain.lattices[0]);
      if (!inner) throw std::logic_error("chain lattices stopped nesting");
      auto lq = lattice_quotient(g3, Lattice(n, *inner), 1u << 11);
      FinPres pres = g3.presentation();
      Hom witness;
      for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        witness.images.push_back(lq.index_of(AffineElement::translation(e)));
      }
      for (std::size_t idx : g3.point_generator_indices())
        witness.images.push_back(lq.index_of(g3.element(idx)));
      bool epi = is_epimorphism(pres, lq.group, witness);
      add("L3 x| W maps onto " + targets[2].first + " (control witness)",
          verdict(epi),
          epi ? "constructed quotient map verified surjective"
              : "constructed map failed");
    }
  } else {
    add("quotient nonexistence searches", ClaimStatus::inconclusive,
        "skipped above rank " + std::to_string(search_max_rank));
  }

  return rep;
}

ProductDecomposition decompose_product(const CoxeterGraph& g) {
  ProductDecomposition d;
  for (const auto& comp : components(g)) {
    auto type = classify_component(comp);
    if (!type.is_affine())
      throw std::invalid_argument("component containing \"" +
                                  comp.vertices().front() +
                                  "\" is not an affine type: " + type.to_string());
    auto model = build_affine_coxeter(type.kind, type.rank);
    d.factors.push_back({comp, type, std::move(model.group)});
  }
  return d;
}

std::optional<std::vector<std::size_t>> match_factors(
    const ProductDecomposition& a, const ProductDecomposition& b,
    std::size_t budget) {
  if (a.factors.size() != b.factors.size()) return std::nullopt;
  FingerprintOptions opts;
  opts.budget = budget;
  auto prints = [&](const ProductDecomposition& d) {
    std::vector<Fingerprint> out;
    for (const auto& f : d.factors)
      out.push_back(fingerprint(GroupInput{f.group, f.graph, f.type.to_string()}, opts));
    return out;
  };
  auto fa = prints(a);
  auto fb = prints(b);
  std::vector<std::size_t> sigma(fa.size());
  std::vector<bool> used(fb.size(), false);
  for (std::size_t i = 0; i < fa.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < fb.size(); ++j) {
      if (used[j] || !(fa[i] == fb[j])) continue;
      sigma[i] = j;
      used[j] = true;
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return sigma;
}

}  // namespace alcove
