#include "alcove/fingerprint.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "alcove/cf.hpp"
#include "alcove/presentation.hpp"
#include "alcove/quotients.hpp"
#include "alcove/root_datum.hpp"

namespace alcove {

std::string outcome_name(TestOutcome o) {
  switch (o) {
    case TestOutcome::exists: return "exists";
    case TestOutcome::none: return "none";
    case TestOutcome::inconclusive: return "inconclusive";
  }
  throw std::logic_error("unknown test outcome");
}

bool in_bc_qclass(const CrystalGroup& g, std::size_t budget) {
  const std::size_t n = g.dim();
  if (n < 2) return false;
  std::size_t hyperoctahedral = 1;  // 2^n n!
  for (std::size_t i = 1; i <= n; ++i) hyperoctahedral *= 2 * i;
  if (g.point_order() != hyperoctahedral) return false;
  auto rd = build_root_datum(SeriesKind::B, n);
  auto reference = enumerate_point_group(rd.weyl_gens);
  return qclass_equivalent(g.point_elements(), reference, budget);
}

std::vector<std::pair<std::string, FiniteGroup>> bc_battery_targets(std::size_t n) {
  if (n < 2) throw std::invalid_argument("chain targets need rank >= 2");
  auto rd = build_root_datum(SeriesKind::B, n);
  auto chain = bc_chain(n);
  std::vector<std::pair<std::string, FiniteGroup>> out;
  for (std::size_t j = 0; j < chain.lattices.size(); ++j) {
    auto g = lattice_semidirect(rd, chain.lattices[j]);
    auto inner = chain.lattices[j].coordinates(chain.lattices[0]);
    if (!inner) throw std::logic_error("chain lattices stopped nesting");
    // order cap: ranks 2..4 fit (larger ranks would need gigabyte tables)
    FiniteGroup q = quotient_by_sublattice(g, Lattice(n, *inner), 1u << 11);
    std::string desc = "(L" + std::to_string(j + 1) + " x| W)/L1 of order " +
                       std::to_string(q.order());
    out.emplace_back(std::move(desc), std::move(q));
  }
  return out;
}

std::vector<QuotientTest> run_bc_battery(const GroupInput& in, std::size_t budget) {
  FinPres pres =
      in.graph ? coxeter_presentation(*in.graph) : in.group.presentation();
  std::vector<QuotientTest> out;
  for (auto& [desc, target] : bc_battery_targets(in.group.dim())) {
    QuotientTest t{desc, TestOutcome::inconclusive, budget};
    try {
      t.outcome = epimorphism_exists(pres, target, budget)
                      ? TestOutcome::exists
                      : TestOutcome::none;
    } catch (const BudgetExceeded&) {
      t.outcome = TestOutcome::inconclusive;
    }
    out.push_back(std::move(t));
  }
  return out;
}

Fingerprint fingerprint(const GroupInput& in, const FingerprintOptions& opts) {
  const CrystalGroup& g = in.group;
  Fingerprint f;
  f.dimension = g.dim();
  f.abelianization = g.abelianize();
  f.centre_rank = g.centre_rank();
  if (f.centre_rank != f.abelianization.free_rank)
    throw std::logic_error(
        "centre rank disagrees with the free rank of the abelianization");
  f.torsion_free = g.is_torsion_free();
  f.symmorphic = g.is_symmorphic();
  f.just_infinite = g.is_just_infinite();
  f.point_group_order = g.point_order();
  f.point_character_data = g.point_character();

  bool want_cf = opts.force_cf || (g.dim() <= kCfMaxDimension &&
                                   g.point_order() <= kCfMaxPointOrder);
  if (want_cf) {
    CFPoset cf = finite_subgroup_classes(g, opts.budget);
    if (cf.complete) {
      f.cf_summary.computed = true;
      for (const auto& c : cf.classes)
        f.cf_summary.classes.push_back({c.order, c.label});
      // sort on coordinate-free data only, so conjugate groups summarize
      // identically
      std::sort(f.cf_summary.classes.begin(), f.cf_summary.classes.end(),
                [](const CfClassSummary& a, const CfClassSummary& b) {
                  return a.order != b.order ? a.order < b.order
                                            : a.label < b.label;
                });
      f.cf_summary.relation_count = cf.relation.size();
    }
  }

  if (in_bc_qclass(g)) {
    f.quotient_tests.attempted = true;
    try {
      f.quotient_tests.tests = run_bc_battery(in, opts.budget);
    } catch (const BudgetExceeded&) {
      f.quotient_tests.tests = {
          {"chain quotient targets (not realizable within budget)",
           TestOutcome::inconclusive, opts.budget}};
    }
  }
  return f;
}

Fingerprint fingerprint(const CrystalGroup& g, const FingerprintOptions& opts) {
  return fingerprint(GroupInput{g, std::nullopt, {}}, opts);
}

}  // namespace alcove
