#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "alcove/crystal_group.hpp"
#include "alcove/finite_group.hpp"
#include "alcove/quotients.hpp"

namespace alcove {

/// Conjugacy class of finite subgroups, carried by one representative.
struct FiniteSubgroupClass {
  std::vector<AffineElement> generators;   // of the representative subgroup
  std::vector<std::size_t> point_indices;  // its image in the point group
  std::size_t order;
  std::string label;     // abstract isomorphism label of the representative
  FiniteGroup structure;  // its multiplication table, identity first
};

/// CF(G): conjugacy classes of finite subgroups with the containment-up-to-
/// conjugacy order. `relation` holds every ordered pair (a, b) with
/// class a below class b, reflexive pairs included.
struct CFPoset {
  std::vector<FiniteSubgroupClass> classes;
  std::vector<std::pair<std::size_t, std::size_t>> relation;  // sorted
  bool complete = true;  // false when the budget cut enumeration short
  std::size_t budget = 0;

  bool below(std::size_t a, std::size_t b) const;
};

/// Classes via the lift computation: for each point subgroup up to
/// P-conjugacy, lifts to finite subgroups form (when nonempty) a torsor
/// under the cocycle classes of quotients.hpp, and normalizer conjugation
/// glues torsor classes into group conjugacy classes. Order edges come from
/// an exact conjugator solve: for each candidate point part the translation
/// part is one integer linear system, so containment needs no search window.
/// A blown budget returns the partial poset with `complete = false`.
CFPoset finite_subgroup_classes(const CrystalGroup& g,
                                std::size_t budget = 1u << 20);

/// True iff a label-matching poset isomorphism exists whose matched
/// representatives are abstractly isomorphic. Inputs must both be complete;
/// anything else is inconclusive and throws BudgetExceeded.
bool cf_equal(const CFPoset& a, const CFPoset& b,
              std::size_t budget = 1u << 22);

}  // namespace alcove
