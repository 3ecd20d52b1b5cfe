#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alcove/abelian.hpp"
#include "alcove/crystal_group.hpp"
#include "alcove/finite_group.hpp"

namespace alcove {

inline constexpr std::size_t kDefaultEngineBudget = std::size_t(1) << 27;

/// Size cut for the finite-subgroup classification inside a fingerprint:
/// computed automatically up to this dimension and point order, skipped
/// above unless forced.
inline constexpr std::size_t kCfMaxDimension = 3;
inline constexpr std::size_t kCfMaxPointOrder = 100;

/// A group to fingerprint, together with its Coxeter graph when one is
/// known. The graph supplies a short involution presentation for the
/// quotient searches; without it they fall back on the rewritten
/// presentation, where nonexistence proofs usually exhaust the budget
/// instead of finishing.
struct GroupInput {
  CrystalGroup group;
  std::optional<CoxeterGraph> graph;
  std::string name;
};

struct CfClassSummary {
  std::size_t order = 0;
  std::string label;
  friend bool operator==(const CfClassSummary&, const CfClassSummary&) = default;
};

/// Coordinate-free shadow of the subgroup-class poset: the multiset of
/// (order, structure label) pairs plus the comparability count.
struct CfSummary {
  bool computed = false;
  std::vector<CfClassSummary> classes;
  std::size_t relation_count = 0;
  friend bool operator==(const CfSummary&, const CfSummary&) = default;
};

enum class TestOutcome { exists, none, inconclusive };

std::string outcome_name(TestOutcome o);

struct QuotientTest {
  std::string target;
  TestOutcome outcome = TestOutcome::inconclusive;
  std::size_t budget = 0;
  friend bool operator==(const QuotientTest&, const QuotientTest&) = default;
};

struct QuotientTests {
  bool attempted = false;  // the point group matched the B/C chain class
  std::vector<QuotientTest> tests;
  friend bool operator==(const QuotientTests&, const QuotientTests&) = default;
};

struct Fingerprint {
  std::size_t dimension = 0;
  AbelianInvariants abelianization;
  std::size_t centre_rank = 0;
  bool torsion_free = false;
  bool symmorphic = false;
  bool just_infinite = false;
  std::size_t point_group_order = 0;
  std::vector<CharTriple> point_character_data;
  CfSummary cf_summary;
  QuotientTests quotient_tests;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct FingerprintOptions {
  std::size_t budget = kDefaultEngineBudget;
  bool force_cf = false;  // classify subgroups even past the size cut
};

Fingerprint fingerprint(const GroupInput& in, const FingerprintOptions& opts = {});
Fingerprint fingerprint(const CrystalGroup& g, const FingerprintOptions& opts = {});

/// Whether the point group lies in the rational class of the rank-n
/// hyperoctahedral Weyl group; this is what arms the chain-quotient battery.
bool in_bc_qclass(const CrystalGroup& g, std::size_t budget = 1u << 22);

/// The three battery targets (L_j x| W)/L_1 at rank n with short
/// descriptions.
std::vector<std::pair<std::string, FiniteGroup>> bc_battery_targets(std::size_t n);

/// Epimorphism existence from the group onto each battery target.
std::vector<QuotientTest> run_bc_battery(const GroupInput& in, std::size_t budget);

}  // namespace alcove
