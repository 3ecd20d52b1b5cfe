#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alcove/fingerprint.hpp"
#include "alcove/root_datum.hpp"

namespace alcove {

struct FieldComparison {
  std::string field;
  std::string left;
  std::string right;
  bool equal = false;
  bool conclusive = true;  // false when a budget or size policy stopped it
};

struct DistinguishReport {
  std::string left_name;
  std::string right_name;
  bool distinguished = false;
  std::string field;  // first conclusively differing field
  std::string left_value;
  std::string right_value;
  std::size_t budget = 0;
  std::vector<FieldComparison> transcript;
};

/// Compares invariants in a fixed order (dimension, point order, rational
/// class, abelianization, centre rank, torsion freeness, symmorphism, just
/// infiniteness, subgroup-class poset, chain-quotient battery) and stops at
/// the first conclusive difference. Symmetric in its arguments.
DistinguishReport distinguish(const GroupInput& a, const GroupInput& b,
                              std::size_t budget = kDefaultEngineBudget);
DistinguishReport distinguish(const CrystalGroup& a, const CrystalGroup& b,
                              std::size_t budget = kDefaultEngineBudget);

struct FeitRow {
  std::string label;
  Int index_over_root;
  AbelianInvariants abelianization;
  bool is_root_lattice = false;
};

struct FeitScan {
  SeriesKind kind;
  std::size_t rank = 0;
  std::vector<FeitRow> rows;
};

/// One row per Weyl-stable lattice between the root and weight lattices of
/// a simply laced type, with the abelianization of L x| W. Exactly one row
/// may abelianize to Z_2 and it must be the root lattice; any violation
/// throws std::logic_error.
FeitScan feit_scan(SeriesKind kind, std::size_t rank);

/// Abelianization of L x| W without enumerating W: coinvariants of the
/// lattice action glued to the abelianized Coxeter presentation. Works at
/// any Weyl group size (E-types included). The lattice must be stable
/// under rd.weyl_gens.
AbelianInvariants lattice_semidirect_abelianization(const RootDatum& rd,
                                                    const Lattice& l);

enum class ClaimStatus { pass, fail, inconclusive };

std::string claim_status_name(ClaimStatus s);

struct BcClaim {
  std::string claim;
  ClaimStatus status = ClaimStatus::inconclusive;
  std::string witness;
};

struct BcReport {
  std::size_t rank = 0;
  std::vector<BcClaim> claims;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
};

/// Replays the rank-n chain argument claim by claim: the two Weyl groups
/// coincide, both chain steps have index 2, the structure of L3/L1, the two
/// abelianizations (cross-checked against the affine models), the Z_2^3
/// quotient of the middle chain group, nonexistence of the top battery
/// quotient from either affine presentation, and a constructed witness onto
/// it from the top chain group as positive control. The searches run only
/// for n <= search_max_rank and report inconclusive when the budget stops
/// them; inconclusive is not failure.
BcReport bc_case_report(std::size_t n,
                        std::size_t search_budget = kDefaultEngineBudget,
                        std::size_t search_max_rank = 4);

struct ProductFactor {
  CoxeterGraph graph;
  ComponentType type;
  CrystalGroup group;
};

struct ProductDecomposition {
  std::vector<ProductFactor> factors;
};

/// Connected components of the graph with their affine models; throws
/// std::invalid_argument when a component is not an affine type.
ProductDecomposition decompose_product(const CoxeterGraph& g);

/// Pairing of fingerprint-equal factors, lowest available index first:
/// factor i of a is matched with factor sigma[i] of b. Nullopt when no such
/// pairing exists.
std::optional<std::vector<std::size_t>> match_factors(
    const ProductDecomposition& a, const ProductDecomposition& b,
    std::size_t budget = kDefaultEngineBudget);

}  // namespace alcove
