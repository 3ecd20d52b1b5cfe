#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "alcove/abelian.hpp"
#include "alcove/numeric.hpp"

namespace alcove {

/// Finite group given by its multiplication table. Element 0 is the
/// identity; the constructor checks the identity and inverse laws exactly
/// and associativity in full up to order 512 (on a deterministic sample of
/// triples above that).
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<unsigned>> table,
                       std::vector<std::string> labels = {});

  std::size_t order() const { return table_.size(); }
  unsigned mul(unsigned a, unsigned b) const { return table_[a][b]; }
  unsigned inv(unsigned a) const { return inverse_[a]; }
  std::size_t element_order(unsigned a) const;

  /// Greedy generating set fixed at construction: repeatedly adjoin the
  /// smallest element outside the subgroup generated so far.
  const std::vector<unsigned>& generators() const { return generators_; }

  /// Smallest subgroup containing the seed, as a sorted element list.
  std::vector<unsigned> subgroup_closure(std::vector<unsigned> seed) const;

  bool is_abelian() const;

  /// Invariant factors of G / [G, G].
  AbelianInvariants abelianization() const;

  /// Sorted multiset of element orders.
  std::vector<std::size_t> order_profile() const;

  /// Sorted multiset of conjugacy class sizes.
  std::vector<std::size_t> class_size_profile() const;

  /// Stable text key from order, order profile, and abelianization; equal
  /// keys are a cheap prerequisite for isomorphism, not a certificate.
  std::string structure_key() const;

  /// Optional human-readable element labels (aligned with indices).
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::vector<unsigned>> table_;
  std::vector<unsigned> inverse_;
  std::vector<unsigned> generators_;
  std::vector<std::string> labels_;
};

/// Abstract isomorphism test by generator-image backtracking with order and
/// class-size pruning. Throws BudgetExceeded when the search tree is cut.
bool isomorphic_finite(const FiniteGroup& a, const FiniteGroup& b,
                       std::size_t budget = 1u << 22);

}  // namespace alcove
