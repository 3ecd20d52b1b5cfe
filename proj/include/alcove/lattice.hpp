#ifndef ALCOVE_LATTICE_HPP
#define ALCOVE_LATTICE_HPP

#include <optional>

#include "alcove/abelian.hpp"
#include "alcove/int_matrix.hpp"

namespace alcove {

/// Finitely generated subgroup of Z^ambient, stored as a canonical
/// column-Hermite basis (full column rank; rank may be below ambient).
class Lattice {
 public:
  Lattice() = default;
  /// Canonicalizes the given basis; throws if columns are dependent.
  Lattice(std::size_t ambient_rank, const IntegerMatrix& basis);

  /// Lattice spanned by arbitrary (possibly dependent) generators.
  static Lattice span(std::size_t ambient_rank, const IntegerMatrix& gens);
  static Lattice standard(std::size_t n);
  static Lattice zero(std::size_t n);
  /// k * Z^n.
  static Lattice scaled_standard(std::size_t n, const Int& k);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntegerMatrix& basis() const { return basis_; }

  bool contains(const IntVec& v) const;
  bool contains(const Lattice& other) const;
  /// Coordinates of v in this basis, if v lies in the lattice.
  std::optional<IntVec> coordinates(const IntVec& v) const;
  /// Columnwise coordinates of other's basis in this basis.
  std::optional<IntegerMatrix> coordinates(const Lattice& other) const;

  bool operator==(const Lattice& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Lattice& o) const { return !(*this == o); }

 private:
  std::size_t ambient_ = 0;
  IntegerMatrix basis_;  // ambient_ x rank, canonical HNF
};

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);

/// Invariants of super/sub. Throws std::invalid_argument when sub is not
/// contained in super or the ranks differ (infinite index).
AbelianInvariants quotient_invariants(const Lattice& sub, const Lattice& super);

/// Index [super : sub] for equal-rank pairs (product of invariant factors).
Int lattice_index(const Lattice& sub, const Lattice& super);

}  // namespace alcove

#endif
