#ifndef ALCOVE_ABELIAN_HPP
#define ALCOVE_ABELIAN_HPP

#include <string>
#include <vector>

#include "alcove/int_matrix.hpp"
#include "alcove/numeric.hpp"

namespace alcove {

/// Isomorphism type of a finitely generated abelian group in invariant
/// factor form: torsion d_1 | d_2 | ... (each >= 2) plus a free rank.
struct AbelianInvariants {
  std::vector<Int> torsion;
  std::size_t free_rank = 0;

  bool operator==(const AbelianInvariants& o) const {
    return torsion == o.torsion && free_rank == o.free_rank;
  }
  bool operator!=(const AbelianInvariants& o) const { return !(*this == o); }

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  /// Order of the torsion part (1 when torsion-free).
  Int torsion_order() const;
  /// "1", "Z_2 x Z_6", "Z^2", "Z_2 x Z^1", ...
  std::string to_string() const;

  /// Convenience: elementary abelian Z_p^k.
  static AbelianInvariants elementary(long p, std::size_t k);
  static AbelianInvariants free_abelian(std::size_t rank);
};

/// Invariants of coker(a) = Z^rows / (column span of a).
AbelianInvariants cokernel_invariants(const IntegerMatrix& a);

}  // namespace alcove

#endif
