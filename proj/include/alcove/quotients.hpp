#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "alcove/abelian.hpp"
#include "alcove/crystal_group.hpp"
#include "alcove/finite_group.hpp"
#include "alcove/int_matrix.hpp"
#include "alcove/lattice.hpp"
#include "alcove/presentation.hpp"

namespace alcove {

/// Homomorphism out of a finite presentation, recorded as generator images.
struct Hom {
  std::vector<unsigned> images;

  bool operator==(const Hom& o) const { return images == o.images; }
  bool operator!=(const Hom& o) const { return !(*this == o); }
};

/// Finite quotient of a crystallographic group by a point-stable
/// finite-index sublattice of its translations. Keeps enough bookkeeping to
/// map group elements to quotient indices, which is how explicit quotient
/// homomorphisms get their generator images.
struct LatticeQuotient {
  CrystalGroup source;
  Lattice sublattice;
  FiniteGroup group;

  unsigned index_of(const AffineElement& x) const;

 private:
  friend LatticeQuotient lattice_quotient(const CrystalGroup&, const Lattice&,
                                          std::size_t);
  LatticeQuotient(CrystalGroup g, Lattice l, FiniteGroup q,
                  IntegerMatrix coset_u, std::vector<Int> coset_diag,
                  std::vector<unsigned> relabel);

  IntegerMatrix coset_u_;        // SNF row transform of the sublattice basis
  std::vector<Int> coset_diag_;  // invariant factors of Z^n / L, all >= 1
  std::vector<unsigned> relabel_;  // raw (point, coset) id -> group index
};

/// Throws std::invalid_argument when the sublattice is not full rank inside
/// the translations or not stable under the point group, BudgetExceeded when
/// the quotient order passes `max_order`.
LatticeQuotient lattice_quotient(const CrystalGroup& g, const Lattice& l,
                                 std::size_t max_order = 1u << 12);

FiniteGroup quotient_by_sublattice(const CrystalGroup& g, const Lattice& l,
                                   std::size_t max_order = 1u << 12);

/// True iff the images satisfy every relator.
bool satisfies_relators(const FinPres& p, const FiniteGroup& g, const Hom& h);

/// satisfies_relators plus surjectivity.
bool is_epimorphism(const FinPres& p, const FiniteGroup& g, const Hom& h);

/// Every homomorphism p -> g, in lexicographic order of the image tuple.
/// Throws BudgetExceeded when the search is cut before the tree is done, so
/// a returned list is always complete.
std::vector<Hom> all_homs(const FinPres& p, const FiniteGroup& g,
                          std::size_t budget = std::size_t(1) << 28);

/// Lexicographically least surjection p ->> g, or nullopt only when the
/// exhausted tree proves there is none. Budget exhaustion throws instead of
/// returning nullopt: running out of search is not a nonexistence proof.
std::optional<Hom> epimorphism_exists(const FinPres& p, const FiniteGroup& g,
                                      std::size_t budget = std::size_t(1)
                                                           << 28);

/// Cocycles f : H -> Z^n of a finite integer matrix group, f(gh) = f(g) +
/// g f(h), as the integer kernel of the relation system on the stacked
/// values f(elements[i]) with the identity block omitted. Coboundaries are
/// the cocycles (1 - h)v; their classes form the finite group H^1.
struct CocycleData {
  std::vector<IntegerMatrix> elements;  // closure of the input, sorted
  std::vector<long> block;     // elements index -> unknown block, identity -1
  IntegerMatrix system;        // relation rows on the stacked unknowns
  std::vector<std::pair<std::size_t, std::size_t>> equation_pairs;
  // one (g, h) element-index pair per block of dim rows in `system`; the
  // row block says f(gh) - f(g) - g f(h) = 0, and inhomogeneous solvers
  // reuse the matrix with their own right-hand side per pair
  IntegerMatrix z_basis;       // columns span the cocycle lattice, saturated
  IntegerMatrix b_coords;      // coboundary generators in z_basis coordinates
  AbelianInvariants invariants;  // Z^1 / B^1
  IntegerMatrix h1_u;            // SNF row transform of b_coords
  std::vector<Int> h1_diag;      // its invariant factors, length = Z^1 rank
  std::vector<IntVec> class_reps;  // one stacked cocycle per class, zero
                                   // first; empty when class_cap was 0

  /// Value of a stacked cocycle vector on elements[i].
  IntVec value(const IntVec& cocycle, std::size_t i) const;

  /// Index of the class of a cocycle, matching the class_reps order.
  /// Throws std::logic_error when the vector is not in the cocycle lattice.
  unsigned long class_id(const IntVec& cocycle) const;
};

/// `class_cap` bounds the representative enumeration (0 skips it, and a
/// class count above the cap throws BudgetExceeded).
CocycleData cocycle_data(const std::vector<IntegerMatrix>& gens,
                         std::size_t class_cap = 1u << 12);

/// Invariants of H^1 alone.
AbelianInvariants h1(const std::vector<IntegerMatrix>& gens);

}  // namespace alcove
