#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "alcove/abelian.hpp"
#include "alcove/coxeter_graph.hpp"
#include "alcove/int_matrix.hpp"
#include "alcove/lattice.hpp"
#include "alcove/numeric.hpp"
#include "alcove/presentation.hpp"
#include "alcove/root_datum.hpp"

namespace alcove {

/// Rigid motion in lattice coordinates: x -> point * x + shift.
struct AffineElement {
  IntegerMatrix point;
  RatVec shift;

  static AffineElement identity(std::size_t n);
  static AffineElement translation(const IntVec& z);

  std::size_t dim() const { return point.rows(); }

  /// a.compose(b) acts as a after b: (A,s)(B,t) = (AB, s + A t).
  AffineElement compose(const AffineElement& o) const;
  AffineElement inverse() const;
  RatVec apply(const RatVec& x) const;

  bool operator==(const AffineElement& o) const {
    return point == o.point && shift == o.shift;
  }
  bool operator!=(const AffineElement& o) const { return !(*this == o); }
};

/// Reduce every entry mod 1 into [0,1).
RatVec reduce_mod_lattice(const RatVec& v);

/// Close a set of integer matrices under multiplication. Result is sorted
/// and contains the identity. Throws BudgetExceeded when the closure grows
/// past `budget` elements, std::invalid_argument on empty or non-square or
/// non-invertible input.
std::vector<IntegerMatrix> enumerate_point_group(
    const std::vector<IntegerMatrix>& gens, std::size_t budget = 1u << 20);

/// (element order, trace, multiplicity), sorted. A Q-class invariant of a
/// finite matrix group, used as a cheap separating test before attempting
/// trace-preserving isomorphisms.
struct CharTriple {
  Int order;
  Int trace;
  std::size_t count = 0;

  bool operator==(const CharTriple& o) const {
    return order == o.order && trace == o.trace && count == o.count;
  }
  auto tie() const { return std::tie(order, trace, count); }
  bool operator<(const CharTriple& o) const { return tie() < o.tie(); }
};

std::vector<CharTriple> character_data(const std::vector<IntegerMatrix>& group);

/// Multiplicative order of a finite-order integer matrix. Throws
/// std::invalid_argument past the budget (matrix not of finite order).
Int matrix_order(const IntegerMatrix& m, std::size_t budget = 1u << 12);

/// Crystallographic space group over the lattice Z^n, stored as its finite
/// point group P < GL_n(Z) together with a vector system tau : P -> Q^n/Z^n.
/// The group is { x -> A x + tau(A) + z : A in P, z in Z^n }; construction
/// verifies closure of P and the cocycle law tau(AB) = tau(A) + A tau(B).
class CrystalGroup {
 public:
  CrystalGroup(std::vector<IntegerMatrix> point_elements,
               std::vector<RatVec> shifts);

  /// Symmorphic group L x| P for a point group given by generators.
  static CrystalGroup semidirect(std::size_t dim,
                                 const std::vector<IntegerMatrix>& point_gens,
                                 std::size_t budget = 1u << 20);

  /// Subgroup of the affine group generated by the given elements. The
  /// translation subgroup of the result must be exactly Z^n; anything else
  /// (too small to be crystallographic, or finer than Z^n) throws
  /// std::invalid_argument. Throws BudgetExceeded when the point closure
  /// grows past `budget`.
  static CrystalGroup from_generators(const std::vector<AffineElement>& gens,
                                      std::size_t budget = 1u << 20);

  std::size_t dim() const { return dim_; }
  std::size_t point_order() const { return points_.size(); }
  const std::vector<IntegerMatrix>& point_elements() const { return points_; }
  const RatVec& shift_of(std::size_t i) const { return shifts_[i]; }
  std::size_t index_of(const IntegerMatrix& point) const;
  AffineElement element(std::size_t i) const;
  bool contains(const AffineElement& g) const;

  /// {x : A x = x for all A in P}; equals the centre of the group, which is
  /// a sublattice of the translations.
  Lattice fixed_sublattice() const;
  std::size_t centre_rank() const;

  /// Translation coinvariants L / span{(A - 1)L}: the image of the
  /// translations in the abelianization.
  AbelianInvariants translation_coinvariants() const;

  std::vector<CharTriple> point_character() const;

  /// True iff the vector system is a coboundary, i.e. the group is conjugate
  /// inside the affine group to the split extension with the same point data.
  bool is_symmorphic() const;

  /// Second route to the same question: search for a finite subgroup mapping
  /// isomorphically onto the point group, returned as its element list when
  /// one exists. Solves for an exact section over a spanning tree of the
  /// point group rather than for a coboundary witness.
  std::optional<std::vector<AffineElement>> symmorphic_complement() const;

  /// True iff no nonidentity element has finite order.
  bool is_torsion_free() const;

  /// True iff every nontrivial normal subgroup has finite index; for these
  /// groups that is equivalent to Q-irreducibility of the point action.
  /// Throws std::logic_error when the implemented reducibility search cannot
  /// decide (does not happen for point groups acting by a single irreducible
  /// or a visibly split representation).
  bool is_just_infinite() const;

  /// Indices of the point elements used as the group's generating set, the
  /// same set presentation() builds its g-generators from.
  std::vector<std::size_t> point_generator_indices() const;

  /// Presentation on the lattice basis translations followed by one affine
  /// generator per point-group element of a generating set (Reidemeister
  /// Schreier relators over a spanning tree of the Cayley graph). Throws
  /// BudgetExceeded when |P| * generators exceeds the budget.
  FinPres presentation(std::size_t budget = 1u << 18) const;

  AbelianInvariants abelianize(std::size_t budget = 1u << 18) const;

  /// Transfer of the translation (I, z) into the translation subgroup:
  /// sum of A z over A in P. Central z come back multiplied by |P|.
  IntVec transfer_of_translation(const IntVec& z) const;

  /// Transfer of an arbitrary group element, computed from the coset
  /// representatives (A, shift_of(A)). Agrees with transfer_of_translation
  /// on pure translations.
  IntVec transfer(const AffineElement& x) const;

  bool operator==(const CrystalGroup& o) const {
    return points_ == o.points_ && shifts_ == o.shifts_;
  }

 private:
  std::size_t dim_;
  std::vector<IntegerMatrix> points_;  // sorted, identity included
  std::vector<RatVec> shifts_;         // entries in [0,1), aligned with points_
  std::vector<std::size_t> gen_indices_;  // greedy generating set, fixed at
                                          // construction
};

/// Block sums of points, concatenated shifts.
CrystalGroup direct_product(const CrystalGroup& a, const CrystalGroup& b);

/// Validation without exceptions: true iff the raw data describes a
/// crystallographic group, i.e. the point list is duplicate free (the action
/// is faithful), contains the identity with an integral shift, and the
/// shifts satisfy the cocycle law, checked on all pairs up to point order 48
/// and on a deterministic sample above.
bool check_crystallographic(const std::vector<IntegerMatrix>& points,
                            const std::vector<RatVec>& shifts);

/// The same group written in the basis u: points u A u^-1, shifts u tau.
/// Every fingerprint invariant must survive this change of coordinates.
CrystalGroup conjugate_group(const CrystalGroup& g, const IntegerMatrix& u);

/// Affine Coxeter group of the given type realized as a crystallographic
/// group over its translation lattice, together with the affine reflection
/// generators (indexed like the graph vertices: the added node first).
struct AffineCoxeterModel {
  CrystalGroup group;
  std::vector<AffineElement> generators;
  CoxeterGraph graph;
  RootDatum datum;
};

AffineCoxeterModel build_affine_coxeter(SeriesKind kind, std::size_t rank);

/// Crystallographic group L x| W for an intermediate lattice Q <= L <= P of
/// the given datum; the Weyl action is rewritten in a basis of L.
CrystalGroup lattice_semidirect(const RootDatum& rd, const Lattice& l);

/// Point groups are Q-class equivalent: an abstract isomorphism matching
/// traces exists. Decided by backtracking over generator images with order
/// and trace pruning.
bool qclass_equivalent(const std::vector<IntegerMatrix>& a,
                       const std::vector<IntegerMatrix>& b,
                       std::size_t budget = 1u << 22);

}  // namespace alcove
