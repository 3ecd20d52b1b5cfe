#pragma once

#include <vector>

#include "alcove/abelian.hpp"
#include "alcove/coxeter_graph.hpp"
#include "alcove/int_matrix.hpp"
#include "alcove/lattice.hpp"

namespace alcove {

/// Coordinate model a root datum lives in. Types B, C, D use orthonormal
/// coordinates doubled so that half-integer weights become integral; the
/// remaining types use weight coordinates, where the weight lattice is the
/// standard lattice and the root lattice is spanned by the Cartan rows.
enum class AmbientBasis { scaled_orthonormal, weight };

struct RootDatum {
  ComponentType type;                    // finite crystallographic kind
  IntegerMatrix cartan;                  // entry (i, j) pairs root i with coroot j
  std::vector<IntegerMatrix> weyl_gens;  // simple reflections on the ambient
  Int ambient_scale;                     // stored coords = scale * natural coords
  AmbientBasis basis = AmbientBasis::weight;
  IntegerMatrix gram;  // invariant form (x, y) = x^T gram y / gram_den
  Int gram_den = 1;
  std::vector<IntVec> simple_roots;  // ambient columns, one per node
  Lattice q, qv, p;                  // root, coroot, weight lattice

  std::size_t rank() const { return type.rank; }
  /// Numerator x^T gram y of the invariant form; the shared denominator
  /// cancels in every ratio the code takes.
  Int form_num(const IntVec& x, const IntVec& y) const;
};

/// Admissible kinds: A (n>=1), B (n>=2), C (n>=2, the B datum with root and
/// coroot roles exchanged), D (n>=4), E6, E7, E8, F4, G2. Every structural
/// invariant (involutions, braid orders, lattice stability, Q <= P) is
/// verified before returning.
RootDatum build_root_datum(SeriesKind kind, std::size_t rank);

/// Invariants of P/Q.
AbelianInvariants fundamental_quotient(const RootDatum& rd);

/// All lattices between Q and P that every Weyl generator stabilizes, in
/// increasing index over Q (ties broken by basis order). Verifies that the
/// induced action on P/Q is trivial whenever the count is asserted to match
/// the subgroup count of P/Q.
std::vector<Lattice> intermediate_invariant_lattices(const RootDatum& rd);

struct LatticeChain {
  std::vector<Lattice> lattices;          // strictly increasing
  std::vector<AbelianInvariants> steps;   // steps[i] = lattices[i+1]/lattices[i]
};

/// The three-term chain of point-stable lattices for the rank-n B/C family:
/// even-coordinate-sum sublattice, full integer lattice, integer lattice plus
/// the half-sum vector (all doubled by the ambient scale). Each step has
/// index 2 and all terms are stable under the B_n Weyl generators.
LatticeChain bc_chain(std::size_t n);

/// True iff the stored root and coroot lattices coincide.
bool simply_laced_coincidence(const RootDatum& rd);

/// Every root, as the orbit of the simple roots under the Weyl generators,
/// in canonical order.
std::vector<IntVec> all_roots(const RootDatum& rd);

/// The translation vector of the extra affine generator: the dominant
/// element of minimal norm among the translation vectors (coroots in the
/// scaled-orthonormal models, roots in the weight models). The affine node
/// acts as x -> reflection_matrix(rd, v) * x + v.
IntVec affine_translation(const RootDatum& rd);

/// Reflection in the hyperplane orthogonal to v (v must have nonzero norm
/// and the reflection must be integral, which holds for roots and coroots).
IntegerMatrix reflection_matrix(const RootDatum& rd, const IntVec& v);

std::string root_datum_to_json(const RootDatum& rd);

}  // namespace alcove
