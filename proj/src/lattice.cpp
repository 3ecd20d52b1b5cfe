#include "alcove/lattice.hpp"

namespace alcove {

Lattice::Lattice(std::size_t ambient_rank, const IntegerMatrix& basis)
    : ambient_(ambient_rank) {
  if (basis.rows() != ambient_rank)
    throw std::invalid_argument("lattice basis: ambient rank mismatch");
  basis_ = hnf(basis);
  if (basis_.cols() != basis.cols())
    throw std::invalid_argument("lattice basis: columns are dependent");
}

Lattice Lattice::span(std::size_t ambient_rank, const IntegerMatrix& gens) {
  if (gens.rows() != ambient_rank)
    throw std::invalid_argument("lattice span: ambient rank mismatch");
  Lattice l;
  l.ambient_ = ambient_rank;
  l.basis_ = hnf(gens);
  return l;
}

Lattice Lattice::standard(std::size_t n) {
  return Lattice(n, IntegerMatrix::identity(n));
}

Lattice Lattice::zero(std::size_t n) {
  Lattice l;
  l.ambient_ = n;
  l.basis_ = IntegerMatrix(n, 0);
  return l;
}

Lattice Lattice::scaled_standard(std::size_t n, const Int& k) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = k;
  return Lattice(n, m);
}

bool Lattice::contains(const IntVec& v) const {
  return coordinates(v).has_value();
}

bool Lattice::contains(const Lattice& other) const {
  if (ambient_ != other.ambient_) return false;
  return coordinates(other).has_value();
}

std::optional<IntVec> Lattice::coordinates(const IntVec& v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("lattice membership: ambient mismatch");
  return solve_integer(basis_, v);
}

std::optional<IntegerMatrix> Lattice::coordinates(const Lattice& other) const {
  if (other.ambient_ != ambient_)
    throw std::invalid_argument("lattice coordinates: ambient mismatch");
  return solve_integer_matrix(basis_, other.basis_);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("lattice sum: ambient mismatch");
  return Lattice::span(a.ambient_rank(), a.basis().hcat(b.basis()));
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("lattice intersection: ambient mismatch");
  // Solve A x = B y: kernel of [A | -B]; the A-part of each kernel vector
  // gives an intersection element.
  IntegerMatrix neg_b = b.basis();
  for (std::size_t i = 0; i < neg_b.rows(); ++i)
    for (std::size_t j = 0; j < neg_b.cols(); ++j)
      neg_b.at(i, j) = -neg_b.at(i, j);
  IntegerMatrix stacked = a.basis().hcat(neg_b);
  IntegerMatrix k = kernel(stacked);
  IntegerMatrix xs(a.rank(), k.cols());
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) xs.at(i, j) = k.at(i, j);
  return Lattice::span(a.ambient_rank(), a.basis() * xs);
}

AbelianInvariants quotient_invariants(const Lattice& sub,
                                      const Lattice& super) {
  if (sub.ambient_rank() != super.ambient_rank())
    throw std::invalid_argument("lattice quotient: ambient mismatch");
  auto x = super.coordinates(sub);
  if (!x) throw std::invalid_argument("lattice quotient: not a sublattice");
  if (sub.rank() != super.rank())
    throw std::invalid_argument(
        "lattice quotient: rank mismatch (infinite index)");
  return cokernel_invariants(*x);
}

Int lattice_index(const Lattice& sub, const Lattice& super) {
  return quotient_invariants(sub, super).torsion_order();
}

}  // namespace alcove
