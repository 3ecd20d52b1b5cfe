#include "alcove/abelian.hpp"

#include <sstream>

namespace alcove {

Int AbelianInvariants::torsion_order() const {
  Int n = 1;
  for (const Int& d : torsion) n *= d;
  return n;
}

std::string AbelianInvariants::to_string() const {
  if (is_trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Int& d : torsion) {
    if (!first) os << " x ";
    os << "Z_" << d;
    first = false;
  }
  if (free_rank > 0) {
    if (!first) os << " x ";
    os << "Z^" << free_rank;
  }
  return os.str();
}

AbelianInvariants AbelianInvariants::elementary(long p, std::size_t k) {
  AbelianInvariants a;
  a.torsion.assign(k, Int(p));
  return a;
}

AbelianInvariants AbelianInvariants::free_abelian(std::size_t rank) {
  AbelianInvariants a;
  a.free_rank = rank;
  return a;
}

AbelianInvariants cokernel_invariants(const IntegerMatrix& a) {
  AbelianInvariants out;
  // Wide relator matrices are common (one column per relator); fold the
  // columns into a square Hermite form first so the Smith reduction runs on
  // at most rows x rows data.
  const IntegerMatrix* m = &a;
  IntegerMatrix folded;
  if (a.cols() > a.rows()) {
    folded = hnf(a);
    m = &folded;
  }
  SmithResult s = snf(*m);
  std::size_t rank = 0;
  for (const Int& d : s.diagonal()) {
    if (d == 0) continue;
    ++rank;
    if (d > 1) out.torsion.push_back(d);
  }
  out.free_rank = a.rows() - rank;
  return out;
}

}  // namespace alcove
