#ifndef ALCOVE_NUMERIC_HPP
#define ALCOVE_NUMERIC_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace alcove {

/// Exact arbitrary-precision integer. All normal-form arithmetic uses this
/// type; machine words never appear in pivots or invariant factors.
using Int = mpz_class;

/// Exact rational, used for vector systems and affine translation parts.
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Thrown when an enumeration or search exceeds its configured budget.
/// Distinct from nonexistence: callers that must report "inconclusive"
/// catch this (or use the tri-state search results) instead of failing.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline IntVec int_vec(std::initializer_list<long> xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r;
  r.reserve(v.size());
  for (const Int& x : v) r.emplace_back(x);
  return r;
}

/// Fractional part in [0,1).
inline Rat frac_part(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rat(q);
}

inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

}  // namespace alcove

#endif
