#include "alcove/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace alcove {

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& letter : out) letter = -letter;
  return out;
}

void FinPres::check_letters() const {
  int n = static_cast<int>(generators.size());
  for (const Word& r : relators)
    for (int letter : r)
      if (letter == 0 || std::abs(letter) > n)
        throw std::invalid_argument("relator letter out of range");
}

IntegerMatrix exponent_matrix(const FinPres& p) {
  p.check_letters();
  IntegerMatrix m(p.generators.size(), p.relators.size());
  for (std::size_t c = 0; c < p.relators.size(); ++c)
    for (int letter : p.relators[c]) {
      std::size_t g = static_cast<std::size_t>(std::abs(letter)) - 1;
      m.at(g, c) += letter > 0 ? 1 : -1;
    }
  return m;
}

AbelianInvariants abelianization(const FinPres& p) {
  return cokernel_invariants(exponent_matrix(p));
}

FinPres coxeter_presentation(const CoxeterGraph& g) {
  FinPres p;
  p.generators = g.vertices();
  std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i)
    p.relators.push_back(Word{int(i + 1), int(i + 1)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      CoxLabel m = g.bond(i, j);
      if (!m.finite()) continue;
      Word r;
      for (unsigned k = 0; k < m.order_value(); ++k) {
        r.push_back(int(i + 1));
        r.push_back(int(j + 1));
      }
      p.relators.push_back(std::move(r));
    }
  return p;
}

}  // namespace alcove
