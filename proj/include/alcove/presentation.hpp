#pragma once

#include <string>
#include <vector>

#include "alcove/abelian.hpp"
#include "alcove/coxeter_graph.hpp"
#include "alcove/int_matrix.hpp"

namespace alcove {

/// Word in a free group: letter k > 0 is generator k-1, letter -k its
/// inverse.
using Word = std::vector<int>;

Word inverse_word(const Word& w);

struct FinPres {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  void check_letters() const;  // relators only use declared generators
};

/// One row per generator, one column per relator, entries = exponent sums.
IntegerMatrix exponent_matrix(const FinPres& p);

AbelianInvariants abelianization(const FinPres& p);

/// Generators are the vertices; relators are the generator squares followed
/// by the alternating words (vw)^m for every pair with finite bond order,
/// commuting pairs included.
FinPres coxeter_presentation(const CoxeterGraph& g);

}  // namespace alcove
