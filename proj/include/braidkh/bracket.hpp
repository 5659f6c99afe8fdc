#pragma once

// Kauffman bracket of braid words, valued in the Temperley-Lieb algebra.
// Letters are read left to right and stacked downward. The coefficient
// conventions make the bracket exactly invariant under braid-word moves
// that preserve the diagram (inverse cancellation, distant commutation,
// triangle slides), and make the trace closure evaluation equal to the
// graded Euler characteristic of the closure's Khovanov complex.

#include <vector>

#include "braidkh/tl.hpp"

namespace braidkh {

// Skein expansion of one crossing between strands i and i+1:
//   sign +1:  q I - q^2 e_i
//   sign -1:  q^-1 I - q^-2 e_i
TLPoly letter_bracket(int n, int i, int sign);

// Bracket of a braid word on n strands; letter +-k encodes the k-th
// elementary crossing with that sign.
TLPoly word_bracket(int n, const std::vector<int>& word);

// Number of negative letters, and the exponent n+ - 2 n-.
int word_negatives(const std::vector<int>& word);
long word_shift_exponent(const std::vector<int>& word);

// (-1)^{n-} q^{-(n+ - 2 n-)} word_bracket, the normalization under which
// complete twist prefixes converge coefficientwise.
TLPoly normalized_bracket(int n, const std::vector<int>& word);

// Evaluation of the trace closure: every term contributes its coefficient
// times delta^circles.
LaurentPoly closure_bracket(const TLPoly& x);

}  // namespace braidkh
