#include "braidkh/bracket.hpp"

#include <cstdlib>
#include <stdexcept>

namespace braidkh {

TLPoly letter_bracket(int n, int i, int sign) {
  if (i < 1 || i >= n) throw std::invalid_argument("crossing index out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("crossing sign must be +-1");
  TLPoly out(n, n);
  out.add_term(TLMatching::identity(n), LaurentPoly::q(sign));
  out.add_term(TLMatching::generator(n, i), -LaurentPoly::q(2 * sign));
  return out;
}

TLPoly word_bracket(int n, const std::vector<int>& word) {
  TLPoly out = TLPoly::identity(n);
  for (int letter : word) {
    if (letter == 0 || std::abs(letter) >= n) {
      throw std::invalid_argument("braid letter out of range");
    }
    out = tl_mul(out, letter_bracket(n, std::abs(letter), letter > 0 ? 1 : -1));
  }
  return out;
}

int word_negatives(const std::vector<int>& word) {
  int neg = 0;
  for (int letter : word) {
    if (letter < 0) ++neg;
  }
  return neg;
}

long word_shift_exponent(const std::vector<int>& word) {
  int neg = word_negatives(word);
  return static_cast<long>(word.size()) - 3L * neg;
}

TLPoly normalized_bracket(int n, const std::vector<int>& word) {
  int neg = word_negatives(word);
  LaurentPoly scale = LaurentPoly::monomial(neg % 2 == 0 ? 1 : -1, -word_shift_exponent(word));
  return word_bracket(n, word).scaled(scale);
}

LaurentPoly closure_bracket(const TLPoly& x) {
  if (x.bot() != x.top()) throw std::invalid_argument("closure needs equal boundaries");
  LaurentPoly out;
  for (const auto& [m, c] : x.terms()) {
    out += c * pow(LaurentPoly::delta(), closure_circles(m));
  }
  return out;
}

}  // namespace braidkh
