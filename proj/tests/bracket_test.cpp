#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <stdexcept>

#include "braidkh/bracket.hpp"

using namespace braidkh;

namespace {

std::vector<int> random_word(std::mt19937_64& rng, int n, int len) {
  std::vector<int> w;
  for (int k = 0; k < len; ++k) {
    int i = 1 + static_cast<int>(rng() % (n - 1));
    w.push_back(rng() % 2 == 0 ? i : -i);
  }
  return w;
}

}  // namespace

TEST_CASE("single letter expansion") {
  TLPoly pos = letter_bracket(2, 1, 1);
  CHECK(pos.coeff(TLMatching::identity(2)) == LaurentPoly::q(1));
  CHECK(pos.coeff(TLMatching::generator(2, 1)) == -LaurentPoly::q(2));
  TLPoly neg = letter_bracket(2, 1, -1);
  CHECK(neg.coeff(TLMatching::identity(2)) == LaurentPoly::q(-1));
  CHECK(neg.coeff(TLMatching::generator(2, 1)) == -LaurentPoly::q(-2));

  // A crossing against its inverse cancels exactly.
  CHECK(tl_mul(pos, neg) == TLPoly::identity(2));
  CHECK(tl_mul(neg, pos) == TLPoly::identity(2));
  for (int n = 3; n <= 5; ++n) {
    for (int i = 1; i < n; ++i) {
      CHECK(tl_mul(letter_bracket(n, i, 1), letter_bracket(n, i, -1)) == TLPoly::identity(n));
    }
  }

  CHECK_THROWS_AS(letter_bracket(2, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(letter_bracket(2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(letter_bracket(3, 1, 2), std::invalid_argument);
}

TEST_CASE("twist powers on two strands") {
  TLMatching id = TLMatching::identity(2);
  TLMatching e = TLMatching::generator(2, 1);

  TLPoly sq = word_bracket(2, {1, 1});
  CHECK(sq.coeff(id) == LaurentPoly::q(2));
  CHECK(sq.coeff(e) == LaurentPoly::q(5) - LaurentPoly::q(3));

  TLPoly cube = word_bracket(2, {1, 1, 1});
  CHECK(cube.coeff(id) == LaurentPoly::q(3));
  CHECK(cube.coeff(e) == -LaurentPoly::q(4) + LaurentPoly::q(6) - LaurentPoly::q(8));

  TLPoly norm = normalized_bracket(2, {1, 1, 1});
  CHECK(norm.coeff(id) == LaurentPoly::one());
  CHECK(norm.coeff(e) == -LaurentPoly::q(1) + LaurentPoly::q(3) - LaurentPoly::q(5));

  // The twist region coefficient is a partial sum of a fixed power series:
  // each extra crossing appends one term.
  LaurentPoly expect;
  for (int k = 1; k <= 8; ++k) {
    std::vector<int> w(k, 1);
    expect += LaurentPoly::monomial(k % 2 == 0 ? 1 : -1, 2 * k - 1);
    CHECK(normalized_bracket(2, w).coeff(e) == expect);
    CHECK(normalized_bracket(2, w).coeff(id) == LaurentPoly::one());
  }
}

TEST_CASE("writhe bookkeeping") {
  CHECK(word_negatives({1, -2, 3, -1}) == 2);
  CHECK(word_shift_exponent({1, -2, 3, -1}) == -2);
  CHECK(word_shift_exponent({1, 1, 1}) == 3);
  // Normalization kills the unit coefficient of a pure positive word.
  TLPoly norm = normalized_bracket(3, {1, 2, 1});
  CHECK(norm.coeff(TLMatching::identity(3)) == LaurentPoly::one());
}

TEST_CASE("bracket is invariant under word moves") {
  std::mt19937_64 rng(20250816);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<int> w = random_word(rng, n, 3 + static_cast<int>(rng() % 8));
    TLPoly base = word_bracket(n, w);

    // Insert a canceling pair anywhere.
    std::vector<int> r2 = w;
    size_t pos = rng() % (r2.size() + 1);
    int i = 1 + static_cast<int>(rng() % (n - 1));
    int s = rng() % 2 == 0 ? 1 : -1;
    r2.insert(r2.begin() + pos, {s * i, -s * i});
    CHECK(word_bracket(n, r2) == base);

    // Swap a distant pair when one exists.
    for (size_t k = 0; k + 1 < w.size(); ++k) {
      if (std::abs(std::abs(w[k]) - std::abs(w[k + 1])) >= 2) {
        std::vector<int> comm = w;
        std::swap(comm[k], comm[k + 1]);
        CHECK(word_bracket(n, comm) == base);
        break;
      }
    }
  }

  // Triangle slide in both sign variants, planted in random context.
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    int i = 1 + static_cast<int>(rng() % (n - 2));
    int s = rng() % 2 == 0 ? 1 : -1;
    std::vector<int> pre = random_word(rng, n, static_cast<int>(rng() % 4));
    std::vector<int> post = random_word(rng, n, static_cast<int>(rng() % 4));
    std::vector<int> lhs = pre;
    std::vector<int> rhs = pre;
    for (int x : {s * i, s * (i + 1), s * i}) lhs.push_back(x);
    for (int x : {s * (i + 1), s * i, s * (i + 1)}) rhs.push_back(x);
    lhs.insert(lhs.end(), post.begin(), post.end());
    rhs.insert(rhs.end(), post.begin(), post.end());
    CHECK(word_bracket(n, lhs) == word_bracket(n, rhs));
  }
}

TEST_CASE("closure evaluations match known links") {
  LaurentPoly delta = LaurentPoly::delta();
  // Two-component unlink, then unknots with one kink of either sign.
  CHECK(closure_bracket(word_bracket(2, {})) == delta * delta);
  CHECK(closure_bracket(word_bracket(2, {1})) == delta);
  CHECK(closure_bracket(word_bracket(2, {-1})) == delta);

  // Right trefoil: q + q^3 + q^5 - q^9.
  LaurentPoly trefoil =
      LaurentPoly::q(1) + LaurentPoly::q(3) + LaurentPoly::q(5) - LaurentPoly::q(9);
  CHECK(closure_bracket(word_bracket(2, {1, 1, 1})) == trefoil);

  // Positive Hopf link: 1 + q^2 + q^4 + q^6.
  LaurentPoly hopf =
      LaurentPoly::one() + LaurentPoly::q(2) + LaurentPoly::q(4) + LaurentPoly::q(6);
  CHECK(closure_bracket(word_bracket(2, {1, 1})) == hopf);

  // Figure eight: q^-5 + q^5.
  CHECK(closure_bracket(word_bracket(3, {1, -2, 1, -2})) ==
        LaurentPoly::q(-5) + LaurentPoly::q(5));
}

TEST_CASE("closure evaluation is a Markov trace") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<int> w = random_word(rng, n, 2 + static_cast<int>(rng() % 7));
    LaurentPoly base = closure_bracket(word_bracket(n, w));

    // Conjugation: cyclic rotation of the word.
    std::vector<int> rot(w.begin() + 1, w.end());
    rot.push_back(w.front());
    CHECK(closure_bracket(word_bracket(n, rot)) == base);

    // Stabilization by one extra strand, either sign.
    for (int s : {1, -1}) {
      std::vector<int> stab = w;
      stab.push_back(s * n);
      CHECK(closure_bracket(word_bracket(n + 1, stab)) == base);
    }
  }
}
