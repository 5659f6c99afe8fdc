#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "braidkh/ring.hpp"

using namespace braidkh;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, int max_deg, long shift) {
  LaurentPoly p;
  int deg = static_cast<int>(rng() % (max_deg + 1));
  for (int e = 0; e <= deg; ++e) {
    long c = static_cast<long>(rng() % 7) - 3;
    if (c != 0) p += LaurentPoly::monomial(c, e + shift);
  }
  return p;
}

LaurentPoly random_nonzero_poly(std::mt19937_64& rng, int max_deg, long shift) {
  for (;;) {
    LaurentPoly p = random_poly(rng, max_deg, shift);
    if (!p.is_zero()) return p;
  }
}

}  // namespace

TEST_CASE("quantum integers") {
  CHECK(quantum_int(1) == LaurentPoly::one());
  CHECK(quantum_int(2) == LaurentPoly::delta());
  LaurentPoly three = LaurentPoly::q(-2) + LaurentPoly::one() + LaurentPoly::q(2);
  CHECK(quantum_int(3) == three);
  CHECK_THROWS_AS(quantum_int(0), std::domain_error);
  CHECK_THROWS_AS(quantum_int(-4), std::domain_error);

  // [m](q - q^-1) telescopes to q^m - q^-m.
  LaurentPoly comm = LaurentPoly::q(1) - LaurentPoly::q(-1);
  for (long m = 1; m <= 12; ++m) {
    CHECK(quantum_int(m) * comm == LaurentPoly::q(m) - LaurentPoly::q(-m));
  }

  // [2][n] = [n+1] + [n-1].
  for (long n = 2; n <= 9; ++n) {
    CHECK(quantum_int(2) * quantum_int(n) == quantum_int(n + 1) + quantum_int(n - 1));
  }
  CHECK(LaurentPoly::delta() * LaurentPoly::delta() == quantum_int(3) + quantum_int(1));
}

TEST_CASE("laurent polynomial basics") {
  LaurentPoly p = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-3, 4);
  CHECK(p.min_exp() == -1);
  CHECK(p.max_exp() == 4);
  CHECK(p.coeff(-1) == 2);
  CHECK(p.coeff(0) == 0);
  CHECK(p.shifted(3).coeff(2) == 2);
  CHECK((p - p).is_zero());
  CHECK_THROWS_AS(LaurentPoly::zero().min_exp(), std::domain_error);
  CHECK(LaurentPoly::delta().str() == "q^-1 + q");
  CHECK(quantum_int(3).str() == "q^-2 + 1 + q^2");
  CHECK((-LaurentPoly::one() - LaurentPoly::monomial(2, 3)).str() == "-1 - 2q^3");
  CHECK(pow(LaurentPoly::delta(), 2) == quantum_int(3) + quantum_int(1));
}

TEST_CASE("rational function canonical form") {
  RationalFunction a(LaurentPoly::monomial(2, 1), LaurentPoly::monomial(2, 0));
  CHECK(a.num() == LaurentPoly::q(1));
  CHECK(a.den() == LaurentPoly::one());
  CHECK(a.is_poly());

  // q^2 / (q^3 + q) reduces to q / (q^2 + 1).
  RationalFunction b(LaurentPoly::q(2), LaurentPoly::q(3) + LaurentPoly::q(1));
  CHECK(b.num() == LaurentPoly::q(1));
  CHECK(b.den() == LaurentPoly::q(2) + LaurentPoly::one());

  // A common polynomial factor never changes the canonical form.
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 60; ++trial) {
    LaurentPoly n = random_poly(rng, 5, static_cast<long>(rng() % 5) - 2);
    LaurentPoly d = random_nonzero_poly(rng, 5, static_cast<long>(rng() % 5) - 2);
    LaurentPoly f = random_nonzero_poly(rng, 4, static_cast<long>(rng() % 3) - 1);
    RationalFunction plain(n, d);
    RationalFunction scaled(n * f, d * f);
    CHECK(plain == scaled);
  }

  CHECK_THROWS_AS(RationalFunction(LaurentPoly::one(), LaurentPoly::zero()), std::domain_error);
}

TEST_CASE("rational function arithmetic") {
  RationalFunction half(LaurentPoly::one(), quantum_int(2));
  CHECK(half + half == RationalFunction(LaurentPoly::monomial(2, 0), quantum_int(2)));
  CHECK(half * RationalFunction(quantum_int(2)) == RationalFunction::one());
  CHECK((half - half).is_zero());
  CHECK_THROWS_AS(half / RationalFunction::zero(), std::domain_error);

  // (a/b) / (a/b) = 1 on random inputs.
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    LaurentPoly n = random_nonzero_poly(rng, 6, -2);
    LaurentPoly d = random_nonzero_poly(rng, 6, -1);
    RationalFunction r(n, d);
    CHECK(r / r == RationalFunction::one());
    CHECK(r - r == RationalFunction::zero());
    CHECK((r + r) / r == RationalFunction(LaurentPoly::monomial(2, 0)));
  }
}

TEST_CASE("series expansion of quantum reciprocals") {
  // 1/[2] = q - q^3 + q^5 - q^7 + ...
  TruncatedSeries s2 = expand_series(RationalFunction(LaurentPoly::one(), quantum_int(2)), 9);
  CHECK(s2.order() == 9);
  CHECK(!s2.is_exact());
  for (long e = -9; e <= 9; ++e) {
    mpz_class want = 0;
    if (e >= 1 && e % 2 == 1) want = (e % 4 == 1) ? 1 : -1;
    CHECK(s2.coeff(e) == want);
  }
  CHECK_THROWS_AS(s2.coeff(10), std::domain_error);

  // 1/[3] = q^2 - q^4 + q^8 - q^10 + ... (period-6 pattern).
  TruncatedSeries s3 = expand_series(RationalFunction(LaurentPoly::one(), quantum_int(3)), 10);
  TruncatedSeries expected = TruncatedSeries::from_poly(
      LaurentPoly::q(2) - LaurentPoly::q(4) + LaurentPoly::q(8) - LaurentPoly::q(10));
  CHECK(agreement_order(s3, expected.truncate(10)) == 10);

  // Multiplying the expansion back by the denominator recovers the numerator.
  TruncatedSeries back = s3 * TruncatedSeries::from_poly(quantum_int(3));
  CHECK(back.order() == 8);
  CHECK(agree_through(back, TruncatedSeries::from_poly(LaurentPoly::one()), 8));
}

TEST_CASE("series expansion round trip on random rationals") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    LaurentPoly num = random_poly(rng, 6, static_cast<long>(rng() % 7) - 3);
    LaurentPoly den = random_poly(rng, 6, 1) + LaurentPoly::one();  // constant term 1
    RationalFunction r(num, den);
    TruncatedSeries s = expand_series(r, 25);
    TruncatedSeries back = s * TruncatedSeries::from_poly(r.den());
    CHECK(back.order() >= 25);
    CHECK(agree_through(back, TruncatedSeries::from_poly(r.num()), 25));
  }
}

TEST_CASE("series expansion rejects non-unit denominators") {
  RationalFunction bad(LaurentPoly::one(), LaurentPoly::one() + LaurentPoly::one() + LaurentPoly::q(1));
  CHECK_THROWS_AS(expand_series(bad, 5), std::domain_error);
}

TEST_CASE("series truncation tracking") {
  LaurentPoly p = LaurentPoly::q(-1) + LaurentPoly::monomial(3, 2);
  LaurentPoly f = LaurentPoly::one() - LaurentPoly::q(4);
  TruncatedSeries tp = TruncatedSeries::from_poly(p).truncate(8);
  TruncatedSeries tf = TruncatedSeries::from_poly(f).truncate(8);
  TruncatedSeries prod = tp * tf;
  // Accuracy degrades by the other factor's lowest exponent.
  CHECK(prod.order() == std::min(8 + 0, 8 + (-1)));
  TruncatedSeries exact = TruncatedSeries::from_poly(p * f);
  CHECK(agree_through(prod, exact, prod.order()));

  // Sums keep the weaker order.
  CHECK((tp + TruncatedSeries::from_poly(f)).order() == 8);
  CHECK((TruncatedSeries::from_poly(p) + TruncatedSeries::from_poly(f)).is_exact());

  // An exact zero annihilates truncation; an inexact zero does not.
  TruncatedSeries exact_zero;
  CHECK((exact_zero * tp).is_exact());
  TruncatedSeries fuzzy_zero = TruncatedSeries::from_poly(LaurentPoly::zero()).truncate(3);
  CHECK((fuzzy_zero * TruncatedSeries::from_poly(p)).order() == 3 + (-1));

  CHECK(agreement_order(tp, tp + TruncatedSeries::from_poly(LaurentPoly::q(5))) == 4);
  CHECK_THROWS_AS(agree_through(tp, tp, 9), std::domain_error);
  CHECK(TruncatedSeries::from_poly(p).str() == "q^-1 + 3q^2");
  CHECK(tp.str() == "q^-1 + 3q^2 + O(q^9)");
}
