#pragma once

// Exact arithmetic layer: Laurent polynomials over Z, rational functions in
// q kept in a canonical reduced form, and truncated Laurent series that
// track how far their coefficients are reliable.

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace braidkh {

// Laurent polynomial in q with arbitrary-precision integer coefficients.
// Stored sparsely; the term map never holds zero coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return monomial(1, 0); }
  static LaurentPoly q(long exp = 1) { return monomial(1, exp); }
  static LaurentPoly monomial(mpz_class coeff, long exp);
  // Value of a disjoint circle: q + q^-1.
  static LaurentPoly delta();

  bool is_zero() const { return terms_.empty(); }
  const std::map<long, mpz_class>& terms() const { return terms_; }
  mpz_class coeff(long exp) const;

  // Lowest and highest exponent present; throw std::domain_error on zero.
  long min_exp() const;
  long max_exp() const;

  // Multiplication by q^exp.
  LaurentPoly shifted(long exp) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { a += b; return a; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { a -= b; return a; }
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const mpz_class& c) const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }

  // Ascending-exponent rendering, e.g. "q^-2 + 1 + q^2".
  std::string str() const;

 private:
  void set(long exp, mpz_class c);
  std::map<long, mpz_class> terms_;
};

LaurentPoly pow(const LaurentPoly& p, unsigned long k);

// Quantum integer [m] = q^(m-1) + q^(m-3) + ... + q^(1-m); requires m >= 1.
LaurentPoly quantum_int(long m);

// Ratio of Laurent polynomials kept in a canonical form: numerator and
// denominator coprime in Q[q], denominator with nonzero constant term and
// positive leading coefficient, no integer content shared between the two.
// Canonical forms are unique, so equality is structural.
class RationalFunction {
 public:
  RationalFunction() : den_(LaurentPoly::one()) {}
  RationalFunction(LaurentPoly n) : num_(std::move(n)), den_(LaurentPoly::one()) { normalize(); }
  RationalFunction(LaurentPoly n, LaurentPoly d);

  static RationalFunction zero() { return RationalFunction(); }
  static RationalFunction one() { return RationalFunction(LaurentPoly::one()); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_ == LaurentPoly::one(); }
  // Throws std::domain_error unless the denominator is 1.
  const LaurentPoly& as_poly() const;

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  // Throws std::domain_error on division by zero.
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction& operator+=(const RationalFunction& o) { *this = *this + o; return *this; }
  RationalFunction& operator-=(const RationalFunction& o) { *this = *this - o; return *this; }
  RationalFunction& operator*=(const RationalFunction& o) { *this = *this * o; return *this; }
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void normalize();
  LaurentPoly num_;
  LaurentPoly den_;
};

// Laurent series whose coefficients are reliable for every exponent up to
// order(); an exact series carries no truncation at all. Arithmetic never
// claims more accuracy than its inputs justify.
class TruncatedSeries {
 public:
  // Sentinel order for exact series; orders saturate here.
  static constexpr long kExactOrder = 1L << 40;

  TruncatedSeries() : order_(kExactOrder) {}

  static TruncatedSeries from_poly(const LaurentPoly& p);

  bool is_exact() const { return order_ >= kExactOrder; }
  long order() const { return order_; }
  bool stored_zero() const { return coeffs_.empty(); }
  // Exactly zero. A stored-empty truncated series is only known to vanish
  // through its tracked order, so it does not qualify.
  bool is_zero() const { return coeffs_.empty() && is_exact(); }
  // Coefficient of q^exp; throws std::domain_error past order().
  mpz_class coeff(long exp) const;
  // Stored nonzero coefficients in ascending exponent order.
  std::vector<std::pair<long, mpz_class>> series_terms() const;

  TruncatedSeries truncate(long order) const;
  TruncatedSeries operator-() const;
  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries& operator+=(const TruncatedSeries& o) { *this = *this + o; return *this; }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { *this = *this - o; return *this; }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { *this = *this * o; return *this; }

  // Structural equality: same stored terms and same tracked order.
  bool operator==(const TruncatedSeries& o) const {
    return min_exp_ == o.min_exp_ && coeffs_ == o.coeffs_ && order_ == o.order_;
  }
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  // Like LaurentPoly::str(), with a trailing O(q^k) marker when truncated.
  std::string str() const;

 private:
  void trim();
  long min_exp_ = 0;
  std::vector<mpz_class> coeffs_;
  long order_;
};

// Largest e <= min(a.order(), b.order()) such that a and b have equal
// coefficients at every exponent <= e; e may go below both series.
long agreement_order(const TruncatedSeries& a, const TruncatedSeries& b);

// True when both series are reliable through `order` and agree there;
// throws std::domain_error if either is too short to answer.
bool agree_through(const TruncatedSeries& a, const TruncatedSeries& b, long order);

// Laurent expansion of r around q = 0 through the given order. Requires the
// canonical denominator to have constant term +1 or -1 (unit in Z[[q]]).
TruncatedSeries expand_series(const RationalFunction& r, long order);

}  // namespace braidkh
