#include "braidkh/ring.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace braidkh {

LaurentPoly LaurentPoly::monomial(mpz_class coeff, long exp) {
  LaurentPoly p;
  p.set(exp, std::move(coeff));
  return p;
}

LaurentPoly LaurentPoly::delta() {
  LaurentPoly p;
  p.set(1, 1);
  p.set(-1, 1);
  return p;
}

void LaurentPoly::set(long exp, mpz_class c) {
  if (c == 0) {
    terms_.erase(exp);
  } else {
    terms_[exp] = std::move(c);
  }
}

mpz_class LaurentPoly::coeff(long exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

long LaurentPoly::min_exp() const {
  if (terms_.empty()) throw std::domain_error("min_exp of zero polynomial");
  return terms_.begin()->first;
}

long LaurentPoly::max_exp() const {
  if (terms_.empty()) throw std::domain_error("max_exp of zero polynomial");
  return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::shifted(long exp) const {
  LaurentPoly p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(e + exp, c);
  return p;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p;
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, -c);
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly p;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      auto [it, fresh] = p.terms_.try_emplace(ea + eb, 0);
      it->second += ca * cb;
      if (it->second == 0) p.terms_.erase(it);
    }
  }
  return p;
}

LaurentPoly LaurentPoly::operator*(const mpz_class& c) const {
  if (c == 0) return LaurentPoly();
  LaurentPoly p;
  for (const auto& [e, a] : terms_) p.terms_.emplace(e, a * c);
  return p;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
      first = false;
    } else if (a < 0) {
      out << " - ";
      a = -a;
    } else {
      out << " + ";
    }
    if (e == 0) {
      out << a.get_str();
    } else {
      if (a != 1) out << a.get_str();
      out << "q";
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

LaurentPoly pow(const LaurentPoly& p, unsigned long k) {
  LaurentPoly r = LaurentPoly::one();
  for (unsigned long i = 0; i < k; ++i) r *= p;
  return r;
}

LaurentPoly quantum_int(long m) {
  if (m < 1) throw std::domain_error("quantum_int requires m >= 1");
  LaurentPoly p;
  for (long e = m - 1; e >= 1 - m; e -= 2) p += LaurentPoly::q(e);
  return p;
}

namespace {

// Dense rational polynomials indexed by degree, used only for gcd work.
using Dense = std::vector<mpq_class>;

void dense_trim(Dense& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// p must have min_exp >= 0.
Dense dense_from(const LaurentPoly& p) {
  Dense v(p.is_zero() ? 0 : p.max_exp() + 1, mpq_class(0));
  for (const auto& [e, c] : p.terms()) v[e] = mpq_class(c);
  return v;
}

void dense_mod(Dense& a, const Dense& b) {
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    dense_trim(a);
  }
}

// Monic gcd over Q[q]; inputs nonzero.
Dense dense_gcd(Dense a, Dense b) {
  while (!b.empty()) {
    dense_mod(a, b);
    std::swap(a, b);
  }
  mpq_class lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

// Quotient of the exact division a / b over Q[q]; asserts zero remainder.
Dense dense_divexact(Dense a, const Dense& b) {
  Dense quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class f = a.back() / b.back();
    quot[a.size() - b.size()] = f;
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    dense_trim(a);
  }
  assert(a.empty() && "inexact polynomial division");
  return quot;
}

// Rescale a rational polynomial to a primitive integer polynomial with
// positive leading coefficient.
LaurentPoly primitive_from_dense(const Dense& v) {
  mpz_class scale = 1;
  for (const auto& c : v) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> zs(v.size());
  mpz_class cont = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    mpq_class s = v[i] * scale;
    assert(s.get_den() == 1);
    zs[i] = s.get_num();
    mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), zs[i].get_mpz_t());
  }
  if (!zs.empty() && zs.back() < 0) cont = -cont;
  LaurentPoly p;
  for (size_t i = 0; i < zs.size(); ++i) {
    if (zs[i] != 0) p += LaurentPoly::monomial(zs[i] / cont, static_cast<long>(i));
  }
  return p;
}

mpz_class int_content(const LaurentPoly& p) {
  mpz_class g = 0;
  for (const auto& [e, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

LaurentPoly divexact_content(const LaurentPoly& p, const mpz_class& c) {
  LaurentPoly r;
  for (const auto& [e, a] : p.terms()) {
    mpz_class d;
    mpz_divexact(d.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    r += LaurentPoly::monomial(d, e);
  }
  return r;
}

// Exact division of integer Laurent polynomials where g has min_exp 0 and
// divides p; the quotient is again integral.
LaurentPoly divexact_poly(const LaurentPoly& p, const LaurentPoly& g) {
  long m = p.min_exp();
  Dense quot = dense_divexact(dense_from(p.shifted(-m)), dense_from(g));
  LaurentPoly r;
  for (size_t i = 0; i < quot.size(); ++i) {
    if (quot[i] != 0) {
      assert(quot[i].get_den() == 1);
      r += LaurentPoly::monomial(quot[i].get_num(), static_cast<long>(i) + m);
    }
  }
  return r;
}

}  // namespace

RationalFunction::RationalFunction(LaurentPoly n, LaurentPoly d)
    : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly::one();
    return;
  }
  // Shift the pair so the denominator has a nonzero constant term.
  long s = -den_.min_exp();
  den_ = den_.shifted(s);
  num_ = num_.shifted(s);
  long m = num_.min_exp();
  LaurentPoly a = num_.shifted(-m);
  Dense g = dense_gcd(dense_from(a), dense_from(den_));
  if (g.size() > 1) {
    LaurentPoly gz = primitive_from_dense(g);
    a = divexact_poly(a, gz);
    den_ = divexact_poly(den_, gz);
  }
  num_ = a.shifted(m);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), int_content(num_).get_mpz_t(), int_content(den_).get_mpz_t());
  if (c > 1) {
    num_ = divexact_content(num_, c);
    den_ = divexact_content(den_, c);
  }
  if (den_.coeff(den_.max_exp()) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

const LaurentPoly& RationalFunction::as_poly() const {
  if (!is_poly()) throw std::domain_error("rational function is not a polynomial");
  return num_;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

std::string RationalFunction::str() const {
  if (is_poly()) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

TruncatedSeries TruncatedSeries::from_poly(const LaurentPoly& p) {
  TruncatedSeries s;
  if (p.is_zero()) return s;
  s.min_exp_ = p.min_exp();
  s.coeffs_.assign(p.max_exp() - s.min_exp_ + 1, 0);
  for (const auto& [e, c] : p.terms()) s.coeffs_[e - s.min_exp_] = c;
  return s;
}

void TruncatedSeries::trim() {
  if (order_ < kExactOrder) {
    order_ = std::min(order_, kExactOrder);
    long top = min_exp_ + static_cast<long>(coeffs_.size()) - 1;
    if (top > order_) coeffs_.resize(std::max<long>(0, order_ - min_exp_ + 1));
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
    min_exp_ += static_cast<long>(lead);
  }
  if (coeffs_.empty()) min_exp_ = 0;
}

mpz_class TruncatedSeries::coeff(long exp) const {
  if (exp > order_) throw std::domain_error("series coefficient beyond tracked order");
  long i = exp - min_exp_;
  if (i < 0 || i >= static_cast<long>(coeffs_.size())) return 0;
  return coeffs_[i];
}

std::vector<std::pair<long, mpz_class>> TruncatedSeries::series_terms() const {
  std::vector<std::pair<long, mpz_class>> out;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) out.emplace_back(min_exp_ + static_cast<long>(i), coeffs_[i]);
  }
  return out;
}

TruncatedSeries TruncatedSeries::truncate(long order) const {
  TruncatedSeries s = *this;
  s.order_ = std::min(s.order_, order);
  s.trim();
  return s;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  TruncatedSeries s;
  s.order_ = std::min(order_, o.order_);
  if (coeffs_.empty() && o.coeffs_.empty()) {
    s.trim();
    return s;
  }
  long lo = coeffs_.empty() ? o.min_exp_ : (o.coeffs_.empty() ? min_exp_ : std::min(min_exp_, o.min_exp_));
  long hi_a = coeffs_.empty() ? lo - 1 : min_exp_ + static_cast<long>(coeffs_.size()) - 1;
  long hi_b = o.coeffs_.empty() ? lo - 1 : o.min_exp_ + static_cast<long>(o.coeffs_.size()) - 1;
  long hi = std::max(hi_a, hi_b);
  s.min_exp_ = lo;
  s.coeffs_.assign(hi - lo + 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) s.coeffs_[min_exp_ + static_cast<long>(i) - lo] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) s.coeffs_[o.min_exp_ + static_cast<long>(i) - lo] += o.coeffs_[i];
  s.trim();
  return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  // An exact zero factor annihilates everything, truncation included.
  if (is_exact() && coeffs_.empty()) return TruncatedSeries();
  if (o.is_exact() && o.coeffs_.empty()) return TruncatedSeries();
  // The unknown tail of each factor enters at its order plus the lowest
  // exponent of the other factor, whichever comes first.
  long m_a = coeffs_.empty() ? order_ + 1 : min_exp_;
  long m_b = o.coeffs_.empty() ? o.order_ + 1 : o.min_exp_;
  long ord = kExactOrder;
  if (!is_exact()) ord = std::min(ord, order_ + m_b);
  if (!o.is_exact()) ord = std::min(ord, o.order_ + m_a);
  TruncatedSeries s;
  s.order_ = std::min(ord, kExactOrder);
  if (!coeffs_.empty() && !o.coeffs_.empty()) {
    s.min_exp_ = min_exp_ + o.min_exp_;
    s.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      for (size_t j = 0; j < o.coeffs_.size(); ++j) s.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  s.trim();
  return s;
}

std::string TruncatedSeries::str() const {
  LaurentPoly p;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) p += LaurentPoly::monomial(coeffs_[i], min_exp_ + static_cast<long>(i));
  }
  if (is_exact()) return p.str();
  std::string tail = "O(q^" + std::to_string(order_ + 1) + ")";
  if (p.is_zero()) return tail;
  return p.str() + " + " + tail;
}

long agreement_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  long limit = std::min(a.order(), b.order());
  std::vector<long> exps;
  for (const auto& [e, c] : a.series_terms()) exps.push_back(e);
  for (const auto& [e, c] : b.series_terms()) exps.push_back(e);
  std::sort(exps.begin(), exps.end());
  for (long e : exps) {
    if (e > limit) break;
    if (a.coeff(e) != b.coeff(e)) return e - 1;
  }
  return limit;
}

bool agree_through(const TruncatedSeries& a, const TruncatedSeries& b, long order) {
  if (a.order() < order || b.order() < order) {
    throw std::domain_error("series not tracked far enough for requested comparison");
  }
  return agreement_order(a, b) >= order;
}

TruncatedSeries expand_series(const RationalFunction& r, long order) {
  if (r.is_zero()) return TruncatedSeries().truncate(order);
  const LaurentPoly& den = r.den();
  mpz_class d0 = den.coeff(0);
  if (d0 != 1 && d0 != -1) {
    throw std::domain_error("series expansion needs a denominator with constant term +-1");
  }
  long p = den.max_exp();
  std::vector<mpz_class> d(p + 1, 0);
  for (const auto& [e, c] : den.terms()) d[e] = c;
  long lo = r.num().min_exp();
  std::vector<mpz_class> c;
  for (long k = lo; k <= order; ++k) {
    mpz_class v = r.num().coeff(k);
    for (long j = 1; j <= p && j <= k - lo; ++j) v -= d[j] * c[k - lo - j];
    c.push_back(v * d0);
  }
  LaurentPoly stored;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) stored += LaurentPoly::monomial(c[i], lo + static_cast<long>(i));
  }
  return TruncatedSeries::from_poly(stored).truncate(order);
}

}  // namespace braidkh
