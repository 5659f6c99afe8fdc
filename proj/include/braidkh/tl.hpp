#pragma once

// Temperley-Lieb diagrams and their linear combinations. A matching is a
// crossingless pairing of boundary points of a rectangle: bottom points
// 0..bot-1 left to right, then top points bot..bot+top-1 left to right.
// Stacking composition deletes closed circles and reports how many were
// removed so callers can multiply in the loop value delta = q + q^-1.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "braidkh/ring.hpp"

namespace braidkh {

class TLMatching {
 public:
  // Validates that mate is a fixed-point-free involution describing a
  // planar arc diagram; throws std::invalid_argument otherwise.
  TLMatching(int bot, int top, std::vector<int> mate);

  static TLMatching identity(int n);
  // Cup-cap generator e_k joining strands k and k+1 (k is 1-based).
  static TLMatching generator(int n, int k);

  int bot() const { return bot_; }
  int top() const { return top_; }
  int mate(int p) const { return mate_[p]; }
  const std::vector<int>& mates() const { return mate_; }
  // Arc pairs (low, high), sorted.
  std::vector<std::pair<int, int>> arcs() const;

  bool operator<(const TLMatching& o) const;
  bool operator==(const TLMatching& o) const {
    return bot_ == o.bot_ && top_ == o.top_ && mate_ == o.mate_;
  }
  bool operator!=(const TLMatching& o) const { return !(*this == o); }

  std::string str() const;

 private:
  int bot_;
  int top_;
  std::vector<int> mate_;
};

// Stacks a above b, gluing a's bottom boundary to b's top boundary; the
// result keeps b's bottom and a's top. Returns the matching together with
// the number of closed circles the gluing produced.
std::pair<TLMatching, int> compose(const TLMatching& a, const TLMatching& b);

// Circles formed by the trace closure: arcs joining bottom i to top n+i
// around the diagram. Input must have equal boundary sizes.
int closure_circles(const TLMatching& m);

// All crossingless (n, n) matchings; Catalan(n) of them.
std::vector<TLMatching> all_matchings(int n);

template <typename Coeff>
struct CoeffOps;

template <>
struct CoeffOps<LaurentPoly> {
  static LaurentPoly one() { return LaurentPoly::one(); }
  static LaurentPoly delta() { return LaurentPoly::delta(); }
};

template <>
struct CoeffOps<RationalFunction> {
  static RationalFunction one() { return RationalFunction::one(); }
  static RationalFunction delta() { return RationalFunction(LaurentPoly::delta()); }
};

template <>
struct CoeffOps<TruncatedSeries> {
  static TruncatedSeries one() { return TruncatedSeries::from_poly(LaurentPoly::one()); }
  static TruncatedSeries delta() { return TruncatedSeries::from_poly(LaurentPoly::delta()); }
};

// Linear combination of matchings with a fixed boundary shape.
template <typename Coeff>
class TLElem {
 public:
  TLElem(int bot, int top) : bot_(bot), top_(top) {}

  static TLElem identity(int n) {
    TLElem e(n, n);
    e.add_term(TLMatching::identity(n), CoeffOps<Coeff>::one());
    return e;
  }
  static TLElem generator(int n, int k) {
    TLElem e(n, n);
    e.add_term(TLMatching::generator(n, k), CoeffOps<Coeff>::one());
    return e;
  }
  static TLElem single(const TLMatching& m, Coeff c) {
    TLElem e(m.bot(), m.top());
    e.add_term(m, std::move(c));
    return e;
  }

  int bot() const { return bot_; }
  int top() const { return top_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<TLMatching, Coeff>& terms() const { return terms_; }

  Coeff coeff(const TLMatching& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff() : it->second;
  }

  void add_term(const TLMatching& m, const Coeff& c) {
    if (m.bot() != bot_ || m.top() != top_) {
      throw std::invalid_argument("matching shape does not fit element");
    }
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TLElem operator-() const {
    TLElem e(bot_, top_);
    for (const auto& [m, c] : terms_) e.terms_.emplace(m, -c);
    return e;
  }
  TLElem operator+(const TLElem& o) const {
    require_same_shape(o);
    TLElem e = *this;
    for (const auto& [m, c] : o.terms_) e.add_term(m, c);
    return e;
  }
  TLElem operator-(const TLElem& o) const { return *this + (-o); }
  TLElem& operator+=(const TLElem& o) { *this = *this + o; return *this; }

  TLElem scaled(const Coeff& c) const {
    TLElem e(bot_, top_);
    for (const auto& [m, a] : terms_) e.add_term(m, a * c);
    return e;
  }

  bool operator==(const TLElem& o) const {
    return bot_ == o.bot_ && top_ == o.top_ && terms_ == o.terms_;
  }
  bool operator!=(const TLElem& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ") " + m.str();
    }
    return out;
  }

 private:
  void require_same_shape(const TLElem& o) const {
    if (bot_ != o.bot_ || top_ != o.top_) {
      throw std::invalid_argument("element boundary shapes differ");
    }
  }
  int bot_;
  int top_;
  std::map<TLMatching, Coeff> terms_;
};

// Bilinear extension of stacking (a above b) with delta per deleted circle.
template <typename Coeff>
TLElem<Coeff> tl_mul(const TLElem<Coeff>& a, const TLElem<Coeff>& b) {
  if (a.bot() != b.top()) throw std::invalid_argument("stacked boundaries do not match");
  TLElem<Coeff> out(b.bot(), a.top());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto [m, circles] = compose(ma, mb);
      Coeff c = ca * cb;
      for (int i = 0; i < circles; ++i) c *= CoeffOps<Coeff>::delta();
      out.add_term(m, c);
    }
  }
  return out;
}

// Trace-closure evaluation of an (n, n) element: every term contributes its
// coefficient times delta^circles.
template <typename Coeff>
Coeff trace_closure_value(const TLElem<Coeff>& e) {
  Coeff out{};
  for (const auto& [m, c] : e.terms()) {
    Coeff t = c;
    int circles = closure_circles(m);
    for (int i = 0; i < circles; ++i) t *= CoeffOps<Coeff>::delta();
    out += t;
  }
  return out;
}

using TLPoly = TLElem<LaurentPoly>;
using TLRat = TLElem<RationalFunction>;
using TLSeries = TLElem<TruncatedSeries>;

}  // namespace braidkh
