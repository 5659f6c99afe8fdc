#include "braidkh/projector.hpp"

#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace braidkh {

namespace {

// Embeds an (n-1, n-1) element into TL_n by appending an identity strand on
// the right: old point p maps to p for p < n-1 and to p+1 otherwise, and the
// new strand pairs bottom n-1 with top 2n-1.
TLRat include_strand(const TLRat& e, int n) {
  if (e.bot() != n - 1 || e.top() != n - 1) {
    throw std::invalid_argument("include_strand expects an (n-1, n-1) element");
  }
  TLRat out(n, n);
  for (const auto& [m, c] : e.terms()) {
    std::vector<int> mate(2 * n);
    auto lift = [n](int p) { return p < n - 1 ? p : p + 1; };
    for (int p = 0; p < 2 * (n - 1); ++p) mate[lift(p)] = lift(m.mate(p));
    mate[n - 1] = 2 * n - 1;
    mate[2 * n - 1] = n - 1;
    out.add_term(TLMatching(n, n, std::move(mate)), c);
  }
  return out;
}

}  // namespace

Projector jones_wenzl(int n) {
  if (n < 1) throw std::invalid_argument("jones_wenzl requires n >= 1");
  static std::mutex mu;
  static std::vector<TLRat> memo;
  std::lock_guard<std::mutex> lock(mu);
  if (memo.empty()) memo.push_back(TLRat::identity(1));
  while (static_cast<int>(memo.size()) < n) {
    int m = static_cast<int>(memo.size()) + 1;
    TLRat prev = include_strand(memo.back(), m);
    RationalFunction ratio(quantum_int(m - 1), quantum_int(m));
    TLRat side = tl_mul(tl_mul(prev, TLRat::generator(m, m - 1)), prev);
    memo.push_back(prev - side.scaled(ratio));
  }
  return Projector{n, memo[n - 1]};
}

ProjectorAxiomReport verify_axioms(const Projector& p) {
  ProjectorAxiomReport r;
  const TLRat& x = p.element;
  r.idempotent = (tl_mul(x, x) == x);
  r.killed_by_turnbacks = true;
  for (int i = 1; i < p.n; ++i) {
    TLRat e = TLRat::generator(p.n, i);
    if (!tl_mul(e, x).is_zero() || !tl_mul(x, e).is_zero()) {
      r.killed_by_turnbacks = false;
    }
  }
  r.unit_identity_coeff = (x.coeff(TLMatching::identity(p.n)) == RationalFunction::one());
  return r;
}

TLSeries jw_series(int n, long order) {
  if (order < 0) throw std::invalid_argument("jw_series requires order >= 0");
  Projector p = jones_wenzl(n);
  TLSeries out(n, n);
  for (const auto& [m, c] : p.element.terms()) {
    out.add_term(m, expand_series(c, order));
  }
  return out;
}

}  // namespace braidkh
