// End-to-end gate: one test case per headline claim of the library, each
// printing a single PASS/FAIL line with its runtime. Limits are generous
// wall-clock budgets for a single core; all value checks are exact.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "braidkh/bracket.hpp"
#include "braidkh/braid.hpp"
#include "braidkh/khovanov.hpp"
#include "braidkh/projector.hpp"
#include "braidkh/rewrite.hpp"
#include "braidkh/ring.hpp"
#include "braidkh/tl.hpp"

using namespace braidkh;

namespace {

// Collects the checks of one criterion and prints the verdict line. Every
// condition also lands in a doctest assertion so failures carry context.
class Gate {
 public:
  Gate(const char* name, double limit_seconds)
      : name_(name), limit_(limit_seconds), start_(std::chrono::steady_clock::now()) {}

  void check(bool cond) {
    ok_ = ok_ && cond;
    CHECK(cond);
  }

  void finish() {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    bool in_time = secs < limit_;
    ok_ = ok_ && in_time;
    CHECK(in_time);
    std::printf("%s  %s  (%.2f s, limit %.0f s)\n", ok_ ? "PASS" : "FAIL", name_, secs, limit_);
    std::fflush(stdout);
  }

 private:
  const char* name_;
  double limit_;
  bool ok_ = true;
  std::chrono::steady_clock::time_point start_;
};

BraidWord repeated(int letter, int times) { return BraidWord(times, letter); }

std::vector<int> random_signed_word(std::mt19937_64& gen, int n, int len) {
  std::vector<int> w(len);
  for (int& letter : w) {
    letter = 1 + static_cast<int>(gen() % (n - 1));
    if (gen() % 2) letter = -letter;
  }
  return w;
}

struct ConeDraw {
  BraidWord w;
  DiagonalSet d;
  std::vector<int> ones;
};

// Random fully resolved cone term on 2..4 strands with 6..14 letters: one
// mandatory turnback among the bottommost non-diagonal letters, a coin flip
// for each higher one. Words whose diagonal set leaves nothing to resolve
// are redrawn by the caller.
std::optional<ConeDraw> draw_cone(std::mt19937_64& gen) {
  int n = 2 + static_cast<int>(gen() % 3);
  int len = 6 + static_cast<int>(gen() % 9);
  BraidWord w(len);
  for (int& letter : w) letter = 1 + static_cast<int>(gen() % (n - 1));
  auto d = find_diagonals(n, w);
  auto nds = non_diagonal_positions(w, d);
  if (nds.empty()) {
    if (d.diagonals.size() < 2) return std::nullopt;
    size_t keep = 1 + gen() % (d.diagonals.size() - 1);
    d.diagonals.resize(keep);
    nds = non_diagonal_positions(w, d);
  }
  if (d.y() < 1 || nds.empty()) return std::nullopt;
  int i = 1 + static_cast<int>(gen() % std::min<size_t>(3, nds.size()));
  std::vector<int> ones = {nds[nds.size() - i]};
  for (size_t k = 0; k + i < nds.size(); ++k)
    if (gen() % 2 == 0) ones.push_back(nds[k]);
  return ConeDraw{std::move(w), std::move(d), std::move(ones)};
}

LaurentPoly table_euler(const BigradedHomology& h) {
  LaurentPoly chi;
  for (const auto& [key, grp] : h.groups) {
    mpz_class c = (key.first % 2 == 0 ? 1 : -1) * grp.rank;
    if (c != 0) chi = chi + LaurentPoly::monomial(c, key.second);
  }
  return chi;
}

}  // namespace

TEST_CASE("two strand projector series coefficients") {
  Gate gate("two strand projector series coefficients", 1.0);
  TLSeries jw = jw_series(2, 21);
  TLMatching id = TLMatching::identity(2);
  TLMatching cup = TLMatching::generator(2, 1);

  TruncatedSeries ic = jw.coeff(id);
  gate.check(ic.order() >= 21);
  auto ic_terms = ic.series_terms();
  gate.check(ic_terms.size() == 1);
  gate.check(!ic_terms.empty() && ic_terms[0] == std::pair<long, mpz_class>{0, 1});

  TruncatedSeries ec = jw.coeff(cup);
  gate.check(ec.order() >= 21);
  for (long exp = -21; exp <= 21; ++exp) {
    mpz_class want = 0;
    if (exp >= 1 && exp % 2 == 1) want = ((exp - 1) / 2) % 2 == 0 ? -1 : 1;
    gate.check(ec.coeff(exp) == want);
  }
  gate.finish();
}

TEST_CASE("crossing powers approximate the projector") {
  Gate gate("crossing powers approximate the projector", 1.0);
  TLSeries jw = jw_series(2, 39);
  auto basis = all_matchings(2);
  for (int len = 1; len <= 20; ++len) {
    TLPoly nb = normalized_bracket(2, repeated(1, len));
    for (const TLMatching& m : basis) {
      TruncatedSeries got = TruncatedSeries::from_poly(nb.coeff(m));
      TruncatedSeries want = jw.coeff(m);
      gate.check(agree_through(got, want, 2 * len - 1));
    }
  }
  gate.finish();
}

TEST_CASE("periodic three strand prefixes stabilize to the projector") {
  Gate gate("periodic three strand prefixes stabilize to the projector", 30.0);
  const long kMaxLen = 60;
  const long kOrder = 12;
  auto spec = InfiniteBraidSpec::periodic(3, {1, 2, 2, 1, 2});
  gate.check(is_complete(spec));

  TLSeries jw = jw_series(3, kOrder);
  std::vector<TLPoly> tail;
  for (long len = kMaxLen - 9; len <= kMaxLen; ++len)
    tail.push_back(normalized_bracket(3, prefix(spec, len)));

  auto basis = all_matchings(3);
  gate.check(basis.size() == 5);
  for (const TLMatching& m : basis) {
    std::set<long> exps;
    TruncatedSeries want = jw.coeff(m);
    for (const auto& [exp, c] : want.series_terms())
      if (exp <= kOrder) exps.insert(exp);
    for (const auto& poly : tail) {
      LaurentPoly pc = poly.coeff(m);
      for (const auto& [exp, c] : pc.terms())
        if (exp <= kOrder) exps.insert(exp);
    }
    for (long exp : exps) {
      mpz_class stable = tail.back().coeff(m).coeff(exp);
      for (const auto& poly : tail) gate.check(poly.coeff(m).coeff(exp) == stable);
      gate.check(stable == want.coeff(exp));
    }
  }

  // Negative control: a periodic word that never uses the second generator
  // is incomplete and its limit misses projector coefficients.
  auto bad = InfiniteBraidSpec::periodic(3, {1});
  gate.check(!is_complete(bad));
  TLPoly nb = normalized_bracket(3, prefix(bad, kMaxLen));
  bool all_match = true;
  for (const TLMatching& m : basis) {
    TruncatedSeries want = jw.coeff(m);
    for (const auto& [exp, c] : want.series_terms())
      if (exp <= kOrder && nb.coeff(m).coeff(exp) != c) all_match = false;
  }
  gate.check(!all_match);
  gate.finish();
}

TEST_CASE("projector axioms through five strands") {
  Gate gate("projector axioms through five strands", 60.0);
  for (int n = 1; n <= 5; ++n) {
    auto report = verify_axioms(jones_wenzl(n));
    gate.check(report.idempotent);
    gate.check(report.killed_by_turnbacks);
    gate.check(report.unit_identity_coeff);
  }
  gate.finish();
}

TEST_CASE("braid relation rewrites preserve the bracket") {
  Gate gate("braid relation rewrites preserve the bracket", 120.0);
  std::mt19937_64 gen(613001);
  int applied = 0, pair_moves = 0, far_moves = 0, triple_moves = 0;
  while (applied < 1000) {
    int n = 2 + static_cast<int>(gen() % 3);
    int len = 4 + static_cast<int>(gen() % 9);
    std::vector<int> w = random_signed_word(gen, n, len);
    TLPoly before = word_bracket(n, w);
    std::vector<int> out = w;
    int kind = static_cast<int>(gen() % 3);

    if (kind == 1) {
      std::vector<size_t> sites;
      for (size_t p = 0; p + 1 < out.size(); ++p)
        if (std::abs(std::abs(out[p]) - std::abs(out[p + 1])) >= 2) sites.push_back(p);
      if (!sites.empty()) {
        size_t p = sites[gen() % sites.size()];
        std::swap(out[p], out[p + 1]);
        ++far_moves;
      } else {
        kind = 0;
      }
    }
    if (kind == 2) {
      std::vector<size_t> sites;
      for (size_t p = 0; p + 2 < out.size(); ++p) {
        int a = out[p], b = out[p + 1];
        if (out[p + 2] == a && (a > 0) == (b > 0) && std::abs(std::abs(a) - std::abs(b)) == 1)
          sites.push_back(p);
      }
      if (!sites.empty()) {
        size_t p = sites[gen() % sites.size()];
        int a = out[p], b = out[p + 1];
        out[p] = b;
        out[p + 1] = a;
        out[p + 2] = b;
        ++triple_moves;
      } else {
        kind = 0;
      }
    }
    if (kind == 0) {
      int v = 1 + static_cast<int>(gen() % (n - 1));
      if (gen() % 2) v = -v;
      size_t p = gen() % (out.size() + 1);
      out.insert(out.begin() + p, {v, -v});
      ++pair_moves;
    }

    gate.check(word_bracket(n, out) == before);
    ++applied;
  }
  gate.check(applied == 1000);
  gate.check(pair_moves > 0);
  gate.check(far_moves > 0);
  gate.check(triple_moves > 0);
  gate.finish();
}

TEST_CASE("turnback pulling shift accounting") {
  Gate gate("turnback pulling shift accounting", 120.0);
  gate.check(shift_of_moves(3, 1) == std::pair<int, int>{4, 5});
  gate.check(shift_of_moves(6, 2) == std::pair<int, int>{8, 10});

  std::mt19937_64 gen(114113);
  int instances = 0;
  while (instances < 500) {
    auto drawn = draw_cone(gen);
    if (!drawn) continue;
    int y = drawn->d.y();
    MixedTangle t = resolved_cone_term(drawn->w, drawn->d, drawn->ones);
    TLPoly before = mixed_bracket(t);
    auto [out, led] = pull_turnbacks(t, y);
    ++instances;
    gate.check(led.s_h >= y && led.s_q >= led.s_h && mixed_bracket(out) == before &&
               out.r() == t.r());
  }
  gate.check(instances >= 500);
  gate.finish();
}

TEST_CASE("torus closure homology baselines") {
  Gate gate("torus closure homology baselines", 60.0);
  auto trace = ClosureSpec::trace();

  auto table = [](std::vector<std::tuple<int, long, long>> cells) {
    BigradedHomology h;
    for (auto [i, j, rank] : cells) h.groups[{i, j}].rank = rank;
    return h;
  };

  BraidWord hopf = {1, 1};
  auto hopf_cx = chain_complex(close(2, hopf, trace));
  auto hopf_q = homology(hopf_cx, Coefficients::kRationals);
  gate.check(hopf_q == table({{0, 0, 1}, {0, 2, 1}, {2, 4, 1}, {2, 6, 1}}));
  gate.check(homology(hopf_cx, Coefficients::kIntegers) == hopf_q);

  BraidWord tref = {1, 1, 1};
  auto tref_cx = chain_complex(close(2, tref, trace));
  auto tref_q = homology(tref_cx, Coefficients::kRationals);
  gate.check(tref_q == table({{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {3, 9, 1}}));
  BigradedHomology tref_z = table({{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {3, 9, 1}});
  tref_z.groups[{3, 7}].torsion = {mpz_class(2)};
  gate.check(homology(tref_cx, Coefficients::kIntegers) == tref_z);

  gate.check(hopf_cx.euler_characteristic() == closure_bracket(word_bracket(2, hopf)));
  gate.check(tref_cx.euler_characteristic() == closure_bracket(word_bracket(2, tref)));
  gate.check(table_euler(hopf_q) == hopf_cx.euler_characteristic());
  gate.check(table_euler(tref_q) == tref_cx.euler_characteristic());

  // A full 14-crossing cube, no truncation: every one of the 2^14 states.
  BraidWord big;
  for (int k = 0; k < 7; ++k) {
    big.push_back(1);
    big.push_back(2);
  }
  auto big_cx = chain_complex(close(3, big, trace));
  gate.check(big_cx.euler_characteristic() == closure_bracket(word_bracket(3, big)));
  auto big_q = homology(big_cx, Coefficients::kRationals);
  gate.check(table_euler(big_q) == big_cx.euler_characteristic());
  long total = 0;
  for (const auto& [key, grp] : big_q.groups) total += grp.rank;
  gate.check(total > 0);
  gate.finish();
}

TEST_CASE("normalized homology stabilizes onto the torus limit") {
  Gate gate("normalized homology stabilizes onto the torus limit", 600.0);
  auto trace = ClosureSpec::trace();

  auto two = stabilization_homology_report(InfiniteBraidSpec::periodic(2, {1}), trace, 10, 3);
  gate.check(two.braid_stabilized);
  gate.check(two.torus_stabilized);
  gate.check(two.tables_match);

  auto spec = InfiniteBraidSpec::periodic(3, {1, 2, 2, 1, 2});
  const long kLen = 16;
  gate.check(find_diagonals(3, prefix(spec, kLen)).y() >= 6);
  auto three = stabilization_homology_report(spec, trace, kLen, 2);
  gate.check(three.braid_stabilized);
  gate.check(three.torus_stabilized);
  gate.check(three.tables_match);
  gate.finish();
}

TEST_CASE("minimal q degree formula on the pulled corpus") {
  Gate gate("minimal q degree formula on the pulled corpus", 120.0);
  auto trace = ClosureSpec::trace();
  std::mt19937_64 gen(515001);
  int instances = 0;
  while (instances < 500) {
    auto drawn = draw_cone(gen);
    if (!drawn) continue;
    MixedTangle t = resolved_cone_term(drawn->w, drawn->d, drawn->ones);
    auto [out, led] = pull_turnbacks(t, drawn->d.y());
    auto report = minq_check(out, led, trace, t.r());
    ++instances;
    gate.check(report.equal && report.bound_ok);
  }
  gate.check(instances >= 500);
  gate.finish();
}
