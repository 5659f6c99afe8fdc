#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "braidkh/bracket.hpp"
#include "braidkh/braid.hpp"
#include "braidkh/khovanov.hpp"
#include "braidkh/rewrite.hpp"
#include "braidkh/tl.hpp"

using namespace braidkh;

namespace {

BigradedHomology raw_homology(int n, const BraidWord& w, Coefficients coeffs,
                              bool reduce = true) {
  auto cx = chain_complex(close(n, w, ClosureSpec::trace()));
  return homology(cx, coeffs, reduce);
}

BigradedHomology table_of(std::vector<std::tuple<int, long, long>> cells) {
  BigradedHomology h;
  for (auto [i, j, rank] : cells) h.groups[{i, j}].rank = rank;
  return h;
}

std::string show(const BigradedHomology& h) {
  std::ostringstream os;
  for (const auto& [key, grp] : h.groups) {
    os << "(" << key.first << "," << key.second << "): rank " << grp.rank;
    for (const auto& t : grp.torsion) os << " t" << t;
    os << "; ";
  }
  return os.str();
}

BraidWord random_signed_word(std::mt19937_64& gen, int n, int len) {
  BraidWord w(len);
  for (int& letter : w) {
    letter = 1 + static_cast<int>(gen() % (n - 1));
    if (gen() % 2) letter = -letter;
  }
  return w;
}

struct ConeDraw {
  int n;
  BraidWord w;
  DiagonalSet d;
  std::vector<int> ones;
};

std::optional<ConeDraw> draw_cone(std::mt19937_64& gen) {
  int n = 2 + static_cast<int>(gen() % 3);
  int len = 5 + static_cast<int>(gen() % 6);
  BraidWord w(len);
  for (int& letter : w) letter = 1 + static_cast<int>(gen() % (n - 1));
  auto d = find_diagonals(n, w);
  auto nds = non_diagonal_positions(w, d);
  if (nds.empty() || d.y() < 1) return std::nullopt;
  std::vector<int> ones = {nds.back()};
  for (size_t k = 0; k + 1 < nds.size(); ++k) {
    if (gen() % 2 == 0) ones.push_back(nds[k]);
  }
  return ConeDraw{n, std::move(w), std::move(d), std::move(ones)};
}

std::string describe(const ConeDraw& c) {
  std::ostringstream os;
  os << "n=" << c.n << " y=" << c.d.y() << " word:";
  for (int letter : c.w) os << " " << letter;
  os << " turnbacks at:";
  for (int p : c.ones) os << " " << p;
  return os.str();
}

}  // namespace

TEST_CASE("closure pairings are validated") {
  CHECK(ClosureSpec::trace().resolve(3) == std::vector<int>{0, 1, 2});
  CHECK(ClosureSpec::matched({0, 1, 2}).resolve(3) == std::vector<int>{0, 1, 2});
  CHECK(ClosureSpec::matched({0}).resolve(1) == std::vector<int>{0});
  CHECK_THROWS_AS(ClosureSpec::matched({1, 0}).resolve(2), std::invalid_argument);
  CHECK_THROWS_AS(ClosureSpec::matched({2, 1, 0}).resolve(3), std::invalid_argument);
  CHECK_THROWS_AS(ClosureSpec::matched({0, 0}).resolve(2), std::invalid_argument);
  CHECK_THROWS_AS(ClosureSpec::matched({0, 2}).resolve(2), std::invalid_argument);
  CHECK_THROWS_AS(ClosureSpec::matched({0, 1}).resolve(3), std::invalid_argument);
  CHECK_THROWS_AS(close(2, {2}, ClosureSpec::trace()), std::invalid_argument);
  CHECK_THROWS_AS(close(2, {0}, ClosureSpec::trace()), std::invalid_argument);
}

TEST_CASE("resolution circles and component counts") {
  auto trace = ClosureSpec::trace();
  CHECK(all_zero_circles(close(2, {1, 1, 1}, trace)) == 2);
  CHECK(all_zero_circles(close(2, {}, trace)) == 2);
  CHECK(all_zero_circles(close(3, {1, 2, 1, 2, 1, 2}, trace)) == 3);

  // One crossing in the two strand box: the all-zero resolution keeps the
  // two closure circles, the all-one resolution merges them.
  auto kink = close(2, {1}, trace);
  CHECK(kink.circles(0) == 2);
  CHECK(kink.circles(1) == 1);

  CHECK(close(2, {}, trace).components() == 2);
  CHECK(close(2, {1, 1}, trace).components() == 2);
  CHECK(close(2, {1, 1, 1}, trace).components() == 1);
  CHECK(close(3, {1, 2}, trace).components() == 1);
  CHECK(close(1, {}, trace).components() == 1);
}

TEST_CASE("one-kink diagrams give the unknot table") {
  auto unknot = table_of({{0, -1, 1}, {0, 1, 1}});
  for (auto coeffs : {Coefficients::kRationals, Coefficients::kIntegers, Coefficients::kZ2}) {
    CHECK(raw_homology(1, {}, coeffs) == unknot);
    CHECK(raw_homology(2, {1}, coeffs) == unknot);
    CHECK(raw_homology(2, {-1}, coeffs) == unknot);
    CHECK(raw_homology(3, {1, 2}, coeffs) == unknot);
    CHECK(raw_homology(3, {-1, -2}, coeffs) == unknot);
  }
}

TEST_CASE("hopf link homology") {
  auto hopf = table_of({{0, 0, 1}, {0, 2, 1}, {2, 4, 1}, {2, 6, 1}});
  for (auto coeffs : {Coefficients::kRationals, Coefficients::kIntegers, Coefficients::kZ2}) {
    auto h = raw_homology(2, {1, 1}, coeffs);
    INFO(show(h));
    CHECK(h == hopf);
  }
}

TEST_CASE("trefoil homology with its torsion") {
  auto q = raw_homology(2, {1, 1, 1}, Coefficients::kRationals);
  INFO(show(q));
  CHECK(q == table_of({{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {3, 9, 1}}));

  auto z = raw_homology(2, {1, 1, 1}, Coefficients::kIntegers);
  INFO(show(z));
  auto expected_z = table_of({{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {3, 9, 1}});
  expected_z.groups[{3, 7}].torsion = {mpz_class(2)};
  CHECK(z == expected_z);

  auto z2 = raw_homology(2, {1, 1, 1}, Coefficients::kZ2);
  INFO(show(z2));
  CHECK(z2 == table_of({{0, 1, 1}, {0, 3, 1}, {2, 5, 1}, {2, 7, 1}, {3, 7, 1}, {3, 9, 1}}));

  // The same answers from the unreduced complex.
  CHECK(raw_homology(2, {1, 1, 1}, Coefficients::kIntegers, false) == expected_z);
}

TEST_CASE("normalized trefoil table") {
  auto h = normalized_homology(2, {1, 1, 1}, ClosureSpec::trace(), Coefficients::kRationals);
  INFO(show(h));
  CHECK(h == table_of({{0, -2, 1}, {0, 0, 1}, {2, 2, 1}, {3, 6, 1}}));
}

TEST_CASE("euler characteristic equals the closed bracket") {
  std::mt19937_64 gen(321001);
  int checked = 0;
  while (checked < 40) {
    int n = 2 + static_cast<int>(gen() % 3);
    int len = static_cast<int>(gen() % 9);
    BraidWord w = random_signed_word(gen, n, len);
    auto cx = chain_complex(close(n, w, ClosureSpec::trace()));
    LaurentPoly expected = closure_bracket(word_bracket(n, w));
    std::ostringstream os;
    os << "n=" << n << " word:";
    for (int letter : w) os << " " << letter;
    INFO(os.str());
    CHECK(cx.euler_characteristic() == expected);
    ++checked;
  }
}

TEST_CASE("the cube differential squares to zero") {
  std::mt19937_64 gen(321002);
  int checked = 0;
  while (checked < 25) {
    int n = 2 + static_cast<int>(gen() % 3);
    int len = 1 + static_cast<int>(gen() % 6);
    BraidWord w = random_signed_word(gen, n, len);
    auto cx = chain_complex(close(n, w, ClosureSpec::trace()));
    auto entries = cx.all_entries();
    std::map<long, std::vector<std::pair<long, int>>> out;
    for (const auto& e : entries) out[e.src].push_back({e.dst, e.coeff});
    std::map<std::pair<long, long>, long> square;
    for (const auto& [a, row] : out) {
      for (auto [b, c1] : row) {
        auto it = out.find(b);
        if (it == out.end()) continue;
        for (auto [c, c2] : it->second) square[{a, c}] += static_cast<long>(c1) * c2;
      }
    }
    for (const auto& [key, v] : square) CHECK(v == 0);
    ++checked;
  }
}

TEST_CASE("cancellation leaves homology unchanged") {
  std::mt19937_64 gen(321003);
  int checked = 0;
  while (checked < 12) {
    int n = 2 + static_cast<int>(gen() % 3);
    int len = 3 + static_cast<int>(gen() % 5);
    BraidWord w = random_signed_word(gen, n, len);
    auto cx = chain_complex(close(n, w, ClosureSpec::trace()));
    std::ostringstream os;
    os << "n=" << n << " word:";
    for (int letter : w) os << " " << letter;
    INFO(os.str());
    for (auto coeffs : {Coefficients::kRationals, Coefficients::kIntegers, Coefficients::kZ2}) {
      CHECK(homology(cx, coeffs, true) == homology(cx, coeffs, false));
    }
    ++checked;
  }
}

TEST_CASE("truncated cubes agree below the cutoff") {
  BraidWord w = {1, 2, 2, 1, 2, 1, 2, 2, 1, 2};
  auto trace = ClosureSpec::trace();
  auto full = normalized_homology(3, w, trace, Coefficients::kRationals);
  auto part = normalized_homology(3, w, trace, Coefficients::kRationals, 20, 3);
  auto slice = [](const BigradedHomology& h, int i_max) {
    BigradedHomology out;
    for (const auto& [key, grp] : h.groups) {
      if (key.first <= i_max) out.groups[key] = grp;
    }
    return out;
  };
  INFO(show(part));
  CHECK(slice(full, 2) == slice(part, 2));
}

TEST_CASE("stabilization pair insertion shifts the table by one-one") {
  auto trace = ClosureSpec::trace();
  BraidWord w = {1, 2};
  for (BraidWord grown : {BraidWord{1, 2, 2, -2}, BraidWord{1, -1, 1, 2}, BraidWord{2, -2, 1, 2}}) {
    auto before = normalized_homology(3, w, trace, Coefficients::kIntegers);
    auto after = normalized_homology(3, grown, trace, Coefficients::kIntegers);
    INFO(show(after));
    CHECK(after == before.shifted(1, 1));
  }
}

TEST_CASE("braid relations leave homology alone") {
  auto trace = ClosureSpec::trace();
  CHECK(normalized_homology(4, {1, 3, 2, 1}, trace, Coefficients::kIntegers) ==
        normalized_homology(4, {3, 1, 2, 1}, trace, Coefficients::kIntegers));
  CHECK(normalized_homology(3, {1, 2, 1}, trace, Coefficients::kIntegers) ==
        normalized_homology(3, {2, 1, 2}, trace, Coefficients::kIntegers));
  CHECK(normalized_homology(3, {1, 2, 1, 2, 2}, trace, Coefficients::kIntegers) ==
        normalized_homology(3, {2, 1, 2, 2, 2}, trace, Coefficients::kIntegers));
}

TEST_CASE("pulled cone terms keep the closure homology") {
  std::mt19937_64 gen(321004);
  auto trace = ClosureSpec::trace();
  int checked = 0, attempts = 0;
  while (checked < 10 && ++attempts < 4000) {
    auto drawn = draw_cone(gen);
    if (!drawn) continue;
    MixedTangle t = resolved_cone_term(drawn->w, drawn->d, drawn->ones);
    LinkDiagram before_link = close(t, trace);
    if (before_link.components() != 1) continue;
    INFO(describe(*drawn));

    auto before_cx = chain_complex(before_link);

    // Independent Euler check: fold the slices into a plain bracket element,
    // close it, and put back the orientation factor of the closed diagram.
    TLPoly naive = TLPoly::identity(t.n());
    for (const auto& s : t.slices()) {
      TLPoly layer = s.kind == MixedTangle::Slice::Kind::kCross
                         ? letter_bracket(t.n(), s.index, 1)
                         : TLPoly::generator(t.n(), s.index);
      naive = tl_mul(naive, layer);
    }
    LaurentPoly naive_closed = closure_bracket(naive);
    for (int k = 0; k < t.detached_circles(); ++k) naive_closed = naive_closed * LaurentPoly::delta();
    LaurentPoly factor = pow(LaurentPoly::monomial(-1, -3),
                             static_cast<unsigned long>(before_link.n_minus));
    CHECK(before_cx.euler_characteristic() == factor * naive_closed);

    auto before = homology(before_cx, Coefficients::kIntegers);

    auto [pulled, led] = pull_turnbacks(t, drawn->d.y());
    auto after = homology(chain_complex(close(pulled, trace)), Coefficients::kIntegers);
    INFO(show(before));
    INFO(show(after));
    CHECK(before == after);
    ++checked;
  }
  CHECK(checked == 10);
}

TEST_CASE("minimum q degree report on pulled cone terms") {
  std::mt19937_64 gen(321005);
  auto trace = ClosureSpec::trace();
  int checked = 0, attempts = 0;
  while (checked < 12 && ++attempts < 4000) {
    auto drawn = draw_cone(gen);
    if (!drawn) continue;
    MixedTangle t = resolved_cone_term(drawn->w, drawn->d, drawn->ones);
    auto [pulled, led] = pull_turnbacks(t, drawn->d.y());
    auto report = minq_check(pulled, led, trace, t.r());
    INFO(describe(*drawn));
    CHECK(report.equal);
    CHECK(report.bound_ok);
    CHECK(report.min_shifted_q == 1 + t.r() + led.s_q - report.all_zero);
    ++checked;
  }
  CHECK(checked == 12);
}

TEST_CASE("two strand twists stabilize onto the torus stream") {
  auto spec = InfiniteBraidSpec::periodic(2, {1});
  auto report = stabilization_homology_report(spec, ClosureSpec::trace(), 8, 2, 3);
  CHECK(report.braid_stabilized);
  CHECK(report.torus_stabilized);
  CHECK(report.tables_match);

  std::map<std::pair<int, long>, std::pair<long, long>> cells;
  for (const auto& cell : report.braid_cells) {
    cells[{cell.i, cell.j}] = {cell.stable_rank, cell.stable_from};
  }
  REQUIRE(cells.size() == 4);
  CHECK(cells[{0, -2}] == std::pair<long, long>{1, 1});
  CHECK(cells[{0, 0}] == std::pair<long, long>{1, 1});
  CHECK(cells[{2, 2}] == std::pair<long, long>{1, 2});
  CHECK(cells[{2, 4}] == std::pair<long, long>{0, 3});

  // The comparison stream is the same braid, so the histories agree too.
  CHECK(report.braid_ranks == report.torus_ranks);
}
