#include "braidkh/braid.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>

namespace braidkh {

namespace {

void check_letters(int n, const BraidWord& w, bool allow_negative, const char* what) {
  for (int v : w) {
    int k = v < 0 ? -v : v;
    if (k < 1 || k > n - 1 || (v < 0 && !allow_negative)) {
      throw std::invalid_argument(std::string(what) + " holds an invalid letter");
    }
  }
}

}  // namespace

InfiniteBraidSpec::InfiniteBraidSpec(int n, Kind kind, BraidWord base, std::uint64_t seed,
                                     BraidWord finite_prefix)
    : n_(n), kind_(kind), base_(std::move(base)), seed_(seed),
      finite_prefix_(std::move(finite_prefix)) {
  if (n_ < 2) throw std::invalid_argument("braid spec needs at least two strands");
  check_letters(n_, finite_prefix_, true, "finite prefix");
}

InfiniteBraidSpec InfiniteBraidSpec::periodic(int n, BraidWord base, BraidWord finite_prefix) {
  if (base.empty()) throw std::invalid_argument("periodic spec needs a nonempty base");
  check_letters(n, base, false, "periodic base");
  return InfiniteBraidSpec(n, Kind::kPeriodic, std::move(base), 0, std::move(finite_prefix));
}

InfiniteBraidSpec InfiniteBraidSpec::seeded_random(int n, std::uint64_t seed,
                                                   BraidWord finite_prefix) {
  return InfiniteBraidSpec(n, Kind::kSeededRandom, {}, seed, std::move(finite_prefix));
}

InfiniteBraidSpec InfiniteBraidSpec::torus(int n, BraidWord finite_prefix) {
  BraidWord base;
  for (int k = 1; k < n; ++k) base.push_back(k);
  return InfiniteBraidSpec(n, Kind::kTorus, std::move(base), 0, std::move(finite_prefix));
}

BraidWord prefix(const InfiniteBraidSpec& spec, long len) {
  if (len < 0) throw std::invalid_argument("prefix length must be nonnegative");
  BraidWord w;
  w.reserve(len);
  for (int v : spec.finite_prefix()) {
    if (static_cast<long>(w.size()) == len) return w;
    w.push_back(v);
  }
  if (spec.kind() == InfiniteBraidSpec::Kind::kSeededRandom) {
    std::mt19937_64 gen(spec.seed());
    while (static_cast<long>(w.size()) < len) {
      w.push_back(1 + static_cast<int>(gen() % static_cast<std::uint64_t>(spec.n() - 1)));
    }
  } else {
    const BraidWord& base = spec.base();
    for (size_t i = 0; static_cast<long>(w.size()) < len; i = (i + 1) % base.size()) {
      w.push_back(base[i]);
    }
  }
  return w;
}

bool is_complete(const InfiniteBraidSpec& spec) {
  if (spec.kind() != InfiniteBraidSpec::Kind::kPeriodic) return true;
  std::vector<bool> seen(spec.n(), false);
  for (int v : spec.base()) seen[v] = true;
  for (int k = 1; k < spec.n(); ++k) {
    if (!seen[k]) return false;
  }
  return true;
}

DiagonalSet find_diagonals(int n, const BraidWord& w, int skip) {
  if (n < 2) throw std::invalid_argument("diagonal scan needs at least two strands");
  if (skip < 0 || skip > static_cast<int>(w.size())) {
    throw std::invalid_argument("skip count out of range");
  }
  check_letters(n, BraidWord(w.begin() + skip, w.end()), false, "scanned word");

  const int len = static_cast<int>(w.size());
  DiagonalSet d;
  d.n = n;
  d.skip = skip;
  int cursor = skip;
  for (;;) {
    std::vector<int> diag;
    int from = cursor;
    for (int k = 1; k < n; ++k) {
      int p = from;
      while (p < len && w[p] != k) ++p;
      if (p == len) return d;
      diag.push_back(p);
      from = p + 1;
    }
    d.diagonals.push_back(diag);
    // Back-scan: nearest earlier occurrence of each lower index in turn.
    int b = diag.back();
    for (int k = n - 2; k >= 1; --k) {
      int p = b - 1;
      while (w[p] != k) --p;
      b = p;
    }
    cursor = b + 1;
  }
}

std::vector<int> non_diagonal_positions(const BraidWord& w, const DiagonalSet& d) {
  std::vector<bool> used(w.size(), false);
  for (const auto& diag : d.diagonals) {
    for (int p : diag) used[p] = true;
  }
  std::vector<int> out;
  for (int p = d.skip; p < static_cast<int>(w.size()); ++p) {
    if (!used[p]) out.push_back(p);
  }
  return out;
}

}  // namespace braidkh
