#pragma once

// Deterministic generators for infinite positive braids, their finite
// prefixes, and the top-down diagonal scan that locates fractional twists
// inside a positive word.

#include <cstdint>
#include <vector>

namespace braidkh {

// Letter +-k is the k-th elementary crossing with that handedness.
using BraidWord = std::vector<int>;

// A recipe for an infinite braid word: an optional finite prefix of
// arbitrary-sign letters followed by an endless right-handed stream.
class InfiniteBraidSpec {
 public:
  enum class Kind { kPeriodic, kSeededRandom, kTorus };

  static InfiniteBraidSpec periodic(int n, BraidWord base, BraidWord finite_prefix = {});
  static InfiniteBraidSpec seeded_random(int n, std::uint64_t seed, BraidWord finite_prefix = {});
  // Periodic with base sigma_1 sigma_2 ... sigma_{n-1}, one fractional twist
  // per period.
  static InfiniteBraidSpec torus(int n, BraidWord finite_prefix = {});

  int n() const { return n_; }
  Kind kind() const { return kind_; }
  const BraidWord& base() const { return base_; }
  std::uint64_t seed() const { return seed_; }
  const BraidWord& finite_prefix() const { return finite_prefix_; }

 private:
  InfiniteBraidSpec(int n, Kind kind, BraidWord base, std::uint64_t seed, BraidWord finite_prefix);
  int n_;
  Kind kind_;
  BraidWord base_;
  std::uint64_t seed_;
  BraidWord finite_prefix_;
};

// First len letters of the infinite word. Deterministic: the seeded stream
// draws letters as 1 + (mt19937_64 output mod n-1), restarted from the seed
// on every call.
BraidWord prefix(const InfiniteBraidSpec& spec, long len);

// True when every generator index occurs infinitely often in the stream.
bool is_complete(const InfiniteBraidSpec& spec);

// Diagonals located in a word: each is one position per generator index
// 1..n-1, in order. y counts them; z counts visible full twists.
struct DiagonalSet {
  int n = 0;
  // Number of leading letters the scan ignored.
  int skip = 0;
  std::vector<std::vector<int>> diagonals;

  int y() const { return static_cast<int>(diagonals.size()); }
  int z() const { return y() / n; }
};

// Top-down scan: from the cursor find the first sigma_1, then below it the
// first sigma_2, and so on to sigma_{n-1}; that set of positions is one
// diagonal. Then scan back up taking the nearest earlier occurrence of each
// lower index in turn; the next diagonal's sigma_1 search starts just after
// the sigma_1 the back-scan reached. The first `skip` letters are ignored;
// negative letters beyond them are rejected.
DiagonalSet find_diagonals(int n, const BraidWord& w, int skip = 0);

// Positions of w at or past d.skip that no diagonal uses, in word order.
std::vector<int> non_diagonal_positions(const BraidWord& w, const DiagonalSet& d);

}  // namespace braidkh
