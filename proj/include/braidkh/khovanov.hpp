#pragma once

// Khovanov homology of closed braid-box diagrams via the cube of
// resolutions: closing a braid word or a rewritten tangle, counting the
// circles of each resolution state, assembling the bigraded cube complex
// over the integers, homology over Q, Z or F_2 (optionally after
// chain-level unit cancellation), stabilization tables for growing prefixes
// of an infinite braid, and the minimal-q-degree report for pulled cone
// terms.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "braidkh/braid.hpp"
#include "braidkh/rewrite.hpp"
#include "braidkh/ring.hpp"

namespace braidkh {

// How the box is closed into a link: top endpoint i is joined to bottom
// endpoint pairing[i] by an arc outside the box carrying one local maximum.
// Planarity of the outer region forces the identity pairing; trace() is
// that pairing routed around the right side. matched() data is kept as
// given and validated when a diagram is closed.
class ClosureSpec {
 public:
  static ClosureSpec trace() { return ClosureSpec(); }
  static ClosureSpec matched(std::vector<int> top_to_bottom);

  bool is_trace() const { return pairing_.empty(); }
  // The stored pairing as given; empty for the trace closure.
  const std::vector<int>& pairing() const { return pairing_; }
  // The pairing for an n-strand box; throws std::invalid_argument if the
  // stored data is not a planar pairing of that width.
  std::vector<int> resolve(int n) const;
  // Local maxima contributed by the closure arcs.
  int maxima(int n) const { return n; }

 private:
  std::vector<int> pairing_;
};

// A closed diagram: crossings hold arc ids at their four corners, and the
// gluing list joins arc ends across caps, cups and closure arcs. Detached
// circles ride along as isolated arcs, so every circle count includes them.
struct LinkDiagram {
  struct Tile {
    int nw, ne, sw, se;
    bool right_handed;
  };

  int strands = 0;
  int arc_count = 0;
  std::vector<Tile> tiles;
  std::vector<std::pair<int, int>> gluings;
  long n_plus = 0;
  long n_minus = 0;

  int crossings() const { return static_cast<int>(tiles.size()); }
  long shift_exponent() const { return n_plus - 2 * n_minus; }
  // Circles of one resolution state; bit k = 1 takes crossing k's
  // 1-smoothing (the turnback smoothing on a right-handed crossing).
  int circles(std::uint32_t bits) const;
  // Link components of the underlying (unresolved) diagram.
  int components() const;
};

LinkDiagram close(int n, const BraidWord& w, const ClosureSpec& c);
// Crossing signs come from orienting each component; components are
// directed downward at their smallest arc id, which trace closures of
// right-handed words render all-positive.
LinkDiagram close(const MixedTangle& t, const ClosureSpec& c);

int all_zero_circles(const LinkDiagram& link);

// The cube of resolutions over the integers. A generator is a resolution
// state together with a labeling of its circles by v+ (bit 0) or v- (bit
// 1); it sits in homological degree i = (ones in the state) - n^- and
// q-degree j = (labels' p) + (ones) + n^+ - 2 n^-. The differential flips
// one crossing to its 1-smoothing, merging or splitting circles by the
// Frobenius rules, with sign (-1)^(ones below the flipped bit). Every raw
// entry is a unit.
class CubeComplex {
 public:
  struct Entry {
    long src, dst;
    int coeff;
  };

  long generators() const { return total_; }
  int crossings() const { return crossings_; }
  long n_plus() const { return n_plus_; }
  long n_minus() const { return n_minus_; }
  // -1 when the full cube was built; otherwise states were kept only up to
  // this many 1-bits, and homology is reliable for i + n^- < max_ones().
  int max_ones() const { return max_ones_; }

  int gen_i(long g) const;
  long gen_j(long g) const;

  // Distinct q-degrees carrying generators, ascending.
  std::vector<long> j_values() const;
  // Generator counts per (i, j).
  std::map<std::pair<int, long>, long> generator_table() const;
  // Differential entries between generators of one q-degree, sorted.
  std::vector<Entry> block_entries(long j) const;
  // All differential entries; meant for small cubes and structure checks.
  std::vector<Entry> all_entries() const;

  // Sum of (-1)^i q^j over all generators, which homology preserves.
  LaurentPoly euler_characteristic() const;

 private:
  friend CubeComplex chain_complex(const LinkDiagram&, int, int);

  struct State {
    std::uint32_t bits;
    int circles;
    long offset;
    std::vector<int> circle_of_arc;
  };

  const State& state_of_gen(long g, std::uint32_t* mask) const;
  void edge_targets(int si, int k, std::uint32_t mask,
                    std::vector<std::pair<long, int>>* out) const;

  LinkDiagram link_;
  int crossings_ = 0;
  long n_plus_ = 0;
  long n_minus_ = 0;
  int max_ones_ = -1;
  long total_ = 0;
  std::vector<State> states_;
  std::vector<int> state_index_;
};

// Builds the cube. Throws std::length_error past max_crossings. max_ones
// >= 0 truncates the cube to states with at most that many 1-bits.
CubeComplex chain_complex(const LinkDiagram& link, int max_crossings = 20,
                          int max_ones = -1);

enum class Coefficients { kRationals, kIntegers, kZ2 };

struct BigradedGroup {
  long rank = 0;
  // Invariant factors > 1, each one cyclic torsion summand, ascending.
  std::vector<mpz_class> torsion;

  bool operator==(const BigradedGroup& o) const {
    return rank == o.rank && torsion == o.torsion;
  }
};

struct BigradedHomology {
  std::map<std::pair<int, long>, BigradedGroup> groups;

  long rank(int i, long j) const;
  BigradedHomology shifted(int di, long dj) const;

  bool operator==(const BigradedHomology& o) const { return groups == o.groups; }
  bool operator!=(const BigradedHomology& o) const { return !(*this == o); }
};

// Homology of the cube. With reduce set, unit differential entries are
// cancelled chain-level first (a homotopy equivalence over Z, so the answer
// is identical); the flag exists to test that claim. Torsion is reported
// for integer coefficients only.
BigradedHomology homology(const CubeComplex& cx, Coefficients coeffs,
                          bool reduce = true);

// Trace-or-matched closure homology with the (i, j) -> (i + n^-, j - N)
// shift applied, so right-handed words start at i = 0 and the tables of
// growing complete prefixes stabilize cell by cell.
BigradedHomology normalized_homology(int n, const BraidWord& w,
                                     const ClosureSpec& c, Coefficients coeffs,
                                     int max_crossings = 20, int max_ones = -1);

struct StabilizationCell {
  int i = 0;
  long j = 0;
  long stable_rank = 0;
  // Smallest prefix length whose rank persists through max_len.
  long stable_from = 0;
  // True when the rank is constant over at least the last `window` lengths.
  bool stabilized = false;
};

struct HomologyStabilizationReport {
  long max_len = 0;
  int i_max = 0;
  int window = 0;
  std::vector<StabilizationCell> braid_cells, torus_cells;
  // Rank histories per (i, j), index ell-1 for prefix length ell. Cells
  // absent from a map were zero for every length.
  std::map<std::pair<int, long>, std::vector<long>> braid_ranks, torus_ranks;
  bool braid_stabilized = false;
  bool torus_stabilized = false;
  // Stabilized tables agree cell by cell between the braid and the torus.
  bool tables_match = false;
};

// Normalized rational homology of prefix closures for lengths 1..max_len,
// restricted to i <= i_max, for the given spec and for the torus spec on
// the same strand count with the same closure.
HomologyStabilizationReport stabilization_homology_report(
    const InfiniteBraidSpec& spec, const ClosureSpec& c, long max_len,
    int i_max, int window = 3);

struct MinQReport {
  long min_shifted_q = 0;
  long formula = 0;
  bool equal = false;
  int all_zero = 0;
  long bound = 0;
  bool bound_ok = false;
};

// Closes a pulled tangle and compares the minimal generator q-degree of the
// shifted complex q^{-N+1+r+s_q} KC(closure) against 1 + r + s_q - (circles
// of the all-zero resolution); the diagram's own N cancels, so no
// orientation enters. Also checks that the formula value clears y minus the
// closure's maxima count.
MinQReport minq_check(const MixedTangle& t, const ShiftLedger& led,
                      const ClosureSpec& c, int r, int max_crossings = 20);

}  // namespace braidkh
