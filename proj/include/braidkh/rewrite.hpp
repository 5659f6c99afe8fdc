#pragma once

// Partially resolved braid diagrams (crossings plus turnbacks), their exact
// Kauffman bracket, and the turnback-pulling simplifier that removes
// crossings through Reidemeister moves while accounting homological and
// q-degree shifts.

#include <string>
#include <utility>
#include <vector>

#include "braidkh/braid.hpp"
#include "braidkh/tl.hpp"

namespace braidkh {

// One elementary feature of a diagram, read top to bottom. Columns are
// 1-based. Cross swaps columns col, col+1 with a right-handed crossing;
// Death joins them by an arc (the strands end); Birth inserts two new
// strands at columns col, col+1, shifting higher columns right.
struct MorseEvent {
  enum class Kind { kCross, kDeath, kBirth };
  Kind kind;
  int col;
  bool operator==(const MorseEvent& o) const { return kind == o.kind && col == o.col; }
};

// A tangle with n strands at top and bottom. Constructed from full-width
// slices; rewriting may leave it in a more general event form, possibly
// with crossing-free circles split off.
class MixedTangle {
 public:
  struct Slice {
    enum class Kind { kCross, kTurnback };
    Kind kind;
    int index;
  };

  MixedTangle(int n, const std::vector<Slice>& slices, int r);
  static MixedTangle from_events(int n, std::vector<MorseEvent> events, int r, int detached);

  int n() const { return n_; }
  int r() const { return r_; }
  int detached_circles() const { return detached_; }
  const std::vector<MorseEvent>& events() const { return events_; }
  int cross_count() const;

  // True when the events decompose into full-width Cross/Turnback slices.
  bool is_slice_word() const;
  // Throws std::logic_error unless is_slice_word().
  std::vector<Slice> slices() const;

 private:
  MixedTangle(int n, int r) : n_(n), r_(r) {}
  int n_;
  int r_;
  int detached_ = 0;
  std::vector<MorseEvent> events_;
};

// Exact Kauffman bracket of the tangle, invariant under planar isotopy and
// Reidemeister moves. Crossings between strands of equal vertical direction
// contribute q I - q^2 e; reversed pairs contribute -q^-2 I + q^-1 e.
// Components touching the boundary are oriented by a fixed endpoint rule;
// closed components take the orientation minimizing the negative-crossing
// count, which is stable under the moves the rewriter performs.
TLPoly mixed_bracket(const MixedTangle& t);

// The i-th entry (1-based, counted bottom-up over non-diagonal positions)
// of the resolution cone: non-diagonal letters strictly below the chosen
// one are deleted, the chosen one becomes a turnback, everything else stays
// a crossing. Requires an all-right-handed word; throws std::out_of_range
// when i exceeds the non-diagonal count.
MixedTangle multicone_term(const BraidWord& w, const DiagonalSet& d, int i);

// One fully expanded term of that cone: the non-diagonal letters listed in
// `ones` become turnbacks, every other non-diagonal letter is erased, and
// only diagonal letters remain as crossings. Such diagrams are the ones the
// pulling bound covers; r equals the number of turnbacks taken. `ones` must
// be a nonempty duplicate-free subset of the non-diagonal positions.
MixedTangle resolved_cone_term(const BraidWord& w, const DiagonalSet& d,
                               const std::vector<int>& ones);

// Record of the simplification: s_h = R2 count + negative-R1 count and
// s_q = R2 count + 2 * negative-R1 count, with the per-move log and the
// diagonal count y the caller asked to beat.
struct ShiftLedger {
  struct Move {
    std::string kind;  // "r1", "r2", "r3", "zigzag" or "circle"
    int at;            // event index at application time
  };
  int s_h = 0;
  int s_q = 0;
  int y = 0;
  std::vector<Move> moves;
};

std::pair<int, int> shift_of_moves(int r2, int r1neg);

// Pulls every turnback through the crossings it can pass, applying R1/R2
// (and R3 to unblock) until quiescent. Requires at least one turnback.
// Throws std::logic_error if the accumulated s_h falls short of y: the
// schedule is expected to cross every diagonal.
std::pair<MixedTangle, ShiftLedger> pull_turnbacks(const MixedTangle& t, int y);

}  // namespace braidkh
