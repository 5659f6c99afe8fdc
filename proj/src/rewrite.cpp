#include "braidkh/rewrite.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

namespace braidkh {

namespace {

using Kind = MorseEvent::Kind;

// Widths above each event and after the last one; validates column ranges.
std::vector<int> simulate_widths(int n, const std::vector<MorseEvent>& ev) {
  std::vector<int> w;
  w.reserve(ev.size() + 1);
  int cur = n;
  for (const auto& e : ev) {
    w.push_back(cur);
    switch (e.kind) {
      case Kind::kCross:
        if (e.col < 1 || e.col > cur - 1) throw std::invalid_argument("crossing column out of range");
        break;
      case Kind::kDeath:
        if (e.col < 1 || e.col > cur - 1) throw std::invalid_argument("death column out of range");
        cur -= 2;
        break;
      case Kind::kBirth:
        if (e.col < 1 || e.col > cur + 1) throw std::invalid_argument("birth column out of range");
        cur += 2;
        break;
    }
  }
  w.push_back(cur);
  return w;
}

// Horizontal extents in half-column units: the strand pair {c, c+1} occupies
// [2c, 2c+2]; the gap between columns c-1 and c is the odd point 2c-1. Two
// adjacent events commute exactly when the upper one's bottom extent misses
// the lower one's top extent.
struct Extent {
  int lo, hi;
};

bool extents_overlap(Extent a, Extent b) { return a.lo <= b.hi && b.lo <= a.hi; }

int anchor2(const MorseEvent& e) { return e.kind == Kind::kBirth ? 2 * e.col - 1 : 2 * e.col; }

void set_anchor2(MorseEvent& e, int a2) { e.col = e.kind == Kind::kBirth ? (a2 + 1) / 2 : a2 / 2; }

Extent top_extent(const MorseEvent& e) {
  if (e.kind == Kind::kBirth) return {2 * e.col - 1, 2 * e.col - 1};
  return {2 * e.col, 2 * e.col + 2};
}

Extent bottom_extent(const MorseEvent& e) {
  if (e.kind == Kind::kDeath) return {2 * e.col - 1, 2 * e.col - 1};
  return {2 * e.col, 2 * e.col + 2};
}

// Anchor renumbering for an object slid from just below event e to just
// above it. Births shift material at columns >= b by two; deaths shift it
// back. Callers check extent disjointness first.
int lift_anchor(int a2, const MorseEvent& e) {
  switch (e.kind) {
    case Kind::kBirth: return a2 > 2 * e.col + 2 ? a2 - 4 : a2;
    case Kind::kDeath: return a2 >= 2 * e.col ? a2 + 4 : a2;
    case Kind::kCross: break;
  }
  return a2;
}

// The inverse slide: from just above e to just below it.
int lower_anchor(int a2, const MorseEvent& e) {
  switch (e.kind) {
    case Kind::kBirth: return a2 >= 2 * e.col - 1 ? a2 + 4 : a2;
    case Kind::kDeath: return a2 > 2 * e.col + 2 ? a2 - 4 : a2;
    case Kind::kCross: break;
  }
  return a2;
}

struct Plan {
  enum class Type { kCircle, kZigzag, kD1, kD2, kD3, kU1, kU2, kU3, kR3 };
  Type type;
  std::vector<int> idx;  // pattern event indices, ascending
};

bool is_free(Plan::Type t) { return t == Plan::Type::kCircle || t == Plan::Type::kZigzag; }
bool is_down(Plan::Type t) {
  return t == Plan::Type::kD1 || t == Plan::Type::kD2 || t == Plan::Type::kD3;
}
bool is_up(Plan::Type t) {
  return t == Plan::Type::kU1 || t == Plan::Type::kU2 || t == Plan::Type::kU3;
}

class Engine {
 public:
  Engine(int n, std::vector<MorseEvent> ev, int detached)
      : n_(n), ev_(std::move(ev)), detached_(detached) {}

  int cross_count() const {
    int c = 0;
    for (const auto& e : ev_) c += e.kind == Kind::kCross ? 1 : 0;
    return c;
  }

  void run() {
    long c0 = cross_count();
    long budget = 3 * c0 * c0 + 10;
    for (;;) {
      if (try_reduce()) continue;
      if (r3_used_ < budget && try_r3(budget)) continue;
      break;
    }
  }

  const std::vector<MorseEvent>& events() const { return ev_; }
  int detached() const { return detached_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  const std::vector<ShiftLedger::Move>& log() const { return log_; }

 private:
  // Downward walk from the birth at p. Events disjoint from the tracked
  // strand pair are stepped past (renumbering the pair as if it slid below
  // them); the first interacting event decides the pattern.
  std::optional<Plan> find_down(int p) const {
    int c = ev_[p].col;
    size_t q = p + 1;
    for (; q < ev_.size(); ++q) {
      const MorseEvent& g = ev_[q];
      if (!extents_overlap({2 * c, 2 * c + 2}, top_extent(g))) {
        c = lower_anchor(2 * c, g) / 2;
        continue;
      }
      break;
    }
    if (q == ev_.size()) return std::nullopt;
    const MorseEvent& g = ev_[q];
    if (g.kind == Kind::kDeath) {
      if (g.col == c) return Plan{Plan::Type::kCircle, {p, static_cast<int>(q)}};
      return Plan{Plan::Type::kZigzag, {p, static_cast<int>(q)}};
    }
    if (g.kind != Kind::kCross) return std::nullopt;
    if (g.col == c) return Plan{Plan::Type::kD1, {p, static_cast<int>(q)}};
    bool right = g.col == c + 1;
    int e1 = static_cast<int>(q);
    for (size_t q2 = q + 1; q2 < ev_.size(); ++q2) {
      const MorseEvent& h = ev_[q2];
      if (!extents_overlap({2 * c, 2 * c + 2}, top_extent(h))) {
        c = lower_anchor(2 * c, h) / 2;
        continue;
      }
      if (h.kind == Kind::kCross && h.col == c)
        return Plan{right ? Plan::Type::kD2 : Plan::Type::kD3, {p, e1, static_cast<int>(q2)}};
      return std::nullopt;
    }
    return std::nullopt;
  }

  // Mirror walk upward from the death at p.
  std::optional<Plan> find_up(int p) const {
    int c = ev_[p].col;
    int q = p - 1;
    for (; q >= 0; --q) {
      const MorseEvent& g = ev_[q];
      if (!extents_overlap(bottom_extent(g), {2 * c, 2 * c + 2})) {
        c = lift_anchor(2 * c, g) / 2;
        continue;
      }
      break;
    }
    if (q < 0) return std::nullopt;
    const MorseEvent& g = ev_[q];
    if (g.kind == Kind::kBirth) {
      if (g.col == c) return Plan{Plan::Type::kCircle, {q, p}};
      return Plan{Plan::Type::kZigzag, {q, p}};
    }
    if (g.kind != Kind::kCross) return std::nullopt;
    if (g.col == c) return Plan{Plan::Type::kU1, {q, p}};
    bool right = g.col == c + 1;
    int e1 = q;
    for (int q2 = q - 1; q2 >= 0; --q2) {
      const MorseEvent& h = ev_[q2];
      if (!extents_overlap(bottom_extent(h), {2 * c, 2 * c + 2})) {
        c = lift_anchor(2 * c, h) / 2;
        continue;
      }
      if (h.kind == Kind::kCross && h.col == c)
        return Plan{right ? Plan::Type::kU2 : Plan::Type::kU3, {q2, e1, p}};
      return std::nullopt;
    }
    return std::nullopt;
  }

  // Braid-relation triple anchored at the crossing at p, found by the same
  // downward walk.
  std::optional<Plan> find_r3(int p) const {
    int c = ev_[p].col;
    size_t q = p + 1;
    for (; q < ev_.size(); ++q) {
      const MorseEvent& g = ev_[q];
      if (!extents_overlap({2 * c, 2 * c + 2}, top_extent(g))) {
        c = lower_anchor(2 * c, g) / 2;
        continue;
      }
      break;
    }
    if (q == ev_.size()) return std::nullopt;
    const MorseEvent& g = ev_[q];
    if (g.kind != Kind::kCross || (g.col != c - 1 && g.col != c + 1)) return std::nullopt;
    int e1 = static_cast<int>(q);
    for (size_t q2 = q + 1; q2 < ev_.size(); ++q2) {
      const MorseEvent& h = ev_[q2];
      if (!extents_overlap({2 * c, 2 * c + 2}, top_extent(h))) {
        c = lower_anchor(2 * c, h) / 2;
        continue;
      }
      if (h.kind == Kind::kCross && h.col == c)
        return Plan{Plan::Type::kR3, {p, e1, static_cast<int>(q2)}};
      return std::nullopt;
    }
    return std::nullopt;
  }

  bool can_swap(int i) const {
    return !extents_overlap(bottom_extent(ev_[i]), top_extent(ev_[i + 1]));
  }

  // Swaps the adjacent events i, i+1, renumbering both against the other's
  // original position.
  void swap_pair(int i) {
    MorseEvent e = ev_[i];
    MorseEvent f = ev_[i + 1];
    MorseEvent f2 = f;
    MorseEvent e2 = e;
    set_anchor2(f2, lift_anchor(anchor2(f), e));
    set_anchor2(e2, lower_anchor(anchor2(e), f));
    ev_[i] = f2;
    ev_[i + 1] = e2;
  }

  bool feasible_exit_up(int i, int lo) const {
    MorseEvent m = ev_[i];
    for (int j = i - 1; j >= lo; --j) {
      if (extents_overlap(bottom_extent(ev_[j]), top_extent(m))) return false;
      set_anchor2(m, lift_anchor(anchor2(m), ev_[j]));
    }
    return true;
  }

  bool feasible_exit_down(int i, int hi) const {
    MorseEvent m = ev_[i];
    for (int j = i + 1; j <= hi; ++j) {
      if (extents_overlap(bottom_extent(m), top_extent(ev_[j]))) return false;
      set_anchor2(m, lower_anchor(anchor2(m), ev_[j]));
    }
    return true;
  }

  // Clears everything between the pattern events by sliding bystanders out
  // of the window, top or bottom, one at a time. Returns the base index of
  // the now-adjacent pattern, or -1 when the window is stuck. Slides are
  // equivalences, so a failed attempt leaves an equal tangle.
  int materialize(std::vector<int> pat) {
    for (;;) {
      int lo = pat.front();
      int hi = pat.back();
      int moving = -1;
      bool up = false;
      for (int i = lo + 1; i < hi; ++i) {
        if (std::find(pat.begin(), pat.end(), i) != pat.end()) continue;
        if (feasible_exit_up(i, lo)) {
          moving = i;
          up = true;
          break;
        }
        if (feasible_exit_down(i, hi)) {
          moving = i;
          break;
        }
      }
      if (moving < 0) {
        bool clean = hi - lo + 1 == static_cast<int>(pat.size());
        return clean ? lo : -1;
      }
      if (up) {
        for (int j = moving; j > lo; --j) swap_pair(j - 1);
        for (int& x : pat)
          if (x >= lo && x < moving) ++x;
      } else {
        for (int j = moving; j < hi; ++j) swap_pair(j);
        for (int& x : pat)
          if (x > moving && x <= hi) --x;
      }
    }
  }

  MorseEvent& at(int k) { return ev_[k]; }

  void expect(bool ok) {
    if (!ok) throw std::logic_error("rewrite pattern lost its shape");
  }

  bool try_apply(const Plan& plan) {
    int k = materialize(plan.idx);
    if (k < 0) return false;
    switch (plan.type) {
      case Plan::Type::kCircle: {
        expect(at(k).kind == Kind::kBirth && at(k + 1).kind == Kind::kDeath &&
               at(k).col == at(k + 1).col);
        ev_.erase(ev_.begin() + k, ev_.begin() + k + 2);
        ++detached_;
        log_.push_back({"circle", k});
        return true;
      }
      case Plan::Type::kZigzag: {
        expect(at(k).kind == Kind::kBirth && at(k + 1).kind == Kind::kDeath &&
               std::abs(at(k).col - at(k + 1).col) == 1);
        ev_.erase(ev_.begin() + k, ev_.begin() + k + 2);
        log_.push_back({"zigzag", k});
        return true;
      }
      case Plan::Type::kD1: {
        expect(at(k).kind == Kind::kBirth && at(k + 1).kind == Kind::kCross &&
               at(k).col == at(k + 1).col);
        ev_.erase(ev_.begin() + k + 1);
        ++r1_;
        log_.push_back({"r1", k});
        return true;
      }
      case Plan::Type::kD2:
      case Plan::Type::kD3: {
        int d = plan.type == Plan::Type::kD2 ? 1 : -1;
        int c = at(k).col;
        expect(at(k).kind == Kind::kBirth && at(k + 1).kind == Kind::kCross &&
               at(k + 2).kind == Kind::kCross && at(k + 1).col == c + d && at(k + 2).col == c);
        at(k) = {Kind::kBirth, c + d};
        ev_.erase(ev_.begin() + k + 1, ev_.begin() + k + 3);
        ++r2_;
        log_.push_back({"r2", k});
        return true;
      }
      case Plan::Type::kU1: {
        expect(at(k).kind == Kind::kCross && at(k + 1).kind == Kind::kDeath &&
               at(k).col == at(k + 1).col);
        ev_.erase(ev_.begin() + k);
        ++r1_;
        log_.push_back({"r1", k});
        return true;
      }
      case Plan::Type::kU2:
      case Plan::Type::kU3: {
        int d = plan.type == Plan::Type::kU2 ? 1 : -1;
        int c = at(k + 2).col;
        expect(at(k).kind == Kind::kCross && at(k + 1).kind == Kind::kCross &&
               at(k + 2).kind == Kind::kDeath && at(k).col == c && at(k + 1).col == c + d);
        at(k) = {Kind::kDeath, c + d};
        ev_.erase(ev_.begin() + k + 1, ev_.begin() + k + 3);
        ++r2_;
        log_.push_back({"r2", k});
        return true;
      }
      case Plan::Type::kR3: {
        int a = at(k).col;
        int b = at(k + 1).col;
        expect(at(k).kind == Kind::kCross && at(k + 1).kind == Kind::kCross &&
               at(k + 2).kind == Kind::kCross && at(k + 2).col == a && std::abs(a - b) == 1);
        at(k).col = b;
        at(k + 1).col = a;
        at(k + 2).col = b;
        ++r3_used_;
        log_.push_back({"r3", k});
        return true;
      }
    }
    return false;
  }

  // One reduction if any applies: free cancellations first, then turnback
  // pulls downward from the topmost eligible birth, then upward from the
  // bottommost eligible death.
  bool try_reduce() {
    for (size_t p = 0; p < ev_.size(); ++p) {
      if (ev_[p].kind != Kind::kBirth) continue;
      auto plan = find_down(static_cast<int>(p));
      if (plan && is_free(plan->type) && try_apply(*plan)) return true;
    }
    for (int p = static_cast<int>(ev_.size()) - 1; p >= 0; --p) {
      if (ev_[p].kind != Kind::kDeath) continue;
      auto plan = find_up(p);
      if (plan && is_free(plan->type) && try_apply(*plan)) return true;
    }
    for (size_t p = 0; p < ev_.size(); ++p) {
      if (ev_[p].kind != Kind::kBirth) continue;
      auto plan = find_down(static_cast<int>(p));
      if (plan && is_down(plan->type) && try_apply(*plan)) return true;
    }
    for (int p = static_cast<int>(ev_.size()) - 1; p >= 0; --p) {
      if (ev_[p].kind != Kind::kDeath) continue;
      auto plan = find_up(p);
      if (plan && is_up(plan->type) && try_apply(*plan)) return true;
    }
    return false;
  }

  std::vector<Plan> r3_candidates() const {
    std::vector<Plan> out;
    for (size_t p = 0; p < ev_.size(); ++p) {
      if (ev_[p].kind != Kind::kCross) continue;
      if (auto plan = find_r3(static_cast<int>(p))) out.push_back(*plan);
    }
    return out;
  }

  // Applies a braid-relation slide (or two, looking one level deeper) when
  // doing so unblocks a reduction. Committed slides are always followed by
  // a crossing-removing move, so the loop in run() terminates.
  bool try_r3(long budget) {
    auto cands = r3_candidates();
    for (const auto& c1 : cands) {
      if (r3_used_ + 1 > budget) return false;
      Engine t = *this;
      if (!t.try_apply(c1)) continue;
      Engine probe = t;
      if (probe.try_reduce()) {
        *this = std::move(t);
        return true;
      }
    }
    for (const auto& c1 : cands) {
      Engine t1 = *this;
      if (!t1.try_apply(c1)) continue;
      for (const auto& c2 : t1.r3_candidates()) {
        if (r3_used_ + 2 > budget) return false;
        Engine t2 = t1;
        if (!t2.try_apply(c2)) continue;
        Engine probe = t2;
        if (probe.try_reduce()) {
          *this = std::move(t2);
          return true;
        }
      }
    }
    return false;
  }

  int n_;
  std::vector<MorseEvent> ev_;
  int detached_;
  int r1_ = 0;
  int r2_ = 0;
  long r3_used_ = 0;
  std::vector<ShiftLedger::Move> log_;
};

// Connectivity of the strand segments of a diagram. Each event slices the
// strands into segments; crossings remember which two segments enter them.
struct SegGraph {
  struct End {
    int seg = -1;
    int end = -1;  // 0 = upper end of the partner, 1 = lower end
  };
  std::vector<End> link0;  // partner at the segment's upper end
  std::vector<End> link1;  // partner at the segment's lower end
  std::vector<int> top_seg;
  std::vector<int> bottom_seg;
  struct Cross {
    int ul = -1, ur = -1;
  };
  std::vector<Cross> crossings;
};

SegGraph build_graph(int n, const std::vector<MorseEvent>& ev) {
  SegGraph g;
  std::vector<int> cur(n);
  int next = 0;
  auto fresh = [&] {
    g.link0.push_back({});
    g.link1.push_back({});
    return next++;
  };
  for (int i = 0; i < n; ++i) cur[i] = fresh();
  g.top_seg = cur;
  auto tie = [&](int sa, int ea, int sb, int eb) {
    (ea == 0 ? g.link0[sa] : g.link1[sa]) = {sb, eb};
    (eb == 0 ? g.link0[sb] : g.link1[sb]) = {sa, ea};
  };
  for (const auto& e : ev) {
    int c = e.col;
    switch (e.kind) {
      case Kind::kCross: {
        int ul = cur[c - 1], ur = cur[c];
        int dl = fresh(), dr = fresh();
        tie(ul, 1, dr, 0);
        tie(ur, 1, dl, 0);
        cur[c - 1] = dl;
        cur[c] = dr;
        g.crossings.push_back({ul, ur});
        break;
      }
      case Kind::kDeath: {
        tie(cur[c - 1], 1, cur[c], 1);
        cur.erase(cur.begin() + (c - 1), cur.begin() + (c + 1));
        break;
      }
      case Kind::kBirth: {
        int dl = fresh(), dr = fresh();
        tie(dl, 0, dr, 0);
        cur.insert(cur.begin() + (c - 1), {dl, dr});
        break;
      }
    }
  }
  g.bottom_seg = cur;
  return g;
}

// Signs of the crossings under the canonical orientation: strands touching
// the boundary flow bottom to top when they can, otherwise into the smaller
// boundary column; closed components take the orientation with the fewest
// negative crossings, which the rewriting moves preserve.
std::vector<int> crossing_signs(int n, const std::vector<MorseEvent>& ev) {
  SegGraph g = build_graph(n, ev);
  int segs = static_cast<int>(g.link0.size());
  std::vector<int> comp(segs, -1);
  std::vector<int> dir(segs, 0);  // +1 downward, -1 upward

  // Walks assigning comp and dir from an entry end; stops at a boundary or
  // on closing the loop. Returns the exit (seg, end) for boundary walks.
  auto walk = [&](int s0, int e0, int cid) -> SegGraph::End {
    int s = s0, e = e0;
    for (;;) {
      comp[s] = cid;
      dir[s] = e == 0 ? 1 : -1;
      int exit_end = 1 - e;
      SegGraph::End pr = exit_end == 0 ? g.link0[s] : g.link1[s];
      if (pr.seg < 0) return {s, exit_end};
      s = pr.seg;
      e = pr.end;
      if (s == s0 && e == e0) return {-1, -1};
    }
  };

  // Boundary ports in a fixed order: bottoms left to right, then tops.
  struct Port {
    bool top;
    int col;  // 1-based
    int seg;
    int end;
  };
  std::vector<Port> ports;
  for (int i = 0; i < static_cast<int>(g.bottom_seg.size()); ++i)
    ports.push_back({false, i + 1, g.bottom_seg[i], 1});
  for (int i = 0; i < n; ++i) ports.push_back({true, i + 1, g.top_seg[i], 0});

  int cid = 0;
  for (const auto& port : ports) {
    if (comp[port.seg] >= 0) continue;
    // Identify both endpoints first, then restart from the canonical one.
    SegGraph::End exit = walk(port.seg, port.end, cid);
    const Port* other = nullptr;
    for (const auto& o : ports)
      if (o.seg == exit.seg && o.end == exit.end) other = &o;
    if (other == nullptr) throw std::logic_error("open strand lost its far end");
    const Port* start = &port;
    if (port.top != other->top) {
      start = port.top ? other : &port;
    }
    walk(start->seg, start->end, cid);
    ++cid;
  }
  std::vector<int> closed;
  for (int s = 0; s < segs; ++s) {
    if (comp[s] >= 0) continue;
    walk(s, 0, cid);
    closed.push_back(cid);
    ++cid;
  }

  // Closed components meeting a crossing get the orientation freedom.
  std::vector<int> flippable;
  for (int c : closed) {
    bool touches = false;
    for (const auto& x : g.crossings)
      touches = touches || comp[x.ul] == c || comp[x.ur] == c;
    if (touches) flippable.push_back(c);
  }
  if (flippable.size() > 20) throw std::runtime_error("too many closed components to orient");
  std::vector<int> flip_of(cid, -1);
  for (size_t i = 0; i < flippable.size(); ++i) flip_of[flippable[i]] = static_cast<int>(i);

  auto negatives = [&](unsigned mask) {
    int neg = 0;
    for (const auto& x : g.crossings) {
      int da = dir[x.ul], db = dir[x.ur];
      int fa = flip_of[comp[x.ul]], fb = flip_of[comp[x.ur]];
      if (fa >= 0 && (mask >> fa & 1u)) da = -da;
      if (fb >= 0 && (mask >> fb & 1u)) db = -db;
      neg += da == db ? 0 : 1;
    }
    return neg;
  };
  unsigned best_mask = 0;
  int best = negatives(0);
  for (unsigned mask = 1; mask < (1u << flippable.size()); ++mask) {
    int v = negatives(mask);
    if (v < best) {
      best = v;
      best_mask = mask;
    }
  }

  std::vector<int> signs;
  signs.reserve(g.crossings.size());
  for (const auto& x : g.crossings) {
    int da = dir[x.ul], db = dir[x.ur];
    int fa = flip_of[comp[x.ul]], fb = flip_of[comp[x.ur]];
    if (fa >= 0 && (best_mask >> fa & 1u)) da = -da;
    if (fb >= 0 && (best_mask >> fb & 1u)) db = -db;
    signs.push_back(da == db ? 1 : -1);
  }
  return signs;
}

TLMatching death_matching(int w, int c) {
  // w strands on top, w-2 below; top columns c, c+1 join.
  std::vector<int> mate(2 * w - 2, -1);
  int base = w - 2;
  for (int j = 0; j < w; ++j) {
    if (j == c - 1) {
      mate[base + j] = base + c;
      mate[base + c] = base + j;
    } else if (j < c - 1) {
      mate[base + j] = j;
      mate[j] = base + j;
    } else if (j > c) {
      mate[base + j] = j - 2;
      mate[j - 2] = base + j;
    }
  }
  return TLMatching(w - 2, w, std::move(mate));
}

TLMatching birth_matching(int w, int c) {
  // w strands on top, w+2 below; bottom columns c, c+1 join.
  std::vector<int> mate(2 * w + 2, -1);
  int base = w + 2;
  for (int j = 0; j < w + 2; ++j) {
    if (j == c - 1) {
      mate[j] = c;
      mate[c] = j;
    } else if (j < c - 1) {
      mate[j] = base + j;
      mate[base + j] = j;
    } else if (j > c) {
      mate[j] = base + j - 2;
      mate[base + j - 2] = j;
    }
  }
  return TLMatching(w + 2, w, std::move(mate));
}

}  // namespace

MixedTangle::MixedTangle(int n, const std::vector<Slice>& slices, int r) : n_(n), r_(r) {
  if (n < 1) throw std::invalid_argument("tangle needs at least one strand");
  for (const auto& s : slices) {
    if (s.index < 1 || s.index > n - 1) throw std::invalid_argument("slice index out of range");
    if (s.kind == Slice::Kind::kCross) {
      events_.push_back({MorseEvent::Kind::kCross, s.index});
    } else {
      events_.push_back({MorseEvent::Kind::kDeath, s.index});
      events_.push_back({MorseEvent::Kind::kBirth, s.index});
    }
  }
}

MixedTangle MixedTangle::from_events(int n, std::vector<MorseEvent> events, int r, int detached) {
  if (n < 1) throw std::invalid_argument("tangle needs at least one strand");
  if (detached < 0) throw std::invalid_argument("negative circle count");
  auto w = simulate_widths(n, events);
  if (w.back() != n) throw std::invalid_argument("events do not return to the tangle width");
  MixedTangle t(n, r);
  t.detached_ = detached;
  t.events_ = std::move(events);
  return t;
}

int MixedTangle::cross_count() const {
  int c = 0;
  for (const auto& e : events_) c += e.kind == MorseEvent::Kind::kCross ? 1 : 0;
  return c;
}

bool MixedTangle::is_slice_word() const {
  if (detached_ != 0) return false;
  for (size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].kind == MorseEvent::Kind::kCross) continue;
    if (events_[i].kind == MorseEvent::Kind::kDeath && i + 1 < events_.size() &&
        events_[i + 1].kind == MorseEvent::Kind::kBirth && events_[i + 1].col == events_[i].col) {
      ++i;
      continue;
    }
    return false;
  }
  return true;
}

std::vector<MixedTangle::Slice> MixedTangle::slices() const {
  if (!is_slice_word()) throw std::logic_error("tangle is not a slice word");
  std::vector<Slice> out;
  for (size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].kind == MorseEvent::Kind::kCross) {
      out.push_back({Slice::Kind::kCross, events_[i].col});
    } else {
      out.push_back({Slice::Kind::kTurnback, events_[i].col});
      ++i;
    }
  }
  return out;
}

TLPoly mixed_bracket(const MixedTangle& t) {
  auto signs = crossing_signs(t.n(), t.events());
  TLPoly acc = TLPoly::identity(t.n());
  int w = t.n();
  size_t ci = 0;
  for (const auto& e : t.events()) {
    int bot = w;
    if (e.kind == MorseEvent::Kind::kDeath) bot = w - 2;
    if (e.kind == MorseEvent::Kind::kBirth) bot = w + 2;
    TLPoly elem(bot, w);
    switch (e.kind) {
      case MorseEvent::Kind::kCross: {
        if (signs[ci++] > 0) {
          elem.add_term(TLMatching::identity(w), LaurentPoly::q(1));
          elem.add_term(TLMatching::generator(w, e.col), LaurentPoly::monomial(-1, 2));
        } else {
          elem.add_term(TLMatching::identity(w), LaurentPoly::monomial(-1, -2));
          elem.add_term(TLMatching::generator(w, e.col), LaurentPoly::q(-1));
        }
        break;
      }
      case MorseEvent::Kind::kDeath:
        elem.add_term(death_matching(w, e.col), LaurentPoly::one());
        w -= 2;
        break;
      case MorseEvent::Kind::kBirth:
        elem.add_term(birth_matching(w, e.col), LaurentPoly::one());
        w += 2;
        break;
    }
    acc = tl_mul(acc, elem);
  }
  for (int i = 0; i < t.detached_circles(); ++i) acc = acc.scaled(LaurentPoly::delta());
  return acc;
}

MixedTangle multicone_term(const BraidWord& w, const DiagonalSet& d, int i) {
  for (int letter : w)
    if (letter <= 0) throw std::invalid_argument("cone terms need an all-right-handed word");
  auto nds = non_diagonal_positions(w, d);
  if (i < 1 || i > static_cast<int>(nds.size())) throw std::out_of_range("cone index out of range");
  // Bottom-up: the first cone entry resolves the last non-diagonal letter.
  std::vector<int> bottom_up(nds.rbegin(), nds.rend());
  std::set<int> deleted(bottom_up.begin(), bottom_up.begin() + (i - 1));
  int turned = bottom_up[i - 1];
  std::vector<MixedTangle::Slice> slices;
  for (int p = 0; p < static_cast<int>(w.size()); ++p) {
    if (deleted.count(p)) continue;
    if (p == turned) {
      slices.push_back({MixedTangle::Slice::Kind::kTurnback, w[p]});
    } else {
      slices.push_back({MixedTangle::Slice::Kind::kCross, w[p]});
    }
  }
  return MixedTangle(d.n, slices, 1);
}

MixedTangle resolved_cone_term(const BraidWord& w, const DiagonalSet& d,
                               const std::vector<int>& ones) {
  for (int letter : w)
    if (letter <= 0) throw std::invalid_argument("cone terms need an all-right-handed word");
  auto nds = non_diagonal_positions(w, d);
  std::set<int> nd_set(nds.begin(), nds.end());
  std::set<int> turned(ones.begin(), ones.end());
  if (turned.empty()) throw std::invalid_argument("a resolved cone term needs at least one turnback");
  if (turned.size() != ones.size()) throw std::invalid_argument("duplicate turnback position");
  for (int p : turned)
    if (!nd_set.count(p)) throw std::invalid_argument("turnback position is not a non-diagonal letter");
  std::set<int> diag_pos;
  for (const auto& diag : d.diagonals) diag_pos.insert(diag.begin(), diag.end());
  std::vector<MixedTangle::Slice> slices;
  for (int p = 0; p < static_cast<int>(w.size()); ++p) {
    if (turned.count(p)) {
      slices.push_back({MixedTangle::Slice::Kind::kTurnback, w[p]});
    } else if (diag_pos.count(p)) {
      slices.push_back({MixedTangle::Slice::Kind::kCross, w[p]});
    }
  }
  return MixedTangle(d.n, slices, static_cast<int>(turned.size()));
}

std::pair<int, int> shift_of_moves(int r2, int r1neg) {
  return {r2 + r1neg, r2 + 2 * r1neg};
}

std::pair<MixedTangle, ShiftLedger> pull_turnbacks(const MixedTangle& t, int y) {
  bool has_turnback = false;
  for (const auto& e : t.events())
    has_turnback = has_turnback || e.kind != MorseEvent::Kind::kCross;
  if (!has_turnback) throw std::invalid_argument("nothing to pull: no turnback");

  Engine eng(t.n(), t.events(), t.detached_circles());
  eng.run();

  ShiftLedger ledger;
  auto [sh, sq] = shift_of_moves(eng.r2(), eng.r1());
  ledger.s_h = sh;
  ledger.s_q = sq;
  ledger.y = y;
  ledger.moves = eng.log();
  if (ledger.s_h < y)
    throw std::logic_error("turnback pulling fell short of the diagonal count");

  MixedTangle out = MixedTangle::from_events(t.n(), eng.events(), t.r(), eng.detached());
  if (y >= 1 && out.cross_count() >= t.cross_count())
    throw std::logic_error("turnback pulling failed to remove a crossing");
  return {std::move(out), ledger};
}

}  // namespace braidkh
