#include "braidkh/tl.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace braidkh {

namespace {

// Position of point p when walking the rectangle boundary counterclockwise:
// bottom left to right, then top right to left.
int circ_index(int bot, int top, int p) { return p < bot ? p : 2 * bot + top - 1 - p; }

}  // namespace

TLMatching::TLMatching(int bot, int top, std::vector<int> mate)
    : bot_(bot), top_(top), mate_(std::move(mate)) {
  int n = bot_ + top_;
  if (bot_ < 0 || top_ < 0 || n % 2 != 0 || static_cast<int>(mate_.size()) != n) {
    throw std::invalid_argument("matching has inconsistent boundary sizes");
  }
  for (int p = 0; p < n; ++p) {
    if (mate_[p] < 0 || mate_[p] >= n || mate_[p] == p || mate_[mate_[p]] != p) {
      throw std::invalid_argument("matching is not a fixed-point-free involution");
    }
  }
  // Planarity: arcs must nest in the circular boundary order.
  std::vector<int> point_at(n);
  for (int p = 0; p < n; ++p) point_at[circ_index(bot_, top_, p)] = p;
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    int p = point_at[i];
    if (!stack.empty() && stack.back() == mate_[p]) {
      stack.pop_back();
    } else {
      stack.push_back(p);
    }
  }
  if (!stack.empty()) throw std::invalid_argument("matching has crossing arcs");
}

TLMatching TLMatching::identity(int n) {
  std::vector<int> mate(2 * n);
  for (int i = 0; i < n; ++i) {
    mate[i] = n + i;
    mate[n + i] = i;
  }
  return TLMatching(n, n, std::move(mate));
}

TLMatching TLMatching::generator(int n, int k) {
  if (k < 1 || k >= n) throw std::invalid_argument("generator index out of range");
  std::vector<int> mate(2 * n);
  for (int i = 0; i < n; ++i) {
    mate[i] = n + i;
    mate[n + i] = i;
  }
  mate[k - 1] = k;
  mate[k] = k - 1;
  mate[n + k - 1] = n + k;
  mate[n + k] = n + k - 1;
  return TLMatching(n, n, std::move(mate));
}

std::vector<std::pair<int, int>> TLMatching::arcs() const {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < static_cast<int>(mate_.size()); ++p) {
    if (p < mate_[p]) out.emplace_back(p, mate_[p]);
  }
  return out;
}

bool TLMatching::operator<(const TLMatching& o) const {
  if (bot_ != o.bot_) return bot_ < o.bot_;
  if (top_ != o.top_) return top_ < o.top_;
  return mate_ < o.mate_;
}

std::string TLMatching::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [a, b] : arcs()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(a) + "-" + std::to_string(b);
  }
  return out + "}";
}

std::pair<TLMatching, int> compose(const TLMatching& a, const TLMatching& b) {
  if (a.bot() != b.top()) throw std::invalid_argument("stacked boundaries do not match");
  int glue = a.bot();
  int rbot = b.bot();
  int rtop = a.top();
  std::vector<bool> seen(glue, false);
  std::vector<int> mate(rbot + rtop, -1);

  // Walk from a result boundary point through the glued middle layer until
  // the path exits; ends of the walk are mates in the result.
  auto walk = [&](bool start_in_b, int start) {
    bool in_b = start_in_b;
    int at = start;
    for (;;) {
      if (in_b) {
        int m = b.mate(at);
        if (m < b.bot()) return m;  // result bottom point
        int i = m - b.bot();
        seen[i] = true;
        in_b = false;
        at = i;
      } else {
        int m = a.mate(at);
        if (m >= a.bot()) return rbot + (m - a.bot());  // result top point
        seen[m] = true;
        in_b = true;
        at = b.bot() + m;
      }
    }
  };

  for (int p = 0; p < rbot; ++p) {
    if (mate[p] != -1) continue;
    int end = walk(true, p);
    mate[p] = end;
    mate[end] = p;
  }
  for (int t = 0; t < rtop; ++t) {
    if (mate[rbot + t] != -1) continue;
    int end = walk(false, a.bot() + t);
    mate[rbot + t] = end;
    mate[end] = rbot + t;
  }

  int circles = 0;
  for (int i = 0; i < glue; ++i) {
    if (seen[i]) continue;
    ++circles;
    int cur = i;
    do {
      seen[cur] = true;
      int j = a.mate(cur);
      assert(j < a.bot());
      seen[j] = true;
      int m = b.mate(b.bot() + j);
      assert(m >= b.bot());
      cur = m - b.bot();
    } while (cur != i);
  }
  return {TLMatching(rbot, rtop, std::move(mate)), circles};
}

int closure_circles(const TLMatching& m) {
  if (m.bot() != m.top()) throw std::invalid_argument("closure needs equal boundaries");
  int n = m.bot();
  std::vector<bool> seen(2 * n, false);
  int circles = 0;
  for (int p = 0; p < 2 * n; ++p) {
    if (seen[p]) continue;
    ++circles;
    int cur = p;
    do {
      seen[cur] = true;
      int q = m.mate(cur);
      seen[q] = true;
      cur = q < n ? q + n : q - n;  // closure arc to the matching boundary point
    } while (cur != p);
  }
  return circles;
}

namespace {

// Non-crossing pairings of circular positions [lo, hi), as arc lists.
std::vector<std::vector<std::pair<int, int>>> pairings(int lo, int hi) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (lo >= hi) {
    out.emplace_back();
    return out;
  }
  for (int m = lo + 1; m < hi; m += 2) {
    for (const auto& inner : pairings(lo + 1, m)) {
      for (const auto& outer : pairings(m + 1, hi)) {
        std::vector<std::pair<int, int>> arcs;
        arcs.emplace_back(lo, m);
        arcs.insert(arcs.end(), inner.begin(), inner.end());
        arcs.insert(arcs.end(), outer.begin(), outer.end());
        out.push_back(std::move(arcs));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<TLMatching> all_matchings(int n) {
  std::vector<int> point_at(2 * n);
  for (int p = 0; p < 2 * n; ++p) point_at[circ_index(n, n, p)] = p;
  std::vector<TLMatching> out;
  for (const auto& arcs : pairings(0, 2 * n)) {
    std::vector<int> mate(2 * n);
    for (const auto& [i, j] : arcs) {
      mate[point_at[i]] = point_at[j];
      mate[point_at[j]] = point_at[i];
    }
    out.emplace_back(n, n, std::move(mate));
  }
  return out;
}

}  // namespace braidkh
