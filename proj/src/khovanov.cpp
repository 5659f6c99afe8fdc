#include "braidkh/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <queue>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "braidkh/bracket.hpp"

namespace braidkh {
namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

int popcount32(std::uint32_t bits) { return std::popcount(bits); }

// The pair of arc joins each smoothing of a tile makes. The 0-smoothing of
// a right-handed crossing is the identity one; left-handed tiles swap.
void smoothing_joins(const LinkDiagram::Tile& t, bool one_res, int joins[2][2]) {
  bool identity = t.right_handed ? !one_res : one_res;
  if (identity) {
    joins[0][0] = t.nw; joins[0][1] = t.sw;
    joins[1][0] = t.ne; joins[1][1] = t.se;
  } else {
    joins[0][0] = t.nw; joins[0][1] = t.ne;
    joins[1][0] = t.sw; joins[1][1] = t.se;
  }
}

struct Assembled {
  LinkDiagram link;
  // Joins where the strand's vertical direction flips (caps and cups)
  // versus joins where it is preserved (closure arcs).
  std::vector<std::pair<int, int>> flips;
  std::vector<std::pair<int, int>> sames;
};

Assembled assemble(int n, const std::vector<MorseEvent>& events,
                   const std::vector<bool>& right_handed, const ClosureSpec& c,
                   int detached) {
  Assembled out;
  auto pairing = c.resolve(n);
  std::vector<int> cur(n);
  int next = 0;
  for (int& a : cur) a = next++;
  std::vector<int> top = cur;

  size_t cross_idx = 0;
  for (const auto& e : events) {
    int width = static_cast<int>(cur.size());
    switch (e.kind) {
      case MorseEvent::Kind::kCross: {
        if (e.col < 1 || e.col >= width) throw std::invalid_argument("crossing column out of range");
        LinkDiagram::Tile t{cur[e.col - 1], cur[e.col], next, next + 1,
                            right_handed[cross_idx++]};
        cur[e.col - 1] = next++;
        cur[e.col] = next++;
        out.link.tiles.push_back(t);
        break;
      }
      case MorseEvent::Kind::kDeath: {
        if (e.col < 1 || e.col >= width) throw std::invalid_argument("cap column out of range");
        out.flips.emplace_back(cur[e.col - 1], cur[e.col]);
        cur.erase(cur.begin() + (e.col - 1), cur.begin() + (e.col + 1));
        break;
      }
      case MorseEvent::Kind::kBirth: {
        if (e.col < 1 || e.col > width + 1) throw std::invalid_argument("cup column out of range");
        int a = next++, b = next++;
        out.flips.emplace_back(a, b);
        cur.insert(cur.begin() + (e.col - 1), {a, b});
        break;
      }
    }
  }
  if (static_cast<int>(cur.size()) != n) {
    throw std::invalid_argument("tangle does not end at the box width");
  }
  for (int i = 0; i < n; ++i) out.sames.emplace_back(top[i], cur[pairing[i]]);
  next += detached;

  out.link.strands = n;
  out.link.arc_count = next;
  out.link.gluings = out.flips;
  out.link.gluings.insert(out.link.gluings.end(), out.sames.begin(), out.sames.end());
  return out;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Next bitmask with the same popcount (Gosper); 0 when exhausted.
std::uint64_t next_same_weight(std::uint64_t v) {
  if (v == 0) return 0;
  std::uint64_t c = v & -v;
  std::uint64_t r = v + c;
  std::uint64_t next = r | (((v ^ r) >> 2) / c);
  return next;
}

long rank_over_q(const std::map<std::pair<int, int>, mpz_class>& entries) {
  if (entries.empty()) return 0;
  std::map<int, int> row_id, col_id;
  for (const auto& [rc, v] : entries) {
    row_id.emplace(rc.first, static_cast<int>(row_id.size()));
    col_id.emplace(rc.second, static_cast<int>(col_id.size()));
  }
  size_t rows = row_id.size(), cols = col_id.size();
  std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols, 0));
  for (const auto& [rc, v] : entries) m[row_id[rc.first]][col_id[rc.second]] = mpq_class(v);
  long rank = 0;
  size_t pr = 0;
  for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
    size_t piv = pr;
    while (piv < rows && m[piv][pc] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[pr], m[piv]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == pr || m[i][pc] == 0) continue;
      mpq_class f = m[i][pc] / m[pr][pc];
      for (size_t j = pc; j < cols; ++j) m[i][j] -= f * m[pr][j];
    }
    ++rank;
    ++pr;
  }
  return rank;
}

long rank_over_z2(const std::map<std::pair<int, int>, mpz_class>& entries) {
  std::map<int, int> row_id, col_id;
  for (const auto& [rc, v] : entries) {
    if (mpz_odd_p(v.get_mpz_t())) {
      row_id.emplace(rc.first, static_cast<int>(row_id.size()));
      col_id.emplace(rc.second, static_cast<int>(col_id.size()));
    }
  }
  if (row_id.empty()) return 0;
  size_t rows = row_id.size(), cols = col_id.size();
  size_t words = (cols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(words, 0));
  for (const auto& [rc, v] : entries) {
    if (!mpz_odd_p(v.get_mpz_t())) continue;
    int r = row_id[rc.first], c = col_id[rc.second];
    m[r][c / 64] ^= 1ull << (c % 64);
  }
  long rank = 0;
  size_t pr = 0;
  for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
    size_t piv = pr;
    while (piv < rows && !((m[piv][pc / 64] >> (pc % 64)) & 1)) ++piv;
    if (piv == rows) continue;
    std::swap(m[pr], m[piv]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == pr || !((m[i][pc / 64] >> (pc % 64)) & 1)) continue;
      for (size_t w = 0; w < words; ++w) m[i][w] ^= m[pr][w];
    }
    ++rank;
    ++pr;
  }
  return rank;
}

// Invariant factors (absolute values, divisibility chain) of an integer
// matrix; the number of factors is the rank.
std::vector<mpz_class> smith_factors(const std::map<std::pair<int, int>, mpz_class>& entries) {
  std::vector<mpz_class> diag;
  if (entries.empty()) return diag;
  std::map<int, int> row_id, col_id;
  for (const auto& [rc, v] : entries) {
    row_id.emplace(rc.first, static_cast<int>(row_id.size()));
    col_id.emplace(rc.second, static_cast<int>(col_id.size()));
  }
  size_t rows = row_id.size(), cols = col_id.size();
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols, 0));
  for (const auto& [rc, v] : entries) m[row_id[rc.first]][col_id[rc.second]] = v;

  size_t t = 0;
  while (t < rows && t < cols) {
    size_t pi = t, pj = t;
    bool found = false;
    mpz_class best;
    for (size_t i = t; i < rows; ++i) {
      for (size_t j = t; j < cols; ++j) {
        if (m[i][j] == 0) continue;
        mpz_class a = abs(m[i][j]);
        if (!found || a < best) {
          best = a;
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    if (!found) break;
    std::swap(m[t], m[pi]);
    for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q = m[i][t] / m[t][t];
        for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q = m[t][j] / m[t][t];
        for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (size_t i = t; i < rows; ++i) std::swap(m[i][t], m[i][j]);
          clean = false;
        }
      }
      if (clean) {
        for (size_t i = t + 1; i < rows && clean; ++i) {
          for (size_t j = t + 1; j < cols && clean; ++j) {
            if (m[i][j] % m[t][t] != 0) {
              for (size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
              clean = false;
            }
          }
        }
      }
    }
    diag.push_back(abs(m[t][t]));
    ++t;
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
      for (size_t j = i + 1; j < diag.size(); ++j) {
        if (diag[j] % diag[i] == 0) continue;
        mpz_class g = gcd(diag[i], diag[j]);
        mpz_class l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
        changed = true;
      }
    }
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

}  // namespace

ClosureSpec ClosureSpec::matched(std::vector<int> top_to_bottom) {
  ClosureSpec c;
  c.pairing_ = std::move(top_to_bottom);
  if (c.pairing_.empty()) throw std::invalid_argument("matched closure needs a pairing");
  return c;
}

std::vector<int> ClosureSpec::resolve(int n) const {
  if (n < 1) throw std::invalid_argument("closure needs at least one strand");
  if (pairing_.empty()) {
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    return id;
  }
  if (static_cast<int>(pairing_.size()) != n) {
    throw std::invalid_argument("closure pairing width differs from the box");
  }
  std::vector<bool> hit(n, false);
  for (int b : pairing_) {
    if (b < 0 || b >= n || hit[b]) {
      throw std::invalid_argument("closure pairing must hit every bottom endpoint once");
    }
    hit[b] = true;
  }
  // Chords (i, 2n-1-pairing[i]) on the box boundary must not interleave.
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      int b1 = 2 * n - 1 - pairing_[i];
      int b2 = 2 * n - 1 - pairing_[k];
      bool k_inside = i < k && k < b1;
      bool b2_inside = i < b2 && b2 < b1;
      if (k_inside != b2_inside) {
        throw std::invalid_argument("closure pairing is not planar");
      }
    }
  }
  return pairing_;
}

int LinkDiagram::circles(std::uint32_t bits) const {
  UnionFind uf(arc_count);
  for (const auto& [a, b] : gluings) uf.unite(a, b);
  int joins[2][2];
  for (size_t k = 0; k < tiles.size(); ++k) {
    smoothing_joins(tiles[k], (bits >> k) & 1, joins);
    uf.unite(joins[0][0], joins[0][1]);
    uf.unite(joins[1][0], joins[1][1]);
  }
  int circles = 0;
  for (int a = 0; a < arc_count; ++a) circles += uf.find(a) == a;
  return circles;
}

int LinkDiagram::components() const {
  UnionFind uf(arc_count);
  for (const auto& [a, b] : gluings) uf.unite(a, b);
  for (const auto& t : tiles) {
    uf.unite(t.nw, t.se);
    uf.unite(t.ne, t.sw);
  }
  int comps = 0;
  for (int a = 0; a < arc_count; ++a) comps += uf.find(a) == a;
  return comps;
}

LinkDiagram close(int n, const BraidWord& w, const ClosureSpec& c) {
  if (n < 1) throw std::invalid_argument("braid needs at least one strand");
  std::vector<MorseEvent> events;
  std::vector<bool> right;
  for (int letter : w) {
    if (letter == 0 || std::abs(letter) >= n) {
      throw std::invalid_argument("braid letter out of range");
    }
    events.push_back({MorseEvent::Kind::kCross, std::abs(letter)});
    right.push_back(letter > 0);
  }
  auto built = assemble(n, events, right, c, 0);
  // Closure arcs keep every strand's direction, so all strands of a
  // component run the same way and signs reduce to letter handedness.
  for (int letter : w) {
    if (letter > 0) ++built.link.n_plus;
    else ++built.link.n_minus;
  }
  return built.link;
}

LinkDiagram close(const MixedTangle& t, const ClosureSpec& c) {
  std::vector<bool> right(t.cross_count(), true);
  auto built = assemble(t.n(), t.events(), right, c, t.detached_circles());
  LinkDiagram& link = built.link;

  // Orient components: arcs are monotone (births and deaths were split into
  // their own arcs), so each arc carries one vertical direction. Through
  // strands and closure arcs preserve it, caps and cups flip it. Each
  // component is directed downward at its smallest arc.
  std::vector<std::vector<std::pair<int, int>>> adj(link.arc_count);
  auto add_edge = [&](int a, int b, int flip) {
    adj[a].push_back({b, flip});
    adj[b].push_back({a, flip});
  };
  for (const auto& tile : link.tiles) {
    add_edge(tile.nw, tile.se, 0);
    add_edge(tile.ne, tile.sw, 0);
  }
  for (const auto& [a, b] : built.flips) add_edge(a, b, 1);
  for (const auto& [a, b] : built.sames) add_edge(a, b, 0);

  std::vector<int> dir(link.arc_count, -1);
  for (int start = 0; start < link.arc_count; ++start) {
    if (dir[start] >= 0) continue;
    dir[start] = 0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (auto [b, flip] : adj[a]) {
        int want = dir[a] ^ flip;
        if (dir[b] < 0) {
          dir[b] = want;
          queue.push_back(b);
        } else if (dir[b] != want) {
          throw std::logic_error("closed diagram failed to orient");
        }
      }
    }
  }
  for (const auto& tile : link.tiles) {
    bool parallel = dir[tile.nw] == dir[tile.ne];
    bool positive = tile.right_handed ? parallel : !parallel;
    if (positive) ++link.n_plus;
    else ++link.n_minus;
  }
  return link;
}

int all_zero_circles(const LinkDiagram& link) { return link.circles(0); }

const CubeComplex::State& CubeComplex::state_of_gen(long g, std::uint32_t* mask) const {
  auto it = std::upper_bound(states_.begin(), states_.end(), g,
                             [](long v, const State& s) { return v < s.offset; });
  const State& s = *std::prev(it);
  *mask = static_cast<std::uint32_t>(g - s.offset);
  return s;
}

int CubeComplex::gen_i(long g) const {
  std::uint32_t mask;
  const State& s = state_of_gen(g, &mask);
  return popcount32(s.bits) - static_cast<int>(n_minus_);
}

long CubeComplex::gen_j(long g) const {
  std::uint32_t mask;
  const State& s = state_of_gen(g, &mask);
  int r = popcount32(s.bits);
  long p = s.circles - 2L * popcount32(mask);
  return p + r + n_plus_ - 2 * n_minus_;
}

std::map<std::pair<int, long>, long> CubeComplex::generator_table() const {
  std::map<std::pair<int, long>, long> table;
  long shift = n_plus_ - 2 * n_minus_;
  for (const auto& s : states_) {
    int r = popcount32(s.bits);
    int i = r - static_cast<int>(n_minus_);
    for (int w = 0; w <= s.circles; ++w) {
      long j = (s.circles - 2L * w) + r + shift;
      table[{i, j}] += binomial(s.circles, w);
    }
  }
  return table;
}

std::vector<long> CubeComplex::j_values() const {
  std::set<long> js;
  for (const auto& [key, count] : generator_table()) js.insert(key.second);
  return std::vector<long>(js.begin(), js.end());
}

void CubeComplex::edge_targets(int si, int k, std::uint32_t mask,
                               std::vector<std::pair<long, int>>* out) const {
  const State& s = states_[si];
  std::uint32_t tbits = s.bits | (1u << k);
  auto it = std::lower_bound(states_.begin(), states_.end(), tbits,
                             [](const State& st, std::uint32_t v) { return st.bits < v; });
  if (it == states_.end() || it->bits != tbits) return;
  const State& t = *it;

  int joins[2][2];
  smoothing_joins(link_.tiles[k], true, joins);
  int a = s.circle_of_arc[joins[0][0]];
  int b = s.circle_of_arc[joins[0][1]];
  int coeff = (popcount32(s.bits & ((1u << k) - 1)) & 1) ? -1 : 1;

  // Representative arcs of s-circles locate their images among t-circles.
  std::vector<int> rep(s.circles, -1);
  for (int arc = 0; arc < link_.arc_count; ++arc) {
    int c = s.circle_of_arc[arc];
    if (rep[c] < 0) rep[c] = arc;
  }

  auto carry = [&](std::uint32_t m, int skip1, int skip2) {
    std::uint32_t tm = 0;
    for (int x = 0; x < s.circles; ++x) {
      if (x == skip1 || x == skip2) continue;
      if ((m >> x) & 1) tm |= 1u << t.circle_of_arc[rep[x]];
    }
    return tm;
  };

  if (a != b) {
    // Merge: v+v+ -> v+, mixed -> v-, v-v- -> 0.
    int la = (mask >> a) & 1, lb = (mask >> b) & 1;
    if (la && lb) return;
    std::uint32_t tm = carry(mask, a, b);
    int cc = t.circle_of_arc[rep[a]];
    if (la || lb) tm |= 1u << cc;
    out->push_back({t.offset + tm, coeff});
  } else {
    // Split: v+ -> v+v- + v-v+, v- -> v-v-.
    int c1 = t.circle_of_arc[joins[0][0]];
    int c2 = t.circle_of_arc[joins[1][0]];
    std::uint32_t tm = carry(mask, a, -1);
    if ((mask >> a) & 1) {
      out->push_back({t.offset + (tm | (1u << c1) | (1u << c2)), coeff});
    } else {
      out->push_back({t.offset + (tm | (1u << c2)), coeff});
      out->push_back({t.offset + (tm | (1u << c1)), coeff});
    }
  }
}

std::vector<CubeComplex::Entry> CubeComplex::block_entries(long j) const {
  std::vector<Entry> entries;
  long shift = n_plus_ - 2 * n_minus_;
  std::vector<std::pair<long, int>> targets;
  for (size_t si = 0; si < states_.size(); ++si) {
    const State& s = states_[si];
    int r = popcount32(s.bits);
    long twice_w = s.circles + r + shift - j;
    if (twice_w < 0 || twice_w % 2 != 0) continue;
    long w = twice_w / 2;
    if (w > s.circles) continue;
    std::uint64_t mask = (w == 0) ? 0 : ((1ull << w) - 1);
    std::uint64_t limit = 1ull << s.circles;
    while (mask < limit) {
      for (int k = 0; k < crossings_; ++k) {
        if ((s.bits >> k) & 1) continue;
        targets.clear();
        edge_targets(static_cast<int>(si), k, static_cast<std::uint32_t>(mask), &targets);
        for (auto [dst, coeff] : targets) {
          entries.push_back({s.offset + static_cast<long>(mask), dst, coeff});
        }
      }
      if (w == 0) break;
      mask = next_same_weight(mask);
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.src != y.src ? x.src < y.src : x.dst < y.dst;
  });
  return entries;
}

std::vector<CubeComplex::Entry> CubeComplex::all_entries() const {
  std::vector<Entry> entries;
  std::vector<std::pair<long, int>> targets;
  for (size_t si = 0; si < states_.size(); ++si) {
    const State& s = states_[si];
    for (std::uint64_t mask = 0; mask < (1ull << s.circles); ++mask) {
      for (int k = 0; k < crossings_; ++k) {
        if ((s.bits >> k) & 1) continue;
        targets.clear();
        edge_targets(static_cast<int>(si), k, static_cast<std::uint32_t>(mask), &targets);
        for (auto [dst, coeff] : targets) {
          entries.push_back({s.offset + static_cast<long>(mask), dst, coeff});
        }
      }
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.src != y.src ? x.src < y.src : x.dst < y.dst;
  });
  return entries;
}

LaurentPoly CubeComplex::euler_characteristic() const {
  LaurentPoly total;
  std::vector<LaurentPoly> delta_pow{LaurentPoly::one()};
  long shift = n_plus_ - 2 * n_minus_;
  for (const auto& s : states_) {
    while (static_cast<int>(delta_pow.size()) <= s.circles) {
      delta_pow.push_back(delta_pow.back() * LaurentPoly::delta());
    }
    int r = popcount32(s.bits);
    LaurentPoly term = delta_pow[s.circles].shifted(r + shift);
    if ((r + n_minus_) & 1) total -= term;
    else total += term;
  }
  return total;
}

CubeComplex chain_complex(const LinkDiagram& link, int max_crossings, int max_ones) {
  int c = link.crossings();
  if (c > max_crossings || c > 30) {
    throw std::length_error("crossing limit exceeded: " + std::to_string(c) +
                            " crossings with limit " + std::to_string(std::min(max_crossings, 30)));
  }
  CubeComplex cx;
  cx.link_ = link;
  cx.crossings_ = c;
  cx.n_plus_ = link.n_plus;
  cx.n_minus_ = link.n_minus;
  cx.max_ones_ = max_ones;

  long offset = 0;
  for (std::uint64_t bits = 0; bits < (1ull << c); ++bits) {
    if (max_ones >= 0 && std::popcount(bits) > max_ones) continue;
    UnionFind uf(link.arc_count);
    for (const auto& [a, b] : link.gluings) uf.unite(a, b);
    int joins[2][2];
    for (int k = 0; k < c; ++k) {
      smoothing_joins(link.tiles[k], (bits >> k) & 1, joins);
      uf.unite(joins[0][0], joins[0][1]);
      uf.unite(joins[1][0], joins[1][1]);
    }
    std::vector<int> cls(link.arc_count, -1);
    int circles = 0;
    for (int a = 0; a < link.arc_count; ++a) {
      int root = uf.find(a);
      if (cls[root] < 0) cls[root] = circles++;
    }
    for (int a = 0; a < link.arc_count; ++a) cls[a] = cls[uf.find(a)];
    if (circles > 25) throw std::length_error("too many circles in one resolution");

    CubeComplex::State st;
    st.bits = static_cast<std::uint32_t>(bits);
    st.circles = circles;
    st.offset = offset;
    st.circle_of_arc = std::move(cls);
    offset += 1L << circles;
    if (offset > (1L << 28)) throw std::length_error("generator limit exceeded");
    cx.states_.push_back(std::move(st));
  }
  cx.total_ = offset;
  return cx;
}

long BigradedHomology::rank(int i, long j) const {
  auto it = groups.find({i, j});
  return it == groups.end() ? 0 : it->second.rank;
}

BigradedHomology BigradedHomology::shifted(int di, long dj) const {
  BigradedHomology out;
  for (const auto& [key, grp] : groups) {
    out.groups[{key.first + di, key.second + dj}] = grp;
  }
  return out;
}

namespace {

// Chain-level cancellation of unit entries within one q-degree block; a
// homotopy equivalence over the integers, so homology in any coefficients
// is unchanged. Mutates the adjacency maps and the per-degree counts.
void cancel_units(std::vector<std::map<int, mpz_class>>& out,
                  std::vector<std::map<int, mpz_class>>& in,
                  const std::vector<int>& ideg, std::vector<bool>& alive,
                  std::map<int, long>& counts) {
  // Greedy minimum-fill pivoting: always cancel the unit entry whose
  // correction touches the fewest pairs. Any order gives the same homology,
  // but first-come order lets fill-in grow quadratically on full cubes.
  using Cand = std::pair<long, std::pair<int, int>>;
  std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> work;
  auto cost_of = [&](int x, int y) {
    return static_cast<long>(in[y].size() - 1) * static_cast<long>(out[x].size() - 1);
  };
  for (int x = 0; x < static_cast<int>(out.size()); ++x) {
    for (const auto& [y, v] : out[x]) {
      if (v == 1 || v == -1) work.push({cost_of(x, y), {x, y}});
    }
  }
  while (!work.empty()) {
    auto [cost, key] = work.top();
    auto [x, y] = key;
    work.pop();
    if (!alive[x] || !alive[y]) continue;
    auto it = out[x].find(y);
    if (it == out[x].end() || (it->second != 1 && it->second != -1)) continue;
    long now = cost_of(x, y);
    if (now > cost) {
      work.push({now, {x, y}});
      continue;
    }
    mpz_class u = it->second;

    std::map<int, mpz_class> in_y = in[y];
    std::map<int, mpz_class> out_x = out[x];
    alive[x] = false;
    alive[y] = false;
    --counts[ideg[x]];
    --counts[ideg[y]];
    for (const auto& [z, cz] : out_x) in[z].erase(x);
    for (const auto& [w, cw] : in[x]) out[w].erase(x);
    for (const auto& [w, cw] : in_y) out[w].erase(y);
    for (const auto& [z, cz] : out[y]) in[z].erase(y);
    out[x].clear();
    in[x].clear();
    out[y].clear();
    in[y].clear();

    for (const auto& [w, cw] : in_y) {
      if (w == x || !alive[w]) continue;
      for (const auto& [z, cz] : out_x) {
        if (z == y || !alive[z]) continue;
        mpz_class& val = out[w][z];
        val -= cw * u * cz;
        if (val == 0) {
          out[w].erase(z);
          in[z].erase(w);
        } else {
          in[z][w] = val;
          if (val == 1 || val == -1) work.push({cost_of(w, z), {w, z}});
        }
      }
    }
  }
}

}  // namespace

BigradedHomology homology(const CubeComplex& cx, Coefficients coeffs, bool reduce) {
  BigradedHomology result;
  auto table = cx.generator_table();
  for (long j : cx.j_values()) {
    auto entries = cx.block_entries(j);

    std::map<int, long> counts;
    for (const auto& [key, count] : table) {
      if (key.second == j) counts[key.first] = count;
    }

    // Matrices per source degree, as (row = target, col = source) entries.
    std::map<int, std::map<std::pair<int, int>, mpz_class>> mats;
    if (reduce) {
      std::unordered_map<long, int> local;
      std::vector<int> ideg;
      auto local_id = [&](long g) {
        auto [it, fresh] = local.emplace(g, static_cast<int>(ideg.size()));
        if (fresh) ideg.push_back(cx.gen_i(g));
        return it->second;
      };
      std::vector<std::map<int, mpz_class>> out, in;
      for (const auto& e : entries) {
        int s = local_id(e.src), d = local_id(e.dst);
        if (static_cast<int>(out.size()) < static_cast<int>(ideg.size())) {
          out.resize(ideg.size());
          in.resize(ideg.size());
        }
        out[s][d] += e.coeff;
        if (out[s][d] == 0) {
          out[s].erase(d);
          in[d].erase(s);
        } else {
          in[d][s] = out[s][d];
        }
      }
      std::vector<bool> alive(ideg.size(), true);
      cancel_units(out, in, ideg, alive, counts);
      for (int x = 0; x < static_cast<int>(out.size()); ++x) {
        if (!alive[x]) continue;
        for (const auto& [y, v] : out[x]) mats[ideg[x]][{y, x}] = v;
      }
    } else {
      for (const auto& e : entries) {
        int i = cx.gen_i(e.src);
        std::pair<int, int> key{static_cast<int>(e.dst), static_cast<int>(e.src)};
        auto& val = mats[i][key];
        val += e.coeff;
        if (val == 0) mats[i].erase(key);
      }
    }

    std::map<int, long> ranks;
    std::map<int, std::vector<mpz_class>> torsion;
    for (const auto& [i, m] : mats) {
      if (m.empty()) continue;
      if (coeffs == Coefficients::kZ2) {
        ranks[i] = rank_over_z2(m);
      } else if (coeffs == Coefficients::kRationals) {
        ranks[i] = rank_over_q(m);
      } else {
        auto factors = smith_factors(m);
        ranks[i] = static_cast<long>(factors.size());
        for (const auto& f : factors) {
          if (f > 1) torsion[i + 1].push_back(f);
        }
      }
    }

    for (const auto& [i, count] : counts) {
      long rank = count - ranks[i] - ranks[i - 1];
      auto tor = torsion.find(i);
      if (rank != 0 || (tor != torsion.end() && !tor->second.empty())) {
        BigradedGroup grp;
        grp.rank = rank;
        if (tor != torsion.end()) grp.torsion = tor->second;
        result.groups[{i, j}] = std::move(grp);
      }
    }
  }
  return result;
}

BigradedHomology normalized_homology(int n, const BraidWord& w, const ClosureSpec& c,
                                     Coefficients coeffs, int max_crossings, int max_ones) {
  LinkDiagram link = close(n, w, c);
  CubeComplex cx = chain_complex(link, max_crossings, max_ones);
  BigradedHomology raw = homology(cx, coeffs);
  return raw.shifted(static_cast<int>(link.n_minus), -link.shift_exponent());
}

namespace {

std::vector<StabilizationCell> stabilize_cells(
    const std::map<std::pair<int, long>, std::vector<long>>& ranks, long max_len,
    int window) {
  std::vector<StabilizationCell> cells;
  for (const auto& [key, history] : ranks) {
    StabilizationCell cell;
    cell.i = key.first;
    cell.j = key.second;
    cell.stable_rank = history.back();
    long from = max_len;
    while (from > 1 && history[from - 2] == cell.stable_rank) --from;
    cell.stable_from = from;
    cell.stabilized = max_len - from + 1 >= window;
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace

HomologyStabilizationReport stabilization_homology_report(const InfiniteBraidSpec& spec,
                                                          const ClosureSpec& c, long max_len,
                                                          int i_max, int window) {
  if (max_len < 1 || i_max < 0 || window < 1 || window > max_len) {
    throw std::invalid_argument("stabilization report needs 1 <= window <= max_len and i_max >= 0");
  }
  HomologyStabilizationReport report;
  report.max_len = max_len;
  report.i_max = i_max;
  report.window = window;

  InfiniteBraidSpec torus = InfiniteBraidSpec::torus(spec.n());
  for (int side = 0; side < 2; ++side) {
    const InfiniteBraidSpec& s = side == 0 ? spec : torus;
    auto& ranks = side == 0 ? report.braid_ranks : report.torus_ranks;
    for (long len = 1; len <= max_len; ++len) {
      BraidWord w = prefix(s, len);
      int neg = word_negatives(w);
      BigradedHomology h = normalized_homology(s.n(), w, c, Coefficients::kRationals,
                                               std::max(30, static_cast<int>(max_len)),
                                               i_max + 1 + neg);
      for (const auto& [key, grp] : h.groups) {
        if (key.first > i_max || grp.rank == 0) continue;
        auto [it, fresh] = ranks.emplace(key, std::vector<long>(max_len, 0));
        it->second[len - 1] = grp.rank;
      }
    }
  }

  report.braid_cells = stabilize_cells(report.braid_ranks, max_len, window);
  report.torus_cells = stabilize_cells(report.torus_ranks, max_len, window);
  auto all_stable = [](const std::vector<StabilizationCell>& cells) {
    for (const auto& cell : cells) {
      if (!cell.stabilized) return false;
    }
    return true;
  };
  report.braid_stabilized = all_stable(report.braid_cells);
  report.torus_stabilized = all_stable(report.torus_cells);

  std::set<std::pair<int, long>> keys;
  for (const auto& [key, history] : report.braid_ranks) keys.insert(key);
  for (const auto& [key, history] : report.torus_ranks) keys.insert(key);
  report.tables_match = report.braid_stabilized && report.torus_stabilized;
  auto stable_value = [max_len](const std::map<std::pair<int, long>, std::vector<long>>& ranks,
                                const std::pair<int, long>& key) {
    auto it = ranks.find(key);
    return it == ranks.end() ? 0L : it->second[max_len - 1];
  };
  for (const auto& key : keys) {
    if (stable_value(report.braid_ranks, key) != stable_value(report.torus_ranks, key)) {
      report.tables_match = false;
    }
  }
  return report;
}

MinQReport minq_check(const MixedTangle& t, const ShiftLedger& led, const ClosureSpec& c,
                      int r, int max_crossings) {
  LinkDiagram link = close(t, c);
  int cc = link.crossings();
  if (cc > max_crossings || cc > 30) {
    throw std::length_error("crossing limit exceeded in the min-q scan");
  }
  long best = 0;
  bool first = true;
  for (std::uint64_t bits = 0; bits < (1ull << cc); ++bits) {
    long v = std::popcount(bits) - link.circles(static_cast<std::uint32_t>(bits));
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  MinQReport report;
  report.all_zero = link.circles(0);
  report.min_shifted_q = best + 1 + r + led.s_q;
  report.formula = 1 + r + led.s_q - report.all_zero;
  report.equal = report.min_shifted_q == report.formula;
  report.bound = led.y - c.maxima(t.n());
  report.bound_ok = report.formula >= report.bound;
  return report;
}

}  // namespace braidkh
