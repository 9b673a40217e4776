#pragma once

// Brute-force reference computations for the tests. Deliberately standalone:
// boards are plain int arrays with the 1/2/3 state codes, and nothing here
// calls into the library under test.

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Cells = std::array<int, 9>;  // 1 human, 2 empty, 3 spi; index 0 = square 1

constexpr int kHuman = 1;
constexpr int kEmpty = 2;
constexpr int kSpi = 3;
constexpr int kWin = 100;

inline int line_owner(const Cells& c) {
  static constexpr int lines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                      {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
  for (const auto& l : lines) {
    if (c[l[0]] != kEmpty && c[l[0]] == c[l[1]] && c[l[1]] == c[l[2]]) return c[l[0]];
  }
  return 0;
}

inline bool full(const Cells& c) { return std::find(c.begin(), c.end(), kEmpty) == c.end(); }
inline bool over(const Cells& c) { return line_owner(c) != 0 || full(c); }

inline int key_of(const Cells& c) {
  int key = 0;
  int pow = 1;
  for (int v : c) {
    key += (v - 1) * pow;
    pow *= 3;
  }
  return key;
}

inline Cells cells_of(int key) {
  Cells c{};
  for (auto& v : c) {
    v = key % 3 + 1;
    key /= 3;
  }
  return c;
}

inline int count(const Cells& c, int v) { return static_cast<int>(std::count(c.begin(), c.end(), v)); }

// Depth-first expansion of the whole game tree from the empty board.
inline void expand(Cells c, int mover, std::set<int>& seen) {
  seen.insert(key_of(c));
  if (over(c)) return;
  for (int i = 0; i < 9; ++i) {
    if (c[i] != kEmpty) continue;
    c[i] = mover;
    expand(c, mover == kSpi ? kHuman : kSpi, seen);
    c[i] = kEmpty;
  }
}

inline std::set<int> reachable(int first_mover) {
  std::set<int> seen;
  Cells empty;
  empty.fill(kEmpty);
  expand(empty, first_mover, seen);
  return seen;
}

inline std::set<int> reachable_any() {
  auto a = reachable(kSpi);
  auto b = reachable(kHuman);
  a.insert(b.begin(), b.end());
  return a;
}

// Boards the SPI side may be shown: terminal ones, or live with #spi <= #human.
inline std::size_t table_size() {
  std::size_t n = 0;
  for (int key : reachable_any()) {
    const Cells c = cells_of(key);
    if (over(c) || count(c, kSpi) <= count(c, kHuman)) ++n;
  }
  return n;
}

// Plain minimax with absolute depth shaping; no memo, no pruning.
inline int minimax(Cells c, int to_move, int depth) {
  const int owner = line_owner(c);
  if (owner == kSpi) return kWin - depth;
  if (owner == kHuman) return -kWin + depth;
  if (full(c)) return 0;
  int best = to_move == kSpi ? -1000 : 1000;
  for (int i = 0; i < 9; ++i) {
    if (c[i] != kEmpty) continue;
    c[i] = to_move;
    const int v = minimax(c, to_move == kSpi ? kHuman : kSpi, depth + 1);
    c[i] = kEmpty;
    best = to_move == kSpi ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

}  // namespace oracle
