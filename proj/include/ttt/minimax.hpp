#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "ttt/board.hpp"

namespace ttt {

// Magnitude of a won position; a win found `depth` plies below the query root
// scores K - depth so that faster wins and slower losses are preferred.
inline constexpr int kWinScore = 100;

// Equal-valued moves are broken by this fixed order: center, corners, edges.
inline constexpr std::array<int, kSquares> kPreferenceOrder = {5, 1, 3, 7, 9, 2, 4, 6, 8};
inline constexpr const char* kTieBreakRuleId = "center-corners-edges";

struct Score {
  int value = 0;

  // Positive: SPI wins under perfect play; negative: human wins; zero: draw.
  GameStatus outcome() const {
    return value > 0 ? GameStatus::SpiWin : value < 0 ? GameStatus::HumanWin : GameStatus::Draw;
  }

  auto operator<=>(const Score&) const = default;
};

struct MoveDecision {
  int square = 0;
  GameStatus predicted = GameStatus::InProgress;
  bool immediate_win = false;

  bool operator==(const MoveDecision&) const = default;
};

// Exhaustive memoized minimax over the tic-tac-toe tree. The memo is keyed by
// (state key, side to move) and stores the value relative to that node, so one
// solver instance serves every query depth. Not thread-safe; give each worker
// its own instance, or use the free functions below which keep one per thread.
class Solver {
 public:
  Solver();

  Score minimax_value(const Board& board, Player to_move, int depth = 0);

  // Throws TerminalState, or NotSpisTurn when the SPI player has more pieces.
  MoveDecision best_move(const Board& board);

  // Every square attaining the best child value, ascending.
  std::vector<int> optimal_squares(const Board& board);

  std::size_t memo_size() const { return filled_; }

 private:
  int value_at(const Board& board, Player to_move);
  std::vector<std::int16_t> memo_;
  std::size_t filled_ = 0;
};

Score minimax_value(const Board& board, Player to_move, int depth = 0);
MoveDecision best_move(const Board& board);

}  // namespace ttt
