#include "ttt/minimax.hpp"

#include <algorithm>
#include <limits>

namespace ttt {

namespace {

constexpr std::int16_t kUnset = std::numeric_limits<std::int16_t>::min();

// Re-expresses a value found `plies` below a node as a value at that node.
int lift(int value, int plies) {
  if (value > 0) return value - plies;
  if (value < 0) return value + plies;
  return 0;
}

std::size_t slot(const Board& board, Player to_move) {
  return static_cast<std::size_t>(encode_key(board).value) * 2 + (to_move == Player::Spi ? 1 : 0);
}

}  // namespace

Solver::Solver() : memo_(static_cast<std::size_t>(kStateCount) * 2, kUnset) {}

int Solver::value_at(const Board& board, Player to_move) {
  switch (game_status(board)) {
    case GameStatus::SpiWin: return kWinScore;
    case GameStatus::HumanWin: return -kWinScore;
    case GameStatus::Draw: return 0;
    case GameStatus::InProgress: break;
  }
  auto& cached = memo_[slot(board, to_move)];
  if (cached != kUnset) return cached;

  const bool maximizing = to_move == Player::Spi;
  int best = maximizing ? std::numeric_limits<int>::min() : std::numeric_limits<int>::max();
  for (int sq = 1; sq <= kSquares; ++sq) {
    if (board.at(sq) != SquareState::Empty) continue;
    int v = lift(value_at(board.set(sq, occupied_by(to_move)), opponent(to_move)), 1);
    best = maximizing ? std::max(best, v) : std::min(best, v);
  }
  cached = static_cast<std::int16_t>(best);
  ++filled_;
  return best;
}

Score Solver::minimax_value(const Board& board, Player to_move, int depth) {
  return Score{lift(value_at(board, to_move), depth)};
}

std::vector<int> Solver::optimal_squares(const Board& board) {
  if (is_terminal(game_status(board))) throw Error(Errc::TerminalState, "game is over");
  std::vector<std::pair<int, int>> scored;
  for (int sq : legal_moves(board)) {
    scored.emplace_back(sq, lift(value_at(board.set(sq, SquareState::SpiOccupied), Player::Human), 1));
  }
  int best = std::max_element(scored.begin(), scored.end(),
                              [](const auto& a, const auto& b) { return a.second < b.second; })
                 ->second;
  std::vector<int> out;
  for (auto [sq, v] : scored) {
    if (v == best) out.push_back(sq);
  }
  return out;
}

MoveDecision Solver::best_move(const Board& board) {
  if (is_terminal(game_status(board))) throw Error(Errc::TerminalState, "game is over");
  if (!spi_may_move(board)) throw Error(Errc::NotSpisTurn, "the human is to move");

  MoveDecision decision;
  int best = std::numeric_limits<int>::min();
  for (int sq : kPreferenceOrder) {
    if (board.at(sq) != SquareState::Empty) continue;
    const Board child = board.set(sq, SquareState::SpiOccupied);
    int v = lift(value_at(child, Player::Human), 1);
    if (v > best) {
      best = v;
      decision.square = sq;
      decision.immediate_win = winner(child) == Player::Spi;
    }
  }
  decision.predicted = Score{best}.outcome();
  return decision;
}

namespace {
Solver& thread_solver() {
  thread_local Solver solver;
  return solver;
}
}  // namespace

Score minimax_value(const Board& board, Player to_move, int depth) {
  return thread_solver().minimax_value(board, to_move, depth);
}

MoveDecision best_move(const Board& board) { return thread_solver().best_move(board); }

}  // namespace ttt
