#include "ttt/table_verify.hpp"

#include <algorithm>
#include <set>

#include "ttt/minimax.hpp"

namespace ttt {

namespace {

void walk(const PolicyTable& table, const Board& board, Player to_move, PlayTreeStats& stats) {
  switch (game_status(board)) {
    case GameStatus::SpiWin: ++stats.spi_wins; return;
    case GameStatus::Draw: ++stats.draws; return;
    case GameStatus::HumanWin: ++stats.human_wins; return;
    case GameStatus::InProgress: break;
  }
  if (to_move == Player::Human) {
    for (int sq : legal_moves(board)) {
      const Board next = board.set(sq, SquareState::HumanOccupied);
      if (is_terminal(game_status(next))) {
        // The live loop scans once more after a game-ending human move.
        ++stats.queries;
        auto code = table.find(encode_key(next));
        if (!code) ++stats.missing;
        else if (code->is_move()) ++stats.wrong_terminal;
      }
      walk(table, next, Player::Spi, stats);
    }
    return;
  }
  ++stats.queries;
  auto code = table.find(encode_key(board));
  if (!code) {
    ++stats.missing;
    return;
  }
  if (!code->is_move() || board.at(code->square()) != SquareState::Empty) {
    ++stats.wrong_terminal;
    return;
  }
  walk(table, board.set(code->square(), SquareState::SpiOccupied), Player::Human, stats);
}

bool consistent(const Board& board, const OutputCode& code) {
  const GameStatus status = game_status(board);
  switch (code.kind()) {
    case OutputCode::Kind::HumanWon: return status == GameStatus::HumanWin;
    case OutputCode::Kind::NoAction: return status == GameStatus::SpiWin || status == GameStatus::Draw;
    case OutputCode::Kind::Move: break;
  }
  if (status != GameStatus::InProgress || !spi_may_move(board)) return false;
  if (board.at(code.square()) != SquareState::Empty) return false;
  const bool wins = winner(board.set(code.square(), SquareState::SpiOccupied)) == Player::Spi;
  return wins == code.winning();
}

CheckResult check(std::string name, bool passed, std::string detail) {
  return CheckResult{std::move(name), passed, std::move(detail)};
}

}  // namespace

PlayTreeStats explore_play_tree(const PolicyTable& table, Player first_mover) {
  PlayTreeStats stats;
  walk(table, Board{}, first_mover, stats);
  return stats;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::size_t expected_entry_count() {
  std::set<StateKey> reachable;
  for (Player first : {Player::Spi, Player::Human}) {
    for (StateKey key : enumerate_reachable(first)) reachable.insert(key);
  }
  return static_cast<std::size_t>(std::count_if(reachable.begin(), reachable.end(), [](StateKey key) {
    const Board b = decode_key(key);
    return is_terminal(game_status(b)) || spi_may_move(b);
  }));
}

VerificationReport verify_table(const PolicyTable& table) {
  VerificationReport report;
  const auto entries = table.entries();

  std::size_t inconsistent = 0;
  std::size_t wrong_flag = 0;
  std::size_t mismatched = 0;
  Solver solver;
  for (const auto& [key, code] : entries) {
    const Board board = decode_key(key);
    if (!consistent(board, code)) ++inconsistent;
    if (!code.is_move()) continue;
    if (board.at(code.square()) == SquareState::Empty) {
      const bool wins = game_status(board.set(code.square(), SquareState::SpiOccupied)) == GameStatus::SpiWin;
      if (wins != code.winning()) ++wrong_flag;
    }
    if (is_terminal(game_status(board)) || !spi_may_move(board) ||
        solver.best_move(board).square != code.square()) {
      ++mismatched;
    }
  }
  report.checks.push_back(check("code-consistency", inconsistent == 0,
                                std::to_string(inconsistent) + " entries disagree with their board"));

  for (Player first : {Player::Spi, Player::Human}) {
    const PlayTreeStats s = explore_play_tree(table, first);
    const std::string who = first == Player::Spi ? "spi-first" : "human-first";
    report.checks.push_back(check("totality/" + who, s.missing == 0 && s.wrong_terminal == 0,
                                  std::to_string(s.queries) + " lookups, " + std::to_string(s.missing) +
                                      " missing, " + std::to_string(s.wrong_terminal) + " invalid"));
    report.checks.push_back(check("never-lose/" + who, s.human_wins == 0,
                                  std::to_string(s.spi_wins) + " wins, " + std::to_string(s.draws) + " draws, " +
                                      std::to_string(s.human_wins) + " losses"));
  }

  report.checks.push_back(check("live-equivalence", mismatched == 0,
                                std::to_string(mismatched) + " move entries differ from the solver"));
  report.checks.push_back(check("winning-flag", wrong_flag == 0,
                                std::to_string(wrong_flag) + " winning flags incorrect"));

  const std::size_t expected = expected_entry_count();
  report.checks.push_back(check("entry-count", table.entry_count() == expected,
                                std::to_string(table.entry_count()) + " entries, expected " +
                                    std::to_string(expected)));

  for (TableFormat format : {TableFormat::Binary, TableFormat::Json}) {
    const std::string name = format == TableFormat::Binary ? "roundtrip/binary" : "roundtrip/json";
    try {
      const PolicyTable copy = deserialize(serialize(table, format));
      report.checks.push_back(check(name, copy.same_content(table), "deserialized copy compared entry by entry"));
    } catch (const Error& e) {
      report.checks.push_back(check(name, false, e.what()));
    }
  }
  return report;
}

}  // namespace ttt
