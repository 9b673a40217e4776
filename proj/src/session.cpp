#include "ttt/session.hpp"

#include <random>

namespace ttt {

std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::InProgress: return "in_progress";
    case SessionStatus::HumanWin: return "human_win";
    case SessionStatus::SpiWin: return "spi_win";
    case SessionStatus::Draw: return "draw";
    case SessionStatus::Faulted: return "faulted";
  }
  return "unknown";
}

SessionStatus session_status(GameStatus s) {
  switch (s) {
    case GameStatus::InProgress: return SessionStatus::InProgress;
    case GameStatus::HumanWin: return SessionStatus::HumanWin;
    case GameStatus::SpiWin: return SessionStatus::SpiWin;
    case GameStatus::Draw: return SessionStatus::Draw;
  }
  return SessionStatus::Faulted;
}

GameSession::GameSession(std::string id, Player first_mover, std::shared_ptr<const PolicyTable> table,
                         SessionConfig config, std::uint64_t noise_seed)
    : id_(std::move(id)),
      first_mover_(first_mover),
      table_(std::move(table)),
      config_(std::move(config)),
      thresholds_(config_.thresholds.value_or(optics::default_thresholds(config_.photometry))),
      masks_(optics::detection_masks(config_.geometry)),
      rng_(noise_seed) {
  config_.photometry.validate();
  thresholds_.validate();
}

bool GameSession::awaiting_scan() const {
  return (status_ == SessionStatus::HumanWin || status_ == SessionStatus::Draw) && !history_.empty() &&
         history_.back().actor == Player::Human;
}

std::optional<Player> GameSession::to_move() const {
  if (awaiting_scan()) return Player::Spi;
  if (status_ != SessionStatus::InProgress) return std::nullopt;
  return side_to_move(board_, first_mover_);
}

TurnRecord GameSession::spi_turn() {
  const auto next = to_move();
  if (!next) throw Error(Errc::TerminalState, "game " + id_ + " is over");
  if (*next != Player::Spi) throw Error(Errc::NotSpisTurn, "the human is to move");

  TurnRecord record;
  record.actor = Player::Spi;
  record.move_number = static_cast<int>(history_.size()) + 1;

  const optics::SceneImage scene = optics::render_board(board_, config_.geometry, config_.photometry);
  const int attempts = 1 + std::max(0, config_.retry_limit);
  bool matched = false;
  for (int i = 0; i < attempts && !matched; ++i) {
    record.measurements = optics::scan_state(scene, masks_, config_.photometry, rng_);
    record.scan_attempts = i + 1;
    matched = optics::classify(*record.measurements, thresholds_) == board_;
  }
  if (!matched) {
    status_ = SessionStatus::Faulted;
    throw Error(Errc::DetectionMismatch,
                "board misread " + std::to_string(attempts) + " times in game " + id_);
  }

  const OutputCode code = lookup(*table_, board_);
  record.output_code = code;
  if (code.is_move()) {
    if (awaiting_scan()) throw Error(Errc::UnknownState, "table proposes a move on a finished board");
    board_ = apply_move(board_, code.square(), Player::Spi);
    record.square = code.square();
    status_ = session_status(game_status(board_));
  } else if (!awaiting_scan()) {
    // A live board must always receive a move.
    throw Error(Errc::UnknownState, "table has no move for a live board");
  }
  history_.push_back(record);
  return record;
}

TurnRecord GameSession::human_turn(int square) {
  const auto next = to_move();
  if (!next) throw Error(Errc::TerminalState, "game " + id_ + " is over");
  if (*next != Player::Human) throw Error(Errc::NotHumansTurn, "the SPI player is to move");

  board_ = apply_move(board_, square, Player::Human);
  status_ = session_status(game_status(board_));
  TurnRecord record;
  record.actor = Player::Human;
  record.move_number = static_cast<int>(history_.size()) + 1;
  record.square = square;
  history_.push_back(record);
  return record;
}

Board GameSession::replay() const {
  Board b;
  for (const auto& rec : history_) {
    if (rec.square) b = b.set(*rec.square, occupied_by(rec.actor));
  }
  return b;
}

int random_agent(const Board& board, optics::Rng& rng) {
  const auto moves = legal_moves(board);
  std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
  return moves[pick(rng)];
}

}  // namespace ttt
