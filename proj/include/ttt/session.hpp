#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttt/board.hpp"
#include "ttt/lookup_table.hpp"
#include "ttt/optics.hpp"

namespace ttt {

enum class SessionStatus : std::uint8_t { InProgress, HumanWin, SpiWin, Draw, Faulted };

std::string_view to_string(SessionStatus s);
SessionStatus session_status(GameStatus s);

struct TurnRecord {
  int move_number = 0;
  Player actor = Player::Spi;
  // Absent for the closing scan after a game-ending human move.
  std::optional<int> square;
  std::optional<optics::MeasurementVector> measurements;
  std::optional<OutputCode> output_code;
  int scan_attempts = 0;

  bool operator==(const TurnRecord&) const = default;
};

struct SessionConfig {
  optics::GeometryConfig geometry = optics::GeometryConfig::standard();
  optics::PhotometryConfig photometry;
  // Midpoints of the photometry levels when unset.
  std::optional<optics::Thresholds> thresholds;
  // Re-scans allowed after a misread before the game is abandoned.
  int retry_limit = 3;
};

// One live game: detect -> look up -> display -> apply, for both sides.
//
// The SPI side scans before every one of its moves, including the opening on an
// empty board, and once more after a human move that ends the game so that the
// "you win" pattern (or no pattern, for a draw) is produced.
class GameSession {
 public:
  GameSession(std::string id, Player first_mover, std::shared_ptr<const PolicyTable> table, SessionConfig config,
              std::uint64_t noise_seed);

  // Throws TerminalState, NotSpisTurn, UnknownState, or DetectionMismatch after
  // the retry budget is spent (the session is then Faulted).
  TurnRecord spi_turn();

  // Throws TerminalState, NotHumansTurn, InvalidSquare or OccupiedSquare; the
  // session is unchanged on error.
  TurnRecord human_turn(int square);

  // Who acts next; Spi also while the closing scan is pending. nullopt once over.
  std::optional<Player> to_move() const;
  bool awaiting_scan() const;

  const std::string& id() const { return id_; }
  Player first_mover() const { return first_mover_; }
  const Board& board() const { return board_; }
  SessionStatus status() const { return status_; }
  const std::vector<TurnRecord>& history() const { return history_; }
  const SessionConfig& config() const { return config_; }
  const optics::Thresholds& thresholds() const { return thresholds_; }
  int move_count() const { return board_.occupied(); }

  // The board obtained by replaying the recorded moves from empty.
  Board replay() const;

 private:
  std::string id_;
  Player first_mover_;
  std::shared_ptr<const PolicyTable> table_;
  SessionConfig config_;
  optics::Thresholds thresholds_;
  std::array<optics::IlluminationMask, kSquares> masks_;
  optics::Rng rng_;
  Board board_;
  SessionStatus status_ = SessionStatus::InProgress;
  std::vector<TurnRecord> history_;
};

// Uniform choice among the empty squares. Throws TerminalState.
int random_agent(const Board& board, optics::Rng& rng);

}  // namespace ttt
