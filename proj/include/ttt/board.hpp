#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttt/error.hpp"

namespace ttt {

/*
 * Squares are numbered 1..9 row-major from the top-left corner:
 *
 *   1 2 3
 *   4 5 6
 *   7 8 9
 *
 * The human plays black cards, the SPI player white cards. The detected state
 * vector uses 1 = human, 2 = empty (gray), 3 = SPI.
 */
inline constexpr int kSquares = 9;
inline constexpr int kStateCount = 19683;  // 3^9
inline constexpr int kCenter = 5;

enum class Player : std::uint8_t { Human, Spi };

enum class SquareState : std::uint8_t { HumanOccupied = 1, Empty = 2, SpiOccupied = 3 };

enum class GameStatus : std::uint8_t { InProgress, HumanWin, SpiWin, Draw };

constexpr Player opponent(Player p) { return p == Player::Human ? Player::Spi : Player::Human; }

constexpr SquareState occupied_by(Player p) {
  return p == Player::Human ? SquareState::HumanOccupied : SquareState::SpiOccupied;
}

constexpr int to_code(SquareState s) { return static_cast<int>(s); }
std::optional<SquareState> square_state_from_code(int code);

std::string_view to_string(Player p);
std::string_view to_string(GameStatus s);

constexpr bool is_terminal(GameStatus s) { return s != GameStatus::InProgress; }

struct StateKey {
  std::uint16_t value = 0;

  auto operator<=>(const StateKey&) const = default;
};

class Board {
 public:
  Board() { squares_.fill(SquareState::Empty); }
  explicit Board(const std::array<SquareState, kSquares>& squares) : squares_(squares) {}

  // Builds a board from nine state codes in {1,2,3}; throws InvalidSquare otherwise.
  static Board from_codes(const std::array<int, kSquares>& codes);

  // Convenience for tests and fixtures: lists of squares held by each side.
  static Board with(std::initializer_list<int> human, std::initializer_list<int> spi);

  // 1-based access.
  SquareState at(int square) const;
  const std::array<SquareState, kSquares>& squares() const { return squares_; }
  std::array<int, kSquares> codes() const;

  int count(SquareState s) const;
  int occupied() const { return kSquares - count(SquareState::Empty); }

  // Returns a copy with `square` set to `state`; no rule checks.
  Board set(int square, SquareState state) const;

  bool operator==(const Board&) const = default;

 private:
  std::array<SquareState, kSquares> squares_;
};

// Throws InvalidSquare unless 1 <= square <= 9.
void check_square(int square);

std::optional<Player> winner(const Board& board);
GameStatus game_status(const Board& board);

// Ascending list of empty squares. Throws TerminalState on a finished game.
std::vector<int> legal_moves(const Board& board);

// Throws TerminalState, InvalidSquare or OccupiedSquare.
Board apply_move(const Board& board, int square, Player player);

StateKey encode_key(const Board& board);
Board decode_key(StateKey key);
Board decode_key(int key);

// Player to move on a non-terminal board given who opened the game, or nullopt
// if the piece counts cannot arise from that opening.
std::optional<Player> side_to_move(const Board& board, Player first_mover);

// True when the SPI player must respond to this non-terminal board under some
// opening, i.e. it is not strictly the human's turn (#spi <= #human).
bool spi_may_move(const Board& board);

// All boards reachable from the empty board by alternating play with the given
// opener, stopping at terminal positions. Sorted ascending by key.
std::vector<StateKey> enumerate_reachable(Player first_mover);

// One of the eight symmetries of the square grid, as a permutation of squares:
// result.at(i) = board.at(perm[i]).
using Symmetry = std::array<int, kSquares>;
const std::array<Symmetry, 8>& dihedral_symmetries();
Board transform(const Board& board, const Symmetry& sym);
// Where square `square` of the original board lands after transform().
int map_square(int square, const Symmetry& sym);

// Three-line ASCII rendering using X for human, O for SPI, '.' for empty.
std::string to_ascii(const Board& board);

}  // namespace ttt
