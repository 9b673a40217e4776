#include "ttt/board.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace ttt {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::TerminalState: return "TerminalState";
    case Errc::OccupiedSquare: return "OccupiedSquare";
    case Errc::InvalidSquare: return "InvalidSquare";
    case Errc::KeyOutOfRange: return "KeyOutOfRange";
    case Errc::NotSpisTurn: return "NotSpisTurn";
    case Errc::NotHumansTurn: return "NotHumansTurn";
    case Errc::UnknownState: return "UnknownState";
    case Errc::CorruptTable: return "CorruptTable";
    case Errc::InvalidGeometry: return "InvalidGeometry";
    case Errc::InvalidPhotometry: return "InvalidPhotometry";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyMask: return "EmptyMask";
    case Errc::DetectionMismatch: return "DetectionMismatch";
  }
  return "Unknown";
}

namespace {

constexpr std::array<std::array<int, 3>, 8> kLines = {{
    {1, 2, 3}, {4, 5, 6}, {7, 8, 9},  // rows
    {1, 4, 7}, {2, 5, 8}, {3, 6, 9},  // columns
    {1, 5, 9}, {3, 5, 7},             // diagonals
}};

bool holds_line(const Board& board, SquareState s) {
  return std::any_of(kLines.begin(), kLines.end(), [&](const auto& line) {
    return board.at(line[0]) == s && board.at(line[1]) == s && board.at(line[2]) == s;
  });
}

std::array<Symmetry, 8> make_symmetries() {
  // Each transform maps a destination cell (r, c) to the source cell it copies.
  using Cell = std::pair<int, int>;
  const std::array<Cell (*)(int, int), 8> maps = {
      [](int r, int c) { return Cell{r, c}; },
      [](int r, int c) { return Cell{2 - c, r}; },
      [](int r, int c) { return Cell{2 - r, 2 - c}; },
      [](int r, int c) { return Cell{c, 2 - r}; },
      [](int r, int c) { return Cell{r, 2 - c}; },
      [](int r, int c) { return Cell{2 - r, c}; },
      [](int r, int c) { return Cell{c, r}; },
      [](int r, int c) { return Cell{2 - c, 2 - r}; },
  };
  std::array<Symmetry, 8> out{};
  for (std::size_t k = 0; k < maps.size(); ++k) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        auto [sr, sc] = maps[k](r, c);
        out[k][r * 3 + c] = sr * 3 + sc + 1;
      }
    }
  }
  return out;
}

}  // namespace

std::optional<SquareState> square_state_from_code(int code) {
  if (code < 1 || code > 3) return std::nullopt;
  return static_cast<SquareState>(code);
}

std::string_view to_string(Player p) { return p == Player::Human ? "human" : "spi"; }

std::string_view to_string(GameStatus s) {
  switch (s) {
    case GameStatus::InProgress: return "in_progress";
    case GameStatus::HumanWin: return "human_win";
    case GameStatus::SpiWin: return "spi_win";
    case GameStatus::Draw: return "draw";
  }
  return "unknown";
}

void check_square(int square) {
  if (square < 1 || square > kSquares) {
    throw Error(Errc::InvalidSquare, "square " + std::to_string(square) + " outside 1..9");
  }
}

Board Board::from_codes(const std::array<int, kSquares>& codes) {
  std::array<SquareState, kSquares> squares{};
  for (int i = 0; i < kSquares; ++i) {
    auto s = square_state_from_code(codes[i]);
    if (!s) throw Error(Errc::InvalidSquare, "state code " + std::to_string(codes[i]) + " not in {1,2,3}");
    squares[i] = *s;
  }
  return Board(squares);
}

Board Board::with(std::initializer_list<int> human, std::initializer_list<int> spi) {
  Board b;
  for (int sq : human) b = b.set(sq, SquareState::HumanOccupied);
  for (int sq : spi) b = b.set(sq, SquareState::SpiOccupied);
  return b;
}

SquareState Board::at(int square) const {
  check_square(square);
  return squares_[square - 1];
}

std::array<int, kSquares> Board::codes() const {
  std::array<int, kSquares> out{};
  std::transform(squares_.begin(), squares_.end(), out.begin(), [](SquareState s) { return to_code(s); });
  return out;
}

int Board::count(SquareState s) const {
  return static_cast<int>(std::count(squares_.begin(), squares_.end(), s));
}

Board Board::set(int square, SquareState state) const {
  check_square(square);
  Board b = *this;
  b.squares_[square - 1] = state;
  return b;
}

std::optional<Player> winner(const Board& board) {
  // On unreachable boards both sides may hold a line; the human is reported first.
  if (holds_line(board, SquareState::HumanOccupied)) return Player::Human;
  if (holds_line(board, SquareState::SpiOccupied)) return Player::Spi;
  return std::nullopt;
}

GameStatus game_status(const Board& board) {
  if (auto w = winner(board)) return *w == Player::Human ? GameStatus::HumanWin : GameStatus::SpiWin;
  if (board.count(SquareState::Empty) == 0) return GameStatus::Draw;
  return GameStatus::InProgress;
}

std::vector<int> legal_moves(const Board& board) {
  if (is_terminal(game_status(board))) {
    throw Error(Errc::TerminalState, "no legal moves on a finished game");
  }
  std::vector<int> moves;
  for (int sq = 1; sq <= kSquares; ++sq) {
    if (board.at(sq) == SquareState::Empty) moves.push_back(sq);
  }
  return moves;
}

Board apply_move(const Board& board, int square, Player player) {
  check_square(square);
  if (is_terminal(game_status(board))) throw Error(Errc::TerminalState, "game is over");
  if (board.at(square) != SquareState::Empty) {
    throw Error(Errc::OccupiedSquare, "square " + std::to_string(square) + " is occupied");
  }
  return board.set(square, occupied_by(player));
}

StateKey encode_key(const Board& board) {
  int key = 0;
  for (int i = kSquares; i >= 1; --i) key = key * 3 + (to_code(board.at(i)) - 1);
  return StateKey{static_cast<std::uint16_t>(key)};
}

Board decode_key(int key) {
  if (key < 0 || key >= kStateCount) {
    throw Error(Errc::KeyOutOfRange, "key " + std::to_string(key) + " outside [0, 19682]");
  }
  std::array<SquareState, kSquares> squares{};
  for (int i = 0; i < kSquares; ++i) {
    squares[i] = static_cast<SquareState>(key % 3 + 1);
    key /= 3;
  }
  return Board(squares);
}

Board decode_key(StateKey key) { return decode_key(static_cast<int>(key.value)); }

std::optional<Player> side_to_move(const Board& board, Player first_mover) {
  const int first = board.count(occupied_by(first_mover));
  const int second = board.count(occupied_by(opponent(first_mover)));
  if (first == second) return first_mover;
  if (first == second + 1) return opponent(first_mover);
  return std::nullopt;
}

bool spi_may_move(const Board& board) {
  return board.count(SquareState::SpiOccupied) <= board.count(SquareState::HumanOccupied);
}

std::vector<StateKey> enumerate_reachable(Player first_mover) {
  std::unordered_set<std::uint16_t> seen;
  std::deque<std::pair<Board, Player>> frontier;
  const Board empty;
  seen.insert(encode_key(empty).value);
  frontier.emplace_back(empty, first_mover);
  while (!frontier.empty()) {
    auto [board, mover] = frontier.front();
    frontier.pop_front();
    if (is_terminal(game_status(board))) continue;
    for (int sq : legal_moves(board)) {
      Board next = board.set(sq, occupied_by(mover));
      if (seen.insert(encode_key(next).value).second) frontier.emplace_back(next, opponent(mover));
    }
  }
  std::vector<StateKey> out;
  out.reserve(seen.size());
  for (auto v : seen) out.push_back(StateKey{v});
  std::sort(out.begin(), out.end());
  return out;
}

const std::array<Symmetry, 8>& dihedral_symmetries() {
  static const std::array<Symmetry, 8> syms = make_symmetries();
  return syms;
}

Board transform(const Board& board, const Symmetry& sym) {
  std::array<SquareState, kSquares> squares{};
  for (int i = 0; i < kSquares; ++i) squares[i] = board.at(sym[i]);
  return Board(squares);
}

int map_square(int square, const Symmetry& sym) {
  check_square(square);
  auto it = std::find(sym.begin(), sym.end(), square);
  return static_cast<int>(it - sym.begin()) + 1;
}

std::string to_ascii(const Board& board) {
  std::string out;
  for (int sq = 1; sq <= kSquares; ++sq) {
    switch (board.at(sq)) {
      case SquareState::HumanOccupied: out += 'X'; break;
      case SquareState::SpiOccupied: out += 'O'; break;
      case SquareState::Empty: out += '.'; break;
    }
    out += (sq % 3 == 0) ? '\n' : ' ';
  }
  return out;
}

}  // namespace ttt
