#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttt/board.hpp"

namespace ttt {

// The system's response to a detected board: one of nineteen display patterns
// or no illumination at all.
//
//   pattern 1..9    move to that square
//   pattern 10      the human has already won
//   pattern 11..19  move to square (pattern - 10), which wins for the SPI player
class OutputCode {
 public:
  enum class Kind : std::uint8_t { Move, HumanWon, NoAction };

  static OutputCode move(int square, bool winning);
  static OutputCode human_won() { return OutputCode(Kind::HumanWon, 0, false); }
  static OutputCode no_action() { return OutputCode(Kind::NoAction, 0, false); }

  // Wire byte: 0..8 plain move, 9 human won, 10..18 winning move, 255 no action.
  static std::optional<OutputCode> from_byte(std::uint8_t byte);
  static std::optional<OutputCode> from_pattern_index(int index);

  Kind kind() const { return kind_; }
  bool is_move() const { return kind_ == Kind::Move; }
  int square() const { return square_; }
  bool winning() const { return winning_; }

  std::optional<int> pattern_index() const;
  std::uint8_t to_byte() const;

  bool operator==(const OutputCode&) const = default;

 private:
  OutputCode(Kind kind, int square, bool winning) : kind_(kind), square_(square), winning_(winning) {}

  Kind kind_;
  int square_;
  bool winning_;
};

std::string to_string(const OutputCode& code);

struct TableMeta {
  int version = 1;
  std::string build_timestamp;
  std::string tie_break_rule_id;

  bool operator==(const TableMeta&) const = default;
};

// Immutable map from state key to output code; dense storage gives O(1) lookup.
class PolicyTable {
 public:
  struct Entry {
    StateKey key;
    OutputCode code;
  };

  PolicyTable() { slots_.fill(kAbsent); }

  // Throws CorruptTable on a duplicate key.
  void insert(StateKey key, OutputCode code);

  std::optional<OutputCode> find(StateKey key) const;
  std::size_t entry_count() const { return count_; }
  std::vector<Entry> entries() const;  // ascending by key

  TableMeta& meta() { return meta_; }
  const TableMeta& meta() const { return meta_; }

  // Entries and version; the timestamp and rule id are informational.
  bool same_content(const PolicyTable& other) const;

 private:
  static constexpr std::uint8_t kAbsent = 0xFE;
  std::array<std::uint8_t, kStateCount> slots_{};
  std::size_t count_ = 0;
  TableMeta meta_;
};

// The output code the system must show for `board`, or nullopt for boards it is
// never asked about (strictly the human's turn).
std::optional<OutputCode> response_for(const Board& board);

PolicyTable build_table();

// Throws UnknownState if the board is not in the table.
OutputCode lookup(const PolicyTable& table, const Board& board);

enum class TableFormat { Binary, Json };

std::vector<std::uint8_t> serialize(const PolicyTable& table, TableFormat format);

// Detects the format from the leading bytes. Throws CorruptTable.
PolicyTable deserialize(const std::vector<std::uint8_t>& bytes);

void save_table(const PolicyTable& table, const std::string& path, TableFormat format);
PolicyTable load_table(const std::string& path);

}  // namespace ttt
