#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "oracle.hpp"
#include "ttt/minimax.hpp"
#include "ttt/table_verify.hpp"

using namespace ttt;

namespace {

// Terminal or SPI-to-move reachable boards, from the standalone oracle.
constexpr std::size_t kTableEntries = 6436;

const PolicyTable& table() {
  static const PolicyTable t = build_table();
  return t;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::KeyOutOfRange;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("output code numbering") {
  for (int sq = 1; sq <= 9; ++sq) {
    CHECK(OutputCode::move(sq, false).pattern_index() == sq);
    CHECK(OutputCode::move(sq, true).pattern_index() == 10 + sq);
    CHECK(OutputCode::move(sq, false).to_byte() == sq - 1);
    CHECK(OutputCode::move(sq, true).to_byte() == 9 + sq);
  }
  CHECK(OutputCode::human_won().pattern_index() == 10);
  CHECK(OutputCode::human_won().to_byte() == 9);
  CHECK_FALSE(OutputCode::no_action().pattern_index());
  CHECK(OutputCode::no_action().to_byte() == 255);

  int valid = 0;
  for (int byte = 0; byte < 256; ++byte) {
    auto code = OutputCode::from_byte(static_cast<std::uint8_t>(byte));
    if (!code) continue;
    ++valid;
    CHECK(code->to_byte() == byte);
  }
  CHECK(valid == 20);
  for (int index = 1; index <= 19; ++index) CHECK(OutputCode::from_pattern_index(index)->pattern_index() == index);
  CHECK_FALSE(OutputCode::from_pattern_index(0));
  CHECK_FALSE(OutputCode::from_pattern_index(20));
  CHECK_THROWS_AS(OutputCode::move(0, false), Error);
}

TEST_CASE("table examples") {
  const auto open = lookup(table(), Board{});
  CHECK(open == OutputCode::move(5, false));
  CHECK(open.pattern_index() == 5);

  const auto won = lookup(table(), Board::with({1, 5, 9}, {2, 3}));
  CHECK(won == OutputCode::human_won());
  CHECK(won.pattern_index() == 10);

  // Seventh move of a center opening where the top row is about to close.
  const auto finish = lookup(table(), Board::with({4, 7, 9}, {1, 3, 5}));
  CHECK(finish == OutputCode::move(2, true));
  CHECK(finish.pattern_index() == 12);

  CHECK(lookup(table(), Board::with({1, 3, 4, 8, 9}, {2, 5, 6, 7})) == OutputCode::no_action());
  CHECK(lookup(table(), Board::with({4, 5}, {1, 2, 3})) == OutputCode::no_action());

  CHECK(code_of([] { lookup(table(), Board::with({}, {1, 2})); }) == Errc::UnknownState);
  // Strictly the human's turn: never scanned, so not stored.
  CHECK(code_of([] { lookup(table(), Board::with({}, {5})); }) == Errc::UnknownState);
}

TEST_CASE("entry count matches the brute-force enumeration") {
  CHECK(oracle::table_size() == kTableEntries);
  CHECK(table().entry_count() == kTableEntries);
  CHECK(expected_entry_count() == kTableEntries);
  CHECK(table().meta().tie_break_rule_id == kTieBreakRuleId);
  CHECK(table().meta().version == 1);
  CHECK_FALSE(table().meta().build_timestamp.empty());
}

TEST_CASE("every move entry matches the live solver and its winning flag") {
  Solver solver;
  for (const auto& [key, code] : table().entries()) {
    const Board b = decode_key(key);
    switch (code.kind()) {
      case OutputCode::Kind::HumanWon: REQUIRE(winner(b) == Player::Human); break;
      case OutputCode::Kind::NoAction: REQUIRE(is_terminal(game_status(b))); break;
      case OutputCode::Kind::Move: {
        REQUIRE(solver.best_move(b).square == code.square());
        const Board after = b.set(code.square(), SquareState::SpiOccupied);
        REQUIRE(code.winning() == (game_status(after) == GameStatus::SpiWin));
        break;
      }
    }
  }
}

TEST_CASE("every lookup made during play resolves and the SPI side never loses") {
  for (Player first : {Player::Spi, Player::Human}) {
    const PlayTreeStats s = explore_play_tree(table(), first);
    CHECK(s.missing == 0);
    CHECK(s.wrong_terminal == 0);
    CHECK(s.human_wins == 0);
    CHECK(s.queries > 0);
  }
}

TEST_CASE("verify_table passes on the built table and flags tampering") {
  CHECK(verify_table(table()).passed());

  PolicyTable tampered;
  for (const auto& [key, code] : table().entries()) {
    if (key == encode_key(Board{})) tampered.insert(key, OutputCode::move(1, false));
    else tampered.insert(key, code);
  }
  const auto report = verify_table(tampered);
  CHECK_FALSE(report.passed());
  bool live_failed = false;
  for (const auto& c : report.checks) live_failed |= c.name == "live-equivalence" && !c.passed;
  CHECK(live_failed);

  PolicyTable partial;
  partial.insert(encode_key(Board{}), OutputCode::move(5, false));
  CHECK_FALSE(verify_table(partial).passed());
}

TEST_CASE("binary layout") {
  const auto bytes = serialize(table(), TableFormat::Binary);
  REQUIRE(bytes.size() == 9 + 3 * kTableEntries);
  CHECK(bytes[0] == 'T');
  CHECK(bytes[1] == 'T');
  CHECK(bytes[2] == 'T');
  CHECK(bytes[3] == 'L');
  CHECK(bytes[4] == 0x01);
  const std::uint32_t n = bytes[5] | (bytes[6] << 8) | (bytes[7] << 16) | (static_cast<std::uint32_t>(bytes[8]) << 24);
  CHECK(n == kTableEntries);
  // Records are sorted by key; find the empty board (key 9841 = 0x2671).
  bool found = false;
  for (std::size_t at = 9; at < bytes.size(); at += 3) {
    if (bytes[at] == 0x71 && bytes[at + 1] == 0x26) {
      CHECK(bytes[at + 2] == 4);  // Move(5), pattern 5
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("serialization round-trips") {
  for (TableFormat f : {TableFormat::Binary, TableFormat::Json}) {
    const PolicyTable copy = deserialize(serialize(table(), f));
    CHECK(copy.same_content(table()));
    CHECK(copy.entry_count() == table().entry_count());
    CHECK(copy.meta().tie_break_rule_id == table().meta().tie_break_rule_id);
  }
  const PolicyTable from_json = deserialize(serialize(table(), TableFormat::Json));
  CHECK(from_json.meta() == table().meta());

  const auto path = (std::filesystem::temp_directory_path() / "ttt_table_test.bin").string();
  save_table(table(), path, TableFormat::Binary);
  CHECK(load_table(path).same_content(table()));
  std::remove(path.c_str());
}

TEST_CASE("corrupt binary tables are rejected") {
  const auto good = serialize(table(), TableFormat::Binary);
  auto corrupt = [](std::vector<std::uint8_t> bytes) {
    return code_of([&] { deserialize(bytes); });
  };

  CHECK(corrupt({good.begin(), good.begin() + 5}) == Errc::CorruptTable);
  CHECK(corrupt({good.begin(), good.end() - 1}) == Errc::CorruptTable);
  CHECK(corrupt({}) == Errc::CorruptTable);

  auto bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(corrupt(bad_magic) == Errc::CorruptTable);

  auto bad_version = good;
  bad_version[4] = 0x02;
  CHECK(corrupt(bad_version) == Errc::CorruptTable);

  auto bad_count = good;
  bad_count[5] ^= 0x01;
  CHECK(corrupt(bad_count) == Errc::CorruptTable);

  auto bad_code = good;
  bad_code[11] = 19;
  CHECK(corrupt(bad_code) == Errc::CorruptTable);

  auto bad_key = good;
  bad_key[9] = 0xFF;
  bad_key[10] = 0xFF;
  CHECK(corrupt(bad_key) == Errc::CorruptTable);

  auto duplicate = good;
  duplicate[12] = duplicate[9];
  duplicate[13] = duplicate[10];
  CHECK(corrupt(duplicate) == Errc::CorruptTable);
}

TEST_CASE("corrupt json tables are rejected") {
  auto corrupt = [](const std::string& text) {
    return code_of([&] { deserialize(std::vector<std::uint8_t>(text.begin(), text.end())); });
  };
  CHECK(corrupt("{\"version\": 1, \"entries\": [") == Errc::CorruptTable);
  CHECK(corrupt("{\"version\": 2, \"entries\": []}") == Errc::CorruptTable);
  CHECK(corrupt("{\"entries\": []}") == Errc::CorruptTable);
  CHECK(corrupt("{\"version\": 1, \"entries\": [{\"key\": 9841, \"code\": 40}]}") == Errc::CorruptTable);
  CHECK(corrupt("{\"version\": 1, \"entries\": [{\"key\": 9841, \"code\": 4}, {\"key\": 9841, \"code\": 4}]}") ==
        Errc::CorruptTable);
  CHECK(corrupt("{\"version\": 1, \"entry_count\": 2, \"entries\": [{\"key\": 9841, \"code\": 4}]}") ==
        Errc::CorruptTable);
  CHECK(corrupt("{\"version\": 1, \"entries\": [{\"key\": 19683, \"code\": 4}]}") == Errc::CorruptTable);
  CHECK(corrupt("not a table") == Errc::CorruptTable);

  const std::string ok = "{\"version\": 1, \"entries\": [{\"key\": 9841, \"code\": 4}]}";
  const PolicyTable t = deserialize(std::vector<std::uint8_t>(ok.begin(), ok.end()));
  CHECK(t.entry_count() == 1);
  CHECK(lookup(t, Board{}) == OutputCode::move(5, false));
}
