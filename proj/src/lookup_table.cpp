#include "ttt/lookup_table.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <set>

#include <json.hpp>

#include "ttt/minimax.hpp"

namespace ttt {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'T', 'T', 'T', 'L'};
constexpr std::uint8_t kFormatVersion = 0x01;
constexpr std::uint8_t kNoActionByte = 255;
constexpr std::size_t kHeaderSize = 9;
constexpr std::size_t kRecordSize = 3;

[[noreturn]] void corrupt(const std::string& what) { throw Error(Errc::CorruptTable, what); }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::uint8_t> to_binary(const PolicyTable& table) {
  const auto entries = table.entries();
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.reserve(kHeaderSize + entries.size() * kRecordSize);
  out.push_back(kFormatVersion);
  const auto n = static_cast<std::uint32_t>(entries.size());
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(n >> shift));
  for (const auto& e : entries) {
    out.push_back(static_cast<std::uint8_t>(e.key.value & 0xFF));
    out.push_back(static_cast<std::uint8_t>(e.key.value >> 8));
    out.push_back(e.code.to_byte());
  }
  return out;
}

void insert_checked(PolicyTable& table, long long key, long long byte) {
  if (key < 0 || key >= kStateCount) corrupt("key " + std::to_string(key) + " out of range");
  if (byte < 0 || byte > 255) corrupt("code " + std::to_string(byte) + " is not a byte");
  auto code = OutputCode::from_byte(static_cast<std::uint8_t>(byte));
  if (!code) corrupt("invalid code byte " + std::to_string(byte));
  table.insert(StateKey{static_cast<std::uint16_t>(key)}, *code);
}

PolicyTable from_binary(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize) corrupt("truncated header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) corrupt("bad magic");
  if (bytes[4] != kFormatVersion) corrupt("unsupported version " + std::to_string(bytes[4]));
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(bytes[5 + i]) << (8 * i);
  const std::size_t body = bytes.size() - kHeaderSize;
  if (body % kRecordSize != 0 || body / kRecordSize != n) {
    corrupt("entry count " + std::to_string(n) + " does not match " + std::to_string(body) + " payload bytes");
  }
  PolicyTable table;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t at = kHeaderSize + i * kRecordSize;
    const int key = bytes[at] | (bytes[at + 1] << 8);
    insert_checked(table, key, bytes[at + 2]);
  }
  table.meta().version = kFormatVersion;
  table.meta().tie_break_rule_id = kTieBreakRuleId;
  return table;
}

std::vector<std::uint8_t> to_json(const PolicyTable& table) {
  nlohmann::json doc;
  doc["version"] = table.meta().version;
  doc["build_timestamp"] = table.meta().build_timestamp;
  doc["tie_break_rule"] = table.meta().tie_break_rule_id;
  doc["entry_count"] = table.entry_count();
  auto& entries = doc["entries"] = nlohmann::json::array();
  for (const auto& e : table.entries()) entries.push_back({{"key", e.key.value}, {"code", e.code.to_byte()}});
  const std::string text = doc.dump(1);
  return {text.begin(), text.end()};
}

PolicyTable from_json(const std::vector<std::uint8_t>& bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::exception& e) {
    corrupt(std::string("malformed json: ") + e.what());
  }
  if (!doc.is_object()) corrupt("json root is not an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"] != kFormatVersion) {
    corrupt("missing or unsupported version");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) corrupt("missing entries array");

  PolicyTable table;
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("key") || !e.contains("code") || !e["key"].is_number_integer() ||
        !e["code"].is_number_integer()) {
      corrupt("malformed entry");
    }
    insert_checked(table, e["key"].get<long long>(), e["code"].get<long long>());
  }
  if (doc.contains("entry_count")) {
    if (!doc["entry_count"].is_number_unsigned() || doc["entry_count"].get<std::size_t>() != table.entry_count()) {
      corrupt("entry_count does not match entries");
    }
  }
  table.meta().version = kFormatVersion;
  table.meta().build_timestamp = doc.value("build_timestamp", "");
  table.meta().tie_break_rule_id = doc.value("tie_break_rule", kTieBreakRuleId);
  return table;
}

}  // namespace

OutputCode OutputCode::move(int square, bool winning) {
  check_square(square);
  return OutputCode(Kind::Move, square, winning);
}

std::optional<OutputCode> OutputCode::from_byte(std::uint8_t byte) {
  if (byte <= 8) return move(byte + 1, false);
  if (byte == 9) return human_won();
  if (byte <= 18) return move(byte - 9, true);
  if (byte == kNoActionByte) return no_action();
  return std::nullopt;
}

std::optional<OutputCode> OutputCode::from_pattern_index(int index) {
  if (index < 1 || index > 19) return std::nullopt;
  return from_byte(static_cast<std::uint8_t>(index - 1));
}

std::optional<int> OutputCode::pattern_index() const {
  switch (kind_) {
    case Kind::Move: return winning_ ? 10 + square_ : square_;
    case Kind::HumanWon: return 10;
    case Kind::NoAction: return std::nullopt;
  }
  return std::nullopt;
}

std::uint8_t OutputCode::to_byte() const {
  auto index = pattern_index();
  return index ? static_cast<std::uint8_t>(*index - 1) : kNoActionByte;
}

std::string to_string(const OutputCode& code) {
  switch (code.kind()) {
    case OutputCode::Kind::Move:
      return "Move(" + std::to_string(code.square()) + (code.winning() ? ", winning)" : ")");
    case OutputCode::Kind::HumanWon: return "HumanWon";
    case OutputCode::Kind::NoAction: return "NoAction";
  }
  return "?";
}

void PolicyTable::insert(StateKey key, OutputCode code) {
  if (key.value >= kStateCount) corrupt("key " + std::to_string(key.value) + " out of range");
  auto& slot = slots_[key.value];
  if (slot != kAbsent) corrupt("duplicate key " + std::to_string(key.value));
  slot = code.to_byte();
  ++count_;
}

std::optional<OutputCode> PolicyTable::find(StateKey key) const {
  if (key.value >= kStateCount || slots_[key.value] == kAbsent) return std::nullopt;
  return OutputCode::from_byte(slots_[key.value]);
}

std::vector<PolicyTable::Entry> PolicyTable::entries() const {
  std::vector<Entry> out;
  out.reserve(count_);
  for (int k = 0; k < kStateCount; ++k) {
    if (slots_[k] != kAbsent) out.push_back({StateKey{static_cast<std::uint16_t>(k)}, *OutputCode::from_byte(slots_[k])});
  }
  return out;
}

bool PolicyTable::same_content(const PolicyTable& other) const {
  return count_ == other.count_ && slots_ == other.slots_ && meta_.version == other.meta_.version;
}

std::optional<OutputCode> response_for(const Board& board) {
  switch (game_status(board)) {
    case GameStatus::HumanWin: return OutputCode::human_won();
    case GameStatus::SpiWin:
    case GameStatus::Draw: return OutputCode::no_action();
    case GameStatus::InProgress: break;
  }
  if (!spi_may_move(board)) return std::nullopt;
  const MoveDecision d = best_move(board);
  return OutputCode::move(d.square, d.immediate_win);
}

PolicyTable build_table() {
  std::set<StateKey> domain;
  for (Player first : {Player::Spi, Player::Human}) {
    for (StateKey key : enumerate_reachable(first)) domain.insert(key);
  }
  PolicyTable table;
  for (StateKey key : domain) {
    if (auto code = response_for(decode_key(key))) table.insert(key, *code);
  }
  table.meta().version = kFormatVersion;
  table.meta().build_timestamp = utc_timestamp();
  table.meta().tie_break_rule_id = kTieBreakRuleId;
  return table;
}

OutputCode lookup(const PolicyTable& table, const Board& board) {
  const StateKey key = encode_key(board);
  auto code = table.find(key);
  if (!code) throw Error(Errc::UnknownState, "no table entry for key " + std::to_string(key.value));
  return *code;
}

std::vector<std::uint8_t> serialize(const PolicyTable& table, TableFormat format) {
  return format == TableFormat::Binary ? to_binary(table) : to_json(table);
}

PolicyTable deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() >= kMagic.size() && std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    return from_binary(bytes);
  }
  auto first = std::find_if(bytes.begin(), bytes.end(), [](std::uint8_t b) { return !std::isspace(b); });
  if (first != bytes.end() && *first == '{') return from_json(bytes);
  corrupt("unrecognized table format");
}

void save_table(const PolicyTable& table, const std::string& path, TableFormat format) {
  const auto bytes = serialize(table, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

PolicyTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace ttt
