#include "ttt/trace.hpp"

namespace ttt {

nlohmann::json to_json(const TurnRecord& record) {
  nlohmann::json j;
  j["move"] = record.move_number;
  j["actor"] = to_string(record.actor);
  j["square"] = record.square ? nlohmann::json(*record.square) : nlohmann::json(nullptr);
  j["measurements"] = record.measurements ? nlohmann::json(*record.measurements) : nlohmann::json(nullptr);
  if (record.output_code) {
    j["code"] = record.output_code->to_byte();
    const auto index = record.output_code->pattern_index();
    j["pattern_index"] = index ? nlohmann::json(*index) : nlohmann::json(nullptr);
  } else {
    j["code"] = nullptr;
    j["pattern_index"] = nullptr;
  }
  j["scan_attempts"] = record.scan_attempts;
  return j;
}

std::string to_ndjson(const std::vector<TurnRecord>& history) {
  std::string out;
  for (const auto& rec : history) {
    out += to_json(rec).dump();
    out += '\n';
  }
  return out;
}

}  // namespace ttt
