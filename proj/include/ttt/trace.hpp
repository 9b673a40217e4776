#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ttt/session.hpp"

namespace ttt {

// {"move", "actor", "square", "measurements", "code", "pattern_index", "scan_attempts"};
// absent fields are null. "code" uses the table's wire byte.
nlohmann::json to_json(const TurnRecord& record);

// One JSON object per line, one line per turn.
std::string to_ndjson(const std::vector<TurnRecord>& history);

}  // namespace ttt
