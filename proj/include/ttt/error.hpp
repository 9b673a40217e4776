#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ttt {

enum class Errc {
  TerminalState,
  OccupiedSquare,
  InvalidSquare,
  KeyOutOfRange,
  NotSpisTurn,
  NotHumansTurn,
  UnknownState,
  CorruptTable,
  InvalidGeometry,
  InvalidPhotometry,
  DimensionMismatch,
  EmptyMask,
  DetectionMismatch,
};

std::string_view to_string(Errc code);

// Single exception type for every domain failure; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ttt
