#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ttt/lookup_table.hpp"

namespace ttt {

// Outcome counts from walking every play path with the SPI side following the
// table and the human side trying every legal reply.
struct PlayTreeStats {
  std::size_t queries = 0;         // lookups the live loop would perform
  std::size_t missing = 0;         // lookups that found no entry
  std::size_t wrong_terminal = 0;  // terminal scans answered with a move
  std::size_t spi_wins = 0;
  std::size_t human_wins = 0;
  std::size_t draws = 0;
};

PlayTreeStats explore_play_tree(const PolicyTable& table, Player first_mover);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

// Codes agree with their boards, every play path resolves, moves match a fresh
// solver, the size matches reachability, and both wire formats round-trip.
VerificationReport verify_table(const PolicyTable& table);

// Number of reachable boards the system may be asked about.
std::size_t expected_entry_count();

}  // namespace ttt
