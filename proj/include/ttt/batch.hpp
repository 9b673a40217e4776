#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "ttt/session.hpp"

namespace ttt {

struct BatchConfig {
  int games = 1000;
  Player first_mover = Player::Spi;  // Human means the random player opens
  std::uint64_t seed = 42;
  double noise_sigma = 0.02;
  SessionConfig session;  // photometry.noise_sigma is overridden by noise_sigma
  unsigned workers = 1;
};

// Outcomes from the SPI player's point of view. Faulted games (detection gave
// up) are counted apart from wins, draws and losses.
struct BatchStats {
  int games = 0;
  int wins = 0;
  int draws = 0;
  int losses = 0;
  int faulted = 0;
  std::uint64_t seed = 0;

  bool operator==(const BatchStats&) const = default;
};

// Plays game `index` of a batch to completion against random_agent. Each game
// draws its noise and opponent streams from (seed, index) alone, so results do
// not depend on scheduling.
GameSession simulate_game(std::shared_ptr<const PolicyTable> table, const BatchConfig& config, int index);

BatchStats run_batch(std::shared_ptr<const PolicyTable> table, const BatchConfig& config);

// Human-readable summary with counts and percentages.
std::string format_stats(const BatchStats& stats, Player first_mover);

}  // namespace ttt
