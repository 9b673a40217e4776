#include "ttt/batch.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <thread>
#include <vector>

namespace ttt {

namespace {

std::uint64_t stream_seed(std::uint64_t seed, int index, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), stream};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

void tally(BatchStats& stats, const GameSession& game) {
  switch (game.status()) {
    case SessionStatus::SpiWin: ++stats.wins; break;
    case SessionStatus::Draw: ++stats.draws; break;
    case SessionStatus::HumanWin: ++stats.losses; break;
    case SessionStatus::Faulted: ++stats.faulted; break;
    case SessionStatus::InProgress: break;
  }
}

std::string percent(int part, int whole) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", whole > 0 ? 100.0 * part / whole : 0.0);
  return buf;
}

}  // namespace

GameSession simulate_game(std::shared_ptr<const PolicyTable> table, const BatchConfig& config, int index) {
  SessionConfig session = config.session;
  session.photometry.noise_sigma = config.noise_sigma;
  GameSession game("batch-" + std::to_string(index), config.first_mover, std::move(table), session,
                   stream_seed(config.seed, index, 0));
  optics::Rng opponent(stream_seed(config.seed, index, 1));

  while (auto next = game.to_move()) {
    try {
      if (*next == Player::Spi) {
        game.spi_turn();
      } else {
        game.human_turn(random_agent(game.board(), opponent));
      }
    } catch (const Error& e) {
      if (e.code() != Errc::DetectionMismatch) throw;
    }
  }
  return game;
}

BatchStats run_batch(std::shared_ptr<const PolicyTable> table, const BatchConfig& config) {
  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, std::max(1, config.games)));
  std::vector<BatchStats> partial(workers);
  auto work = [&](unsigned w) {
    for (int i = static_cast<int>(w); i < config.games; i += static_cast<int>(workers)) {
      tally(partial[w], simulate_game(table, config, i));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  BatchStats stats;
  stats.games = std::max(0, config.games);
  stats.seed = config.seed;
  for (const auto& p : partial) {
    stats.wins += p.wins;
    stats.draws += p.draws;
    stats.losses += p.losses;
    stats.faulted += p.faulted;
  }
  return stats;
}

std::string format_stats(const BatchStats& s, Player first_mover) {
  std::string out;
  out += "games: " + std::to_string(s.games) + " (SPI player moves " +
         (first_mover == Player::Spi ? "first" : "second") + ", seed " + std::to_string(s.seed) + ")\n";
  out += "win:   " + std::to_string(s.wins) + " (" + percent(s.wins, s.games) + ")\n";
  out += "draw:  " + std::to_string(s.draws) + " (" + percent(s.draws, s.games) + ")\n";
  out += "lose:  " + std::to_string(s.losses) + " (" + percent(s.losses, s.games) + ")\n";
  if (s.faulted > 0) out += "faulted: " + std::to_string(s.faulted) + "\n";
  return out;
}

}  // namespace ttt
