#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ttt/session.hpp"

namespace ttt::service {

// Carries the HTTP status the failure maps to.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

struct Snapshot {
  std::string game_id;
  std::array<int, kSquares> board{};
  std::string status;   // in_progress | human_win | spi_win | draw | faulted
  std::string to_move;  // human | spi | none
  std::optional<optics::MeasurementVector> last_measurements;
  std::optional<int> last_pattern_index;
  int move_count = 0;

  bool operator==(const Snapshot&) const = default;
};

Snapshot make_snapshot(const GameSession& session);
nlohmann::json to_json(const Snapshot& snapshot);

struct ServiceConfig {
  SessionConfig session;
  std::chrono::seconds idle_timeout{3600};
  // Seeds id and noise generation; nondeterministic when unset.
  std::optional<std::uint64_t> seed;
};

// In-memory game registry. Sessions are independent; each has its own lock and
// a submit that finds the game busy is rejected with 409 rather than queued.
class GameService {
 public:
  using Clock = std::chrono::steady_clock;

  GameService(std::shared_ptr<const PolicyTable> table, ServiceConfig config = {});

  // first_mover is "human" or "spi"; anything else is a 400.
  Snapshot create_game(const std::string& first_mover);
  Snapshot get_game(const std::string& id);
  Snapshot submit_move(const std::string& id, int square);
  std::vector<TurnRecord> get_trace(const std::string& id);

  // Drops sessions idle longer than the configured timeout; returns how many.
  std::size_t evict_idle(Clock::time_point now = Clock::now());
  std::size_t size() const;

 private:
  struct Entry {
    explicit Entry(GameSession s) : session(std::move(s)) {}
    std::mutex mutex;
    GameSession session;
    Clock::time_point last_access = Clock::now();
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  std::string next_id();

  std::shared_ptr<const PolicyTable> table_;
  ServiceConfig config_;
  mutable std::shared_mutex map_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> games_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

}  // namespace ttt::service
