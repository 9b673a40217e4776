#include "ttt/service.hpp"

#include <cstdio>

namespace ttt::service {

namespace {

int status_for(Errc code) {
  switch (code) {
    case Errc::OccupiedSquare:
    case Errc::NotHumansTurn:
    case Errc::NotSpisTurn:
    case Errc::TerminalState: return 409;
    case Errc::InvalidSquare: return 400;
    default: return 500;
  }
}

}  // namespace

Snapshot make_snapshot(const GameSession& session) {
  Snapshot s;
  s.game_id = session.id();
  s.board = session.board().codes();
  s.status = std::string(to_string(session.status()));
  const auto next = session.to_move();
  s.to_move = next ? std::string(to_string(*next)) : "none";
  s.move_count = session.move_count();
  const auto& history = session.history();
  if (!history.empty() && history.back().actor == Player::Spi) {
    s.last_measurements = history.back().measurements;
    if (history.back().output_code) s.last_pattern_index = history.back().output_code->pattern_index();
  }
  return s;
}

nlohmann::json to_json(const Snapshot& s) {
  nlohmann::json j;
  j["game_id"] = s.game_id;
  j["board"] = s.board;
  j["status"] = s.status;
  j["to_move"] = s.to_move;
  j["last_measurements"] = s.last_measurements ? nlohmann::json(*s.last_measurements) : nlohmann::json(nullptr);
  j["last_pattern_index"] = s.last_pattern_index ? nlohmann::json(*s.last_pattern_index) : nlohmann::json(nullptr);
  j["move_count"] = s.move_count;
  return j;
}

GameService::GameService(std::shared_ptr<const PolicyTable> table, ServiceConfig config)
    : table_(std::move(table)),
      config_(std::move(config)),
      rng_(config_.seed ? *config_.seed : std::random_device{}()) {}

std::string GameService::next_id() {
  std::lock_guard lock(rng_mutex_);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
  return buf;
}

Snapshot GameService::create_game(const std::string& first_mover) {
  Player first;
  if (first_mover == "human") first = Player::Human;
  else if (first_mover == "spi") first = Player::Spi;
  else throw ServiceError(400, "first_mover must be \"human\" or \"spi\"");

  evict_idle();
  std::string id;
  std::uint64_t noise_seed;
  {
    std::lock_guard lock(rng_mutex_);
    noise_seed = rng_();
  }
  {
    std::shared_lock lock(map_mutex_);
    do id = next_id();
    while (games_.count(id) != 0);
  }

  auto entry = std::make_shared<Entry>(GameSession(id, first, table_, config_.session, noise_seed));
  if (first == Player::Spi) {
    try {
      entry->session.spi_turn();
    } catch (const Error& e) {
      if (e.code() != Errc::DetectionMismatch) throw ServiceError(500, e.what());
    }
  }
  {
    std::unique_lock lock(map_mutex_);
    games_.emplace(id, entry);
  }
  return make_snapshot(entry->session);
}

std::shared_ptr<GameService::Entry> GameService::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = games_.find(id);
  if (it == games_.end()) throw ServiceError(404, "unknown game " + id);
  return it->second;
}

Snapshot GameService::get_game(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  entry->last_access = Clock::now();
  return make_snapshot(entry->session);
}

std::vector<TurnRecord> GameService::get_trace(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  entry->last_access = Clock::now();
  return entry->session.history();
}

Snapshot GameService::submit_move(const std::string& id, int square) {
  auto entry = find(id);
  std::unique_lock lock(entry->mutex, std::try_to_lock);
  if (!lock.owns_lock()) throw ServiceError(409, "game " + id + " is processing another move");
  entry->last_access = Clock::now();

  GameSession& session = entry->session;
  try {
    session.human_turn(square);
  } catch (const Error& e) {
    throw ServiceError(status_for(e.code()), e.what());
  }
  if (session.to_move() == Player::Spi) {
    try {
      session.spi_turn();
    } catch (const Error& e) {
      // A faulted session is reported through its status.
      if (e.code() != Errc::DetectionMismatch) throw ServiceError(500, e.what());
    }
  }
  return make_snapshot(session);
}

std::size_t GameService::evict_idle(Clock::time_point now) {
  std::unique_lock lock(map_mutex_);
  std::size_t removed = 0;
  for (auto it = games_.begin(); it != games_.end();) {
    std::unique_lock entry_lock(it->second->mutex, std::try_to_lock);
    if (entry_lock.owns_lock() && now - it->second->last_access > config_.idle_timeout) {
      entry_lock.unlock();
      it = games_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t GameService::size() const {
  std::shared_lock lock(map_mutex_);
  return games_.size();
}

}  // namespace ttt::service
