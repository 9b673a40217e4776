#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "ttt/http_server.hpp"
#include "weak_table.hpp"

using namespace ttt;
using namespace ttt::service;

namespace {

std::shared_ptr<const PolicyTable> optimal_table() {
  static const auto t = std::make_shared<const PolicyTable>(build_table());
  return t;
}

ServiceConfig seeded() {
  ServiceConfig c;
  c.seed = 2024;
  return c;
}

int status_of(auto&& fn) {
  try {
    fn();
  } catch (const ServiceError& e) {
    return e.status();
  }
  return 0;
}

}  // namespace

TEST_CASE("spi-first game opens in the center") {
  GameService svc(optimal_table(), seeded());
  const Snapshot s = svc.create_game("spi");
  CHECK(s.game_id.size() == 16);
  CHECK(s.board == std::array<int, 9>{2, 2, 2, 2, 3, 2, 2, 2, 2});
  CHECK(s.status == "in_progress");
  CHECK(s.to_move == "human");
  CHECK(s.move_count == 1);
  CHECK(s.last_pattern_index == 5);
  REQUIRE(s.last_measurements);
  CHECK(svc.get_game(s.game_id) == s);
  CHECK(svc.get_trace(s.game_id).size() == 1);
}

TEST_CASE("human-first game waits for the human") {
  GameService svc(optimal_table(), seeded());
  const Snapshot s = svc.create_game("human");
  CHECK(s.board == std::array<int, 9>{2, 2, 2, 2, 2, 2, 2, 2, 2});
  CHECK(s.to_move == "human");
  CHECK(s.move_count == 0);
  CHECK_FALSE(s.last_pattern_index);
  CHECK_FALSE(s.last_measurements);

  const Snapshot after = svc.submit_move(s.game_id, 1);
  CHECK(after.move_count == 2);
  CHECK(after.board[0] == 1);
  CHECK(after.board[4] == 3);
  CHECK(after.last_pattern_index == 5);
  CHECK(after.to_move == "human");
}

TEST_CASE("service errors") {
  GameService svc(optimal_table(), seeded());
  CHECK(status_of([&] { svc.create_game("robot"); }) == 400);
  CHECK(status_of([&] { svc.get_game("0000000000000000"); }) == 404);
  CHECK(status_of([&] { svc.submit_move("nope", 1); }) == 404);
  CHECK(status_of([&] { svc.get_trace("nope"); }) == 404);

  const Snapshot s = svc.create_game("spi");
  CHECK(status_of([&] { svc.submit_move(s.game_id, 5); }) == 409);
  CHECK(status_of([&] { svc.submit_move(s.game_id, 0); }) == 400);
  CHECK(status_of([&] { svc.submit_move(s.game_id, 10); }) == 400);
  CHECK(svc.get_game(s.game_id) == s);
}

TEST_CASE("a human win is reported with pattern 10") {
  GameService svc(test_support::weak_table(), seeded());
  const std::string id = svc.create_game("human").game_id;
  svc.submit_move(id, 5);  // weak reply: 1
  svc.submit_move(id, 3);  // weak reply: 2
  const Snapshot s = svc.submit_move(id, 7);
  CHECK(s.status == "human_win");
  CHECK(s.to_move == "none");
  CHECK(s.last_pattern_index == 10);
  CHECK(s.move_count == 5);
  CHECK(status_of([&] { svc.submit_move(id, 9); }) == 409);
  const auto trace = svc.get_trace(id);
  REQUIRE(trace.size() == 6);
  CHECK_FALSE(trace.back().square);
}

TEST_CASE("a finished game reports its closing pattern") {
  GameService svc(optimal_table(), seeded());
  const std::string id = svc.create_game("spi").game_id;
  Snapshot s = svc.get_game(id);
  while (s.to_move == "human") {
    int square = 0;
    for (int i = 0; i < 9 && !square; ++i) {
      if (s.board[i] == 2) square = i + 1;
    }
    s = svc.submit_move(id, square);
  }
  CHECK(s.status != "human_win");
  CHECK(s.to_move == "none");
  if (s.status == "draw") CHECK_FALSE(s.last_pattern_index);
  if (s.status == "spi_win") CHECK(*s.last_pattern_index > 10);
}

TEST_CASE("idle games are evicted") {
  ServiceConfig config = seeded();
  config.idle_timeout = std::chrono::seconds(60);
  GameService svc(optimal_table(), config);
  const std::string a = svc.create_game("spi").game_id;
  svc.create_game("human");
  CHECK(svc.size() == 2);
  CHECK(svc.evict_idle(GameService::Clock::now()) == 0);
  CHECK(svc.evict_idle(GameService::Clock::now() + std::chrono::seconds(120)) == 2);
  CHECK(svc.size() == 0);
  CHECK(status_of([&] { svc.get_game(a); }) == 404);
}

TEST_CASE("concurrent submits to one game apply exactly one move") {
  GameService svc(optimal_table(), seeded());
  for (int round = 0; round < 20; ++round) {
    const std::string id = svc.create_game("spi").game_id;
    std::atomic<int> ok{0}, conflict{0};
    std::vector<std::jthread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&] {
        const int st = status_of([&] { svc.submit_move(id, 1); });
        (st == 0 ? ok : conflict)++;
      });
    }
    threads.clear();
    CHECK(ok == 1);
    CHECK(conflict == 7);
    const Snapshot s = svc.get_game(id);
    CHECK(s.move_count == 3);
    CHECK(s.board[0] == 1);
  }
}

TEST_CASE("independent games run in parallel") {
  GameService svc(optimal_table(), seeded());
  std::vector<std::string> ids;
  for (int i = 0; i < 8; ++i) ids.push_back(svc.create_game(i % 2 ? "human" : "spi").game_id);
  std::atomic<int> failures{0};
  {
    std::vector<std::jthread> threads;
    for (const auto& id : ids) {
      threads.emplace_back([&svc, &failures, id] {
        Snapshot s = svc.get_game(id);
        while (s.to_move == "human") {
          int square = 0;
          for (int i = 8; i >= 0 && !square; --i) {
            if (s.board[i] == 2) square = i + 1;
          }
          s = svc.submit_move(id, square);
        }
        if (s.status == "human_win" || s.status == "in_progress") ++failures;
      });
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("http api") {
  GameService svc(optimal_table(), seeded());
  const auto static_dir = std::filesystem::temp_directory_path() / "ttt_static_test";
  std::filesystem::create_directories(static_dir);
  std::ofstream(static_dir / "index.html") << "<html>board</html>";

  httplib::Server server;
  install_routes(server, svc, static_dir.string());
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::jthread runner([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/api/games", R"({"first_mover": "spi"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const auto game = nlohmann::json::parse(created->body);
  const std::string id = game["game_id"];
  CHECK(game["board"][4] == 3);
  CHECK(game["last_pattern_index"] == 5);
  CHECK(game["last_measurements"].size() == 9);
  CHECK(game["move_count"] == 1);
  CHECK(game["to_move"] == "human");

  auto fetched = client.Get("/api/games/" + id);
  REQUIRE(fetched);
  CHECK(fetched->status == 200);
  CHECK(nlohmann::json::parse(fetched->body) == game);

  auto moved = client.Post("/api/games/" + id + "/moves", R"({"square": 4})", "application/json");
  REQUIRE(moved);
  CHECK(moved->status == 200);
  const auto after = nlohmann::json::parse(moved->body);
  CHECK(after["board"][3] == 1);
  CHECK(after["board"][0] == 3);
  CHECK(after["last_pattern_index"] == 1);

  auto occupied = client.Post("/api/games/" + id + "/moves", R"({"square": 4})", "application/json");
  REQUIRE(occupied);
  CHECK(occupied->status == 409);
  CHECK(nlohmann::json::parse(occupied->body).contains("error"));

  for (const char* body : {R"({"square": 0})", R"({"square": "4"})", R"({})", "not json", R"({"square": 2.5})"}) {
    auto bad = client.Post("/api/games/" + id + "/moves", body, "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);
  }
  auto bad_first = client.Post("/api/games", R"({"first_mover": "nobody"})", "application/json");
  REQUIRE(bad_first);
  CHECK(bad_first->status == 400);

  auto missing = client.Get("/api/games/ffffffffffffffff");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto trace = client.Get("/api/games/" + id + "/trace");
  REQUIRE(trace);
  CHECK(trace->status == 200);
  const auto turns = nlohmann::json::parse(trace->body)["turns"];
  REQUIRE(turns.size() == 3);
  CHECK(turns[0]["actor"] == "spi");
  CHECK(turns[1]["actor"] == "human");
  CHECK(turns[1]["square"] == 4);
  CHECK(turns[2]["pattern_index"] == 1);

  auto page = client.Get("/index.html");
  REQUIRE(page);
  CHECK(page->status == 200);
  CHECK(page->body == "<html>board</html>");

  server.stop();
  runner.join();
  std::filesystem::remove_all(static_dir);
}
