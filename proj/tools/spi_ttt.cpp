// Command-line front end: table building and checking, batch simulation,
// terminal play and the HTTP service.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "ttt/batch.hpp"
#include "ttt/http_server.hpp"
#include "ttt/lookup_table.hpp"
#include "ttt/table_verify.hpp"
#include "ttt/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::shared_ptr<const ttt::PolicyTable> table_from(const std::string& path) {
  if (path.empty()) return std::make_shared<const ttt::PolicyTable>(ttt::build_table());
  return std::make_shared<const ttt::PolicyTable>(ttt::load_table(path));
}

int cmd_build(const std::string& out, const std::string& format) {
  const auto table = ttt::build_table();
  ttt::save_table(table, out, format == "json" ? ttt::TableFormat::Json : ttt::TableFormat::Binary);
  std::cout << "wrote " << table.entry_count() << " entries to " << out << " (" << format << ")\n";
  return kExitOk;
}

int cmd_verify(const std::string& path) {
  const auto table = ttt::load_table(path);
  const auto report = ttt::verify_table(table);
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  std::cout << (report.passed() ? "table OK\n" : "table FAILED verification\n");
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_simulate(const ttt::BatchConfig& config, const std::string& table_path, const std::string& trace_path) {
  auto table = table_from(table_path);
  const auto stats = ttt::run_batch(table, config);
  std::cout << ttt::format_stats(stats, config.first_mover);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + trace_path);
    for (int i = 0; i < config.games; ++i) out << ttt::to_ndjson(ttt::simulate_game(table, config, i).history());
  }
  return stats.losses == 0 && stats.faulted == 0 ? kExitOk : kExitFailure;
}

void print_turn(const ttt::TurnRecord& rec) {
  if (rec.measurements) {
    std::cout << "  scan:";
    for (double v : *rec.measurements) {
      char buf[16];
      std::snprintf(buf, sizeof buf, " %.3f", v);
      std::cout << buf;
    }
    std::cout << "\n";
  }
  if (rec.output_code) {
    const auto index = rec.output_code->pattern_index();
    std::cout << "  pattern: " << (index ? std::to_string(*index) : std::string("none")) << " ("
              << ttt::to_string(*rec.output_code) << ")\n";
  }
}

int cmd_play(ttt::Player first, double sigma, std::uint64_t seed, const std::string& table_path) {
  ttt::SessionConfig config;
  config.photometry.noise_sigma = sigma;
  ttt::GameSession game("terminal", first, table_from(table_path), config, seed);
  std::cout << "You are X (black cards); the SPI player is O (white cards). Squares:\n1 2 3\n4 5 6\n7 8 9\n\n";
  while (auto next = game.to_move()) {
    try {
      if (*next == ttt::Player::Spi) {
        const auto rec = game.spi_turn();
        std::cout << "SPI player";
        if (rec.square) std::cout << " plays " << *rec.square;
        std::cout << "\n";
        print_turn(rec);
      } else {
        std::cout << ttt::to_ascii(game.board()) << "your move (1-9): " << std::flush;
        int square = 0;
        if (!(std::cin >> square)) {
          std::cout << "\ninput closed\n";
          return kExitOk;
        }
        game.human_turn(square);
      }
    } catch (const ttt::Error& e) {
      if (e.code() == ttt::Errc::OccupiedSquare || e.code() == ttt::Errc::InvalidSquare) {
        std::cout << e.what() << "\n";
        continue;
      }
      if (e.code() != ttt::Errc::DetectionMismatch) throw;
      std::cout << e.what() << "\n";
    }
  }
  std::cout << ttt::to_ascii(game.board()) << "result: " << ttt::to_string(game.status()) << "\n";
  return kExitOk;
}

int cmd_serve(const std::string& host, int port, const std::string& table_path, const std::string& static_dir,
              double sigma, long idle_seconds) {
  ttt::service::ServiceConfig config;
  config.session.photometry.noise_sigma = sigma;
  config.idle_timeout = std::chrono::seconds(idle_seconds);
  ttt::service::GameService service(table_from(table_path), config);
  httplib::Server server;
  ttt::service::install_routes(server, service,
                               static_dir.empty() ? std::nullopt : std::optional<std::string>(static_dir));
  std::cout << "listening on " << host << ":" << port << std::endl;
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-pixel imaging tic-tac-toe player"};
  app.require_subcommand(1);

  std::string out;
  std::string format = "bin";
  auto* build = app.add_subcommand("build-table", "Solve the game and write the lookup table");
  build->add_option("--out", out, "Output path")->required();
  build->add_option("--format", format, "bin or json")->check(CLI::IsMember({"bin", "json"}));

  std::string table_path;
  auto* verify = app.add_subcommand("verify-table", "Check a table for totality and optimality");
  verify->add_option("--table", table_path, "Table file")->required();

  ttt::BatchConfig batch;
  std::string first = "spi";
  std::string trace_path;
  auto* simulate = app.add_subcommand("simulate", "Play a batch against a random opponent");
  simulate->add_option("--games", batch.games, "Number of games")->check(CLI::PositiveNumber);
  simulate->add_option("--first", first, "spi or random")->check(CLI::IsMember({"spi", "random"}));
  simulate->add_option("--seed", batch.seed, "RNG seed");
  simulate->add_option("--sigma", batch.noise_sigma, "Detector noise sigma")->check(CLI::NonNegativeNumber);
  simulate->add_option("--workers", batch.workers, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--table", table_path, "Table file (built in memory if omitted)");
  simulate->add_option("--trace", trace_path, "Write every game's turns as JSON lines");

  double sigma = 0.02;
  std::uint64_t seed = std::random_device{}();
  auto* play = app.add_subcommand("play", "Play in the terminal");
  play->add_option("--first", first, "spi or human")->check(CLI::IsMember({"spi", "human"}));
  play->add_option("--sigma", sigma, "Detector noise sigma")->check(CLI::NonNegativeNumber);
  play->add_option("--seed", seed, "Noise seed");
  play->add_option("--table", table_path, "Table file (built in memory if omitted)");

  int port = 8080;
  std::string host = "0.0.0.0";
  std::string static_dir;
  long idle_seconds = 3600;
  auto* serve = app.add_subcommand("serve", "Run the HTTP game service");
  serve->add_option("--port", port, "Port")->required()->check(CLI::Range(1, 65535));
  serve->add_option("--table", table_path, "Table file")->required();
  serve->add_option("--static", static_dir, "Directory with the browser UI");
  serve->add_option("--sigma", sigma, "Detector noise sigma")->check(CLI::NonNegativeNumber);
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--idle-timeout", idle_seconds, "Seconds before an idle game is dropped")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*build) return cmd_build(out, format);
    if (*verify) return cmd_verify(table_path);
    if (*simulate) {
      batch.first_mover = first == "spi" ? ttt::Player::Spi : ttt::Player::Human;
      return cmd_simulate(batch, table_path, trace_path);
    }
    if (*play) return cmd_play(first == "human" ? ttt::Player::Human : ttt::Player::Spi, sigma, seed, table_path);
    if (*serve) return cmd_serve(host, port, table_path, static_dir, sigma, idle_seconds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
