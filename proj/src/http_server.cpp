#include "ttt/http_server.hpp"

#include <httplib.h>

#include "ttt/trace.hpp"

namespace ttt::service {

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", message}}.dump(), kJson);
}

nlohmann::json parse_body(const httplib::Request& req) {
  auto body = nlohmann::json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) throw ServiceError(400, "request body must be a JSON object");
  return body;
}

// Runs `handler`, translating failures into JSON error responses.
template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e.status(), e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  };
}

}  // namespace

void install_routes(httplib::Server& server, GameService& service, const std::optional<std::string>& static_dir) {
  server.Post("/api/games", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                const auto body = parse_body(req);
                if (!body.contains("first_mover") || !body["first_mover"].is_string()) {
                  throw ServiceError(400, "first_mover must be \"human\" or \"spi\"");
                }
                const Snapshot snap = service.create_game(body["first_mover"].get<std::string>());
                res.status = 201;
                res.set_content(to_json(snap).dump(), kJson);
              }));

  server.Get(R"(/api/games/([^/]+))", guarded([&service](const httplib::Request& req, httplib::Response& res) {
               res.set_content(to_json(service.get_game(req.matches[1])).dump(), kJson);
             }));

  server.Post(R"(/api/games/([^/]+)/moves)",
              guarded([&service](const httplib::Request& req, httplib::Response& res) {
                const auto body = parse_body(req);
                if (!body.contains("square") || !body["square"].is_number_integer()) {
                  throw ServiceError(400, "square must be an integer 1..9");
                }
                const auto square = body["square"].get<long long>();
                if (square < 1 || square > kSquares) throw ServiceError(400, "square must be an integer 1..9");
                const Snapshot snap = service.submit_move(req.matches[1], static_cast<int>(square));
                res.set_content(to_json(snap).dump(), kJson);
              }));

  server.Get(R"(/api/games/([^/]+)/trace)", guarded([&service](const httplib::Request& req, httplib::Response& res) {
               nlohmann::json turns = nlohmann::json::array();
               for (const auto& rec : service.get_trace(req.matches[1])) turns.push_back(to_json(rec));
               res.set_content(nlohmann::json{{"turns", turns}}.dump(), kJson);
             }));

  if (static_dir && !server.set_mount_point("/", *static_dir)) {
    throw std::runtime_error("static directory " + *static_dir + " does not exist");
  }
}

}  // namespace ttt::service
