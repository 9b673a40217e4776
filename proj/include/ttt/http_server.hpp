#pragma once

#include <optional>
#include <string>

#include "ttt/service.hpp"

namespace httplib {
class Server;
}

namespace ttt::service {

// Registers the JSON API on `server`:
//
//   POST /api/games              {"first_mover": "spi"|"human"}  -> 201 Snapshot
//   GET  /api/games/{id}                                          -> 200 Snapshot
//   POST /api/games/{id}/moves   {"square": 1..9}                 -> 200 Snapshot
//   GET  /api/games/{id}/trace                                    -> 200 {"turns": [...]}
//
// Failures answer {"error": message} with 400, 404, 409 or 500. When
// `static_dir` is given its files are served from "/".
void install_routes(httplib::Server& server, GameService& service,
                    const std::optional<std::string>& static_dir = std::nullopt);

}  // namespace ttt::service
