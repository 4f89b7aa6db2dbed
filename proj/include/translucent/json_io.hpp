#pragma once

#include <json.hpp>

#include "translucent/game.hpp"

namespace translucent {

Game game_from_json(const nlohmann::json& doc);
nlohmann::json game_to_json(const Game& game);

/// Reads a rational from a JSON string ("n/d", "n") or integer.
Rational rational_from_json(const nlohmann::json& value, const char* context);

}  // namespace translucent
