#include "translucent/game.hpp"

#include <algorithm>
#include <set>

#include "translucent/json_io.hpp"

namespace translucent {

Game::Game(std::vector<std::vector<std::string>> strategies,
           std::vector<std::vector<Rational>> payoffs)
    : strategies_(std::move(strategies)), payoffs_(std::move(payoffs)) {
  if (strategies_.size() < 2) throw InputError("a game needs at least two players");
  std::size_t total = 1;
  for (std::size_t i = 0; i < strategies_.size(); ++i) {
    const auto& names = strategies_[i];
    if (names.empty()) {
      throw InputError("player " + std::to_string(i + 1) + " has no strategies");
    }
    std::set<std::string_view> seen;
    for (const auto& name : names) {
      if (name.empty()) throw InputError("empty strategy name for player " + std::to_string(i + 1));
      if (!seen.insert(name).second) {
        throw InputError("duplicate strategy name '" + name + "' for player " +
                         std::to_string(i + 1));
      }
    }
    total *= names.size();
  }
  if (payoffs_.size() != total) throw InputError("incomplete payoff table");
  for (const auto& entry : payoffs_) {
    if (entry.size() != strategies_.size()) {
      throw InputError("payoff vector length does not match player count");
    }
  }
}

Game Game::from_entries(std::vector<std::vector<std::string>> strategies,
                        const std::map<std::vector<std::string>, std::vector<Rational>>& entries) {
  // A placeholder table lets the constructor report name errors before table errors.
  std::size_t total = 1;
  for (const auto& s : strategies) total *= std::max<std::size_t>(s.size(), 1);
  const Game shape(strategies, std::vector<std::vector<Rational>>(
                                   total, std::vector<Rational>(strategies.size())));
  std::vector<std::vector<Rational>> table(shape.profile_count());
  for (const auto& [names, payoff] : entries) {
    if (names.size() != strategies.size()) {
      throw InputError("payoff profile has wrong number of strategies");
    }
    if (payoff.size() != strategies.size()) {
      throw InputError("payoff vector length does not match player count");
    }
    auto& slot = table[shape.flat_index(shape.profile_from_names(names))];
    slot = payoff;
  }
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    if (table[flat].empty()) {
      std::string missing;
      for (const auto& n : shape.profile_names(shape.profile_at(flat))) {
        missing += (missing.empty() ? "" : ",") + n;
      }
      throw InputError("incomplete payoff table: no entry for profile (" + missing + ")");
    }
  }
  return Game(std::move(strategies), std::move(table));
}

void Game::check_player(std::size_t player) const {
  if (player >= strategies_.size()) {
    throw InputError("player index " + std::to_string(player + 1) + " out of range");
  }
}

std::size_t Game::strategy_count(std::size_t player) const {
  check_player(player);
  return strategies_[player].size();
}

const std::vector<std::string>& Game::strategies(std::size_t player) const {
  check_player(player);
  return strategies_[player];
}

const std::string& Game::strategy_name(std::size_t player, std::size_t strategy) const {
  check_player(player);
  if (strategy >= strategies_[player].size()) throw InputError("strategy index out of range");
  return strategies_[player][strategy];
}

std::optional<std::size_t> Game::find_strategy(std::size_t player, std::string_view name) const {
  check_player(player);
  const auto& names = strategies_[player];
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

std::size_t Game::strategy_index(std::size_t player, std::string_view name) const {
  auto idx = find_strategy(player, name);
  if (!idx) {
    throw InputError("unknown strategy '" + std::string(name) + "' for player " +
                     std::to_string(player + 1));
  }
  return *idx;
}

std::size_t Game::flat_index(const Profile& profile) const {
  if (profile.size() != strategies_.size()) throw InputError("profile has wrong length");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] >= strategies_[i].size()) throw InputError("strategy index out of range");
    flat = flat * strategies_[i].size() + profile[i];
  }
  return flat;
}

Profile Game::profile_at(std::size_t flat) const {
  Profile profile(strategies_.size());
  for (std::size_t i = strategies_.size(); i-- > 0;) {
    profile[i] = flat % strategies_[i].size();
    flat /= strategies_[i].size();
  }
  return profile;
}

const Rational& Game::payoff(const Profile& profile, std::size_t player) const {
  check_player(player);
  return payoffs_[flat_index(profile)][player];
}

const std::vector<Rational>& Game::payoffs(const Profile& profile) const {
  return payoffs_[flat_index(profile)];
}

std::vector<std::vector<std::size_t>> Game::full_family() const {
  std::vector<std::vector<std::size_t>> family(strategies_.size());
  for (std::size_t i = 0; i < strategies_.size(); ++i) {
    family[i].resize(strategies_[i].size());
    for (std::size_t s = 0; s < strategies_[i].size(); ++s) family[i][s] = s;
  }
  return family;
}

Profile Game::profile_from_names(std::span<const std::string> names) const {
  if (names.size() != strategies_.size()) {
    throw InputError("profile has " + std::to_string(names.size()) + " strategies, game has " +
                     std::to_string(strategies_.size()) + " players");
  }
  Profile profile(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) profile[i] = strategy_index(i, names[i]);
  return profile;
}

std::vector<std::string> Game::profile_names(const Profile& profile) const {
  std::vector<std::string> names;
  names.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) names.push_back(strategy_name(i, profile[i]));
  return names;
}

Profile with_player(const OpponentProfile& others, std::size_t player, std::size_t strategy) {
  Profile profile;
  profile.reserve(others.size() + 1);
  profile.insert(profile.end(), others.begin(), others.begin() + static_cast<std::ptrdiff_t>(player));
  profile.push_back(strategy);
  profile.insert(profile.end(), others.begin() + static_cast<std::ptrdiff_t>(player), others.end());
  return profile;
}

OpponentProfile without_player(const Profile& profile, std::size_t player) {
  OpponentProfile others;
  others.reserve(profile.size() - 1);
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (j != player) others.push_back(profile[j]);
  }
  return others;
}

Rational utility(const Game& game, std::span<const std::string> profile, std::size_t player) {
  return game.payoff(game.profile_from_names(profile), player);
}

OpponentBelief OpponentBelief::point(OpponentProfile profile) {
  OpponentBelief belief;
  belief.masses_.emplace(std::move(profile), Rational(1));
  return belief;
}

void OpponentBelief::add(const OpponentProfile& profile, const Rational& mass) {
  auto [it, inserted] = masses_.try_emplace(profile, mass);
  if (!inserted) it->second += mass;
}

Rational OpponentBelief::total() const {
  Rational sum;
  for (const auto& [_, mass] : masses_) sum += mass;
  return sum;
}

Rational expected_utility(const Game& game, std::size_t player, std::size_t sigma,
                          const OpponentBelief& belief) {
  Rational total;
  Rational value;
  for (const auto& [others, mass] : belief.masses()) {
    if (mass.is_negative()) throw InputError("belief has negative mass");
    if (others.size() + 1 != game.player_count()) {
      throw InputError("belief profile has wrong length");
    }
    total += mass;
    value += mass * game.payoff(with_player(others, player, sigma), player);
  }
  if (total != Rational(1)) throw InputError("belief mass is " + total.str() + ", expected 1");
  return value;
}

Game translucent_pd(const Rational& reward, const Rational& penalty) {
  std::vector<std::vector<std::string>> strategies{{"C", "S"}, {"C", "S"}};
  // Flat order: (C,C) (C,S) (S,C) (S,S).
  std::vector<std::vector<Rational>> payoffs{
      {Rational(0), Rational(0)},
      {-penalty, reward},
      {reward, -penalty},
      {reward - penalty, reward - penalty},
  };
  return Game(std::move(strategies), std::move(payoffs));
}

Game ladder_game(std::int64_t k, const Rational& reward) {
  if (k < 1) throw InputError("ladder game needs k >= 1");
  if (reward <= Rational(0)) throw InputError("ladder game needs a positive reward");
  std::vector<std::string> values;
  for (std::int64_t v = 1; v <= k; ++v) values.push_back(std::to_string(v));
  std::vector<std::vector<Rational>> payoffs;
  for (std::int64_t x = 1; x <= k; ++x) {
    for (std::int64_t y = 1; y <= k; ++y) {
      if (x > y) {
        payoffs.push_back({Rational(y) + reward, Rational(y)});
      } else if (y > x) {
        payoffs.push_back({Rational(x), Rational(x) + reward});
      } else {
        payoffs.push_back({Rational(x), Rational(x)});
      }
    }
  }
  return Game({values, values}, std::move(payoffs));
}

namespace {

const Rational& require_param(const GameParams& params, const std::string& key,
                              std::string_view game) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw InputError("missing parameter '" + key + "' for " + std::string(game));
  }
  return it->second;
}

}  // namespace

Game builtin_game(std::string_view name, const GameParams& params) {
  if (name == "translucent_pd") {
    return translucent_pd(require_param(params, "r", name), require_param(params, "p", name));
  }
  if (name == "ladder") {
    const Rational& k = require_param(params, "k", name);
    if (k.den() != 1) throw InputError("ladder parameter k must be an integer");
    return ladder_game(k.num(), require_param(params, "p", name));
  }
  throw InputError("unknown built-in game '" + std::string(name) + "'");
}

Rational rational_from_json(const nlohmann::json& value, const char* context) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (!value.is_string()) {
    throw InputError(std::string(context) + ": expected a rational string");
  }
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(context) + ": " + e.what());
  }
}

Game game_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("game: expected an object");
  if (!doc.contains("players") || !doc["players"].is_array()) {
    throw InputError("game: missing 'players' array");
  }
  std::vector<std::vector<std::string>> strategies;
  for (const auto& player : doc["players"]) {
    if (!player.is_array()) throw InputError("game: each player must be a list of strategy names");
    auto& names = strategies.emplace_back();
    for (const auto& name : player) {
      if (!name.is_string()) throw InputError("game: strategy names must be strings");
      names.push_back(name.get<std::string>());
    }
  }
  if (!doc.contains("payoffs") || !doc["payoffs"].is_array()) {
    throw InputError("game: missing 'payoffs' array");
  }
  std::map<std::vector<std::string>, std::vector<Rational>> entries;
  for (const auto& entry : doc["payoffs"]) {
    if (!entry.is_object() || !entry.contains("profile") || !entry.contains("u") ||
        !entry["profile"].is_array() || !entry["u"].is_array()) {
      throw InputError("game: payoff entries need 'profile' and 'u' arrays");
    }
    std::vector<std::string> profile;
    for (const auto& name : entry["profile"]) {
      if (!name.is_string()) throw InputError("game: profile entries must be strings");
      profile.push_back(name.get<std::string>());
    }
    std::vector<Rational> u;
    for (const auto& v : entry["u"]) u.push_back(rational_from_json(v, "game payoff"));
    if (!entries.emplace(profile, std::move(u)).second) {
      throw InputError("game: duplicate payoff entry");
    }
  }
  return Game::from_entries(std::move(strategies), entries);
}

nlohmann::json game_to_json(const Game& game) {
  nlohmann::json players = nlohmann::json::array();
  for (std::size_t i = 0; i < game.player_count(); ++i) players.push_back(game.strategies(i));

  std::vector<std::pair<std::vector<std::string>, std::size_t>> order;
  for (std::size_t flat = 0; flat < game.profile_count(); ++flat) {
    order.emplace_back(game.profile_names(game.profile_at(flat)), flat);
  }
  std::sort(order.begin(), order.end());

  nlohmann::json payoffs = nlohmann::json::array();
  for (const auto& [names, flat] : order) {
    nlohmann::json u = nlohmann::json::array();
    for (const auto& v : game.payoffs(game.profile_at(flat))) u.push_back(v.str());
    payoffs.push_back({{"profile", names}, {"u", u}});
  }
  return {{"players", players}, {"payoffs", payoffs}};
}

Game parse_game(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("game: syntax error: ") + e.what(), e.byte);
  }
  return game_from_json(doc);
}

std::string serialize_game(const Game& game) { return game_to_json(game).dump(2) + "\n"; }

}  // namespace translucent
