#include "translucent/structure.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "translucent/json_io.hpp"

namespace translucent {

StateSet StateSet::of(std::size_t universe, const std::vector<StateIndex>& members) {
  StateSet set(universe);
  for (auto s : members) set.insert(s);
  return set;
}

std::size_t StateSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<StateIndex> StateSet::members() const {
  std::vector<StateIndex> out;
  for (std::size_t s = 0; s < bits_.size(); ++s) {
    if (bits_[s]) out.push_back(s);
  }
  return out;
}

StateSet& StateSet::operator&=(const StateSet& rhs) {
  for (std::size_t s = 0; s < bits_.size(); ++s) bits_[s] = bits_[s] && rhs.bits_[s];
  return *this;
}

StateSet& StateSet::operator|=(const StateSet& rhs) {
  for (std::size_t s = 0; s < bits_.size(); ++s) bits_[s] = bits_[s] || rhs.bits_[s];
  return *this;
}

StateSet StateSet::complement() const {
  StateSet out = *this;
  out.bits_.flip();
  return out;
}

bool StateSet::subset_of(const StateSet& rhs) const {
  for (std::size_t s = 0; s < bits_.size(); ++s) {
    if (bits_[s] && !rhs.bits_[s]) return false;
  }
  return true;
}

Distribution::Distribution(const std::map<StateIndex, Rational>& masses) {
  for (const auto& [state, mass] : masses) {
    if (mass.is_negative()) throw InputError("negative probability " + mass.str());
    if (!mass.is_zero()) entries_.emplace_back(state, mass);
  }
}

Distribution Distribution::point(StateIndex state) {
  Distribution d;
  d.entries_.emplace_back(state, Rational(1));
  return d;
}

std::vector<StateIndex> Distribution::support() const {
  std::vector<StateIndex> out;
  for (const auto& [state, _] : entries_) out.push_back(state);
  return out;
}

Rational Distribution::mass_of(StateIndex state) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), state,
                             [](const auto& entry, StateIndex s) { return entry.first < s; });
  if (it == entries_.end() || it->first != state) return Rational(0);
  return it->second;
}

Rational Distribution::mass(const StateSet& event) const {
  Rational sum;
  for (const auto& [state, m] : entries_) {
    if (event.contains(state)) sum += m;
  }
  return sum;
}

Rational Distribution::total() const {
  Rational sum;
  for (const auto& [_, m] : entries_) sum += m;
  return sum;
}

CounterfactualStructure::CounterfactualStructure(
    std::shared_ptr<const Game> game, std::vector<StateInfo> states,
    std::vector<std::vector<Distribution>> beliefs,
    std::vector<std::vector<std::vector<StateIndex>>> closest)
    : game_(std::move(game)),
      states_(std::move(states)),
      beliefs_(std::move(beliefs)),
      closest_(std::move(closest)) {
  if (!game_) throw InputError("structure without a game");
  if (states_.empty()) throw InputError("structure has no states");
  const std::size_t n = game_->player_count();
  for (StateIndex s = 0; s < states_.size(); ++s) {
    if (!index_.emplace(states_[s].id, s).second) {
      throw InputError("duplicate state id '" + states_[s].id + "'");
    }
    game_->flat_index(states_[s].profile);
  }
  if (beliefs_.size() != n) throw InputError("beliefs missing for some player");
  for (std::size_t i = 0; i < n; ++i) {
    if (beliefs_[i].size() != states_.size()) throw InputError("beliefs missing for some state");
    for (StateIndex s = 0; s < states_.size(); ++s) {
      const auto& d = beliefs_[i][s];
      if (!d.entries().empty() && d.entries().back().first >= states_.size()) {
        throw InputError("belief refers to an unknown state");
      }
      if (d.total() != Rational(1)) {
        throw InputError("belief of player " + std::to_string(i + 1) + " at '" + states_[s].id +
                         "' has mass " + d.total().str() + ", expected 1");
      }
    }
  }
  if (closest_.size() != states_.size()) throw InputError("closest-state map is not total");
  for (const auto& per_state : closest_) {
    if (per_state.size() != n) throw InputError("closest-state map is not total");
    for (std::size_t i = 0; i < n; ++i) {
      if (per_state[i].size() != game_->strategy_count(i)) {
        throw InputError("closest-state map is not total");
      }
      for (auto target : per_state[i]) {
        if (target >= states_.size()) throw InputError("closest-state map refers to an unknown state");
      }
    }
  }
}

std::optional<StateIndex> CounterfactualStructure::find_state(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateIndex CounterfactualStructure::state_index(std::string_view id) const {
  auto s = find_state(id);
  if (!s) throw InputError("unknown state '" + std::string(id) + "'");
  return *s;
}

CounterfactualStructure CounterfactualStructure::with_belief(std::size_t player, StateIndex state,
                                                             Distribution belief) const {
  auto beliefs = beliefs_;
  beliefs.at(player).at(state) = std::move(belief);
  return CounterfactualStructure(game_, states_, std::move(beliefs), closest_);
}

CounterfactualStructure CounterfactualStructure::with_closest(StateIndex state, std::size_t player,
                                                              std::size_t strategy,
                                                              StateIndex target) const {
  auto closest = closest_;
  closest.at(state).at(player).at(strategy) = target;
  return CounterfactualStructure(game_, states_, beliefs_, std::move(closest));
}

StateSet CounterfactualStructure::playing(std::size_t player, std::size_t strategy) const {
  StateSet set(states_.size());
  for (StateIndex s = 0; s < states_.size(); ++s) {
    if (states_[s].profile[player] == strategy) set.insert(s);
  }
  return set;
}

Distribution counterfactual_belief(const CounterfactualStructure& m, StateIndex state,
                                   std::size_t player, std::size_t strategy) {
  std::map<StateIndex, Rational> pushed;
  for (const auto& [source, mass] : m.belief(player, state).entries()) {
    pushed[m.closest(source, player, strategy)] += mass;
  }
  return Distribution(pushed);
}

namespace {

StateSet same_belief(const CounterfactualStructure& m, std::size_t player, const Distribution& d) {
  StateSet set(m.state_count());
  for (StateIndex s = 0; s < m.state_count(); ++s) {
    if (m.belief(player, s) == d) set.insert(s);
  }
  return set;
}

}  // namespace

ValidationReport validate_appropriate(const CounterfactualStructure& m) {
  ValidationReport report;
  const Game& g = m.game();
  for (StateIndex w = 0; w < m.state_count(); ++w) {
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      const auto& belief = m.belief(i, w);
      if (belief.mass(m.playing(i, m.strategy(w, i))) != Rational(1)) {
        report.violations.push_back({"belief-own-strategy", w, i, std::nullopt,
                                     "player " + std::to_string(i + 1) + " at '" + m.id(w) +
                                         "' does not assign probability 1 to its own strategy"});
      }
      if (belief.mass(same_belief(m, i, belief)) != Rational(1)) {
        report.violations.push_back({"belief-own-beliefs", w, i, std::nullopt,
                                     "player " + std::to_string(i + 1) + " at '" + m.id(w) +
                                         "' does not assign probability 1 to its own beliefs"});
      }
      for (std::size_t s = 0; s < g.strategy_count(i); ++s) {
        StateIndex target = m.closest(w, i, s);
        if (m.strategy(target, i) != s) {
          report.violations.push_back({"closest-plays-strategy", w, i, s,
                                       "f('" + m.id(w) + "', " + std::to_string(i + 1) + ", " +
                                           g.strategy_name(i, s) + ") = '" + m.id(target) +
                                           "' where that strategy is not played"});
        }
        if (s == m.strategy(w, i) && target != w) {
          report.violations.push_back({"closest-identity", w, i, s,
                                       "f('" + m.id(w) + "', " + std::to_string(i + 1) + ", " +
                                           g.strategy_name(i, s) + ") must be the state itself"});
        }
      }
    }
  }
  return report;
}

ValidationReport validate_strongly_appropriate(const CounterfactualStructure& m) {
  ValidationReport report;
  for (StateIndex w = 0; w < m.state_count(); ++w) {
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      for (std::size_t s = 0; s < m.game().strategy_count(i); ++s) {
        Distribution cf = counterfactual_belief(m, w, i, s);
        if (cf.mass(same_belief(m, i, cf)) != Rational(1)) {
          report.violations.push_back(
              {"knows-counterfactual-beliefs", w, i, s,
               "player " + std::to_string(i + 1) + " at '" + m.id(w) + "' switching to " +
                   m.game().strategy_name(i, s) + " does not know its counterfactual beliefs"});
        }
      }
    }
  }
  return report;
}

bool respects_unilateral_deviations(const CounterfactualStructure& m) {
  for (StateIndex w = 0; w < m.state_count(); ++w) {
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      for (std::size_t s = 0; s < m.game().strategy_count(i); ++s) {
        StateIndex target = m.closest(w, i, s);
        for (std::size_t j = 0; j < m.player_count(); ++j) {
          if (j == i) continue;
          if (m.strategy(target, j) != m.strategy(w, j) || !(m.belief(j, target) == m.belief(j, w))) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

Rational translucency_epsilon(const CounterfactualStructure& m) {
  // Intern each player's beliefs so a state's projection is a small key.
  std::vector<std::vector<std::size_t>> belief_class(m.player_count(),
                                                     std::vector<std::size_t>(m.state_count()));
  for (std::size_t j = 0; j < m.player_count(); ++j) {
    std::map<Distribution, std::size_t> ids;
    for (StateIndex s = 0; s < m.state_count(); ++s) {
      belief_class[j][s] = ids.try_emplace(m.belief(j, s), ids.size()).first->second;
    }
  }
  auto project = [&](const Distribution& d, std::size_t player) {
    std::map<std::vector<std::size_t>, Rational> out;
    for (const auto& [state, mass] : d.entries()) {
      std::vector<std::size_t> key;
      for (std::size_t j = 0; j < m.player_count(); ++j) {
        if (j == player) continue;
        key.push_back(m.strategy(state, j));
        key.push_back(belief_class[j][state]);
      }
      out[key] += mass;
    }
    return out;
  };

  Rational worst;
  for (StateIndex w = 0; w < m.state_count(); ++w) {
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      const auto actual = project(m.belief(i, w), i);
      for (std::size_t s = 0; s < m.game().strategy_count(i); ++s) {
        auto diff = project(counterfactual_belief(m, w, i, s), i);
        for (const auto& [key, mass] : actual) diff[key] -= mass;
        Rational l1;
        for (const auto& [_, delta] : diff) l1 += delta.is_negative() ? -delta : delta;
        worst = std::max(worst, l1 / Rational(2));
      }
    }
  }
  return worst;
}

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[below(rng, k)]);
}

}  // namespace

CounterfactualStructure random_appropriate_structure(std::shared_ptr<const Game> game,
                                                     std::uint64_t seed, std::size_t state_count) {
  if (!game) throw InputError("random structure needs a game");
  const std::size_t n = game->player_count();
  std::size_t needed = 1;
  for (std::size_t i = 0; i < n; ++i) needed = std::max(needed, game->strategy_count(i));
  if (state_count < needed) {
    throw InputError("infeasible structure: " + std::to_string(state_count) +
                     " states cannot cover " + std::to_string(needed) + " strategies");
  }
  std::mt19937_64 rng(seed);

  // Every strategy of every player is played somewhere, so f can be total.
  std::vector<StateInfo> states(state_count);
  for (StateIndex s = 0; s < state_count; ++s) {
    states[s].id = "s" + std::to_string(s);
    states[s].profile.resize(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = game->strategy_count(i);
    std::vector<std::size_t> column(state_count);
    for (StateIndex s = 0; s < state_count; ++s) column[s] = s < m ? s : below(rng, m);
    shuffle(column, rng);
    for (StateIndex s = 0; s < state_count; ++s) states[s].profile[i] = column[s];
  }

  // Per player: split each own-strategy class into belief cells; every cell
  // shares one distribution supported inside the cell.
  std::vector<std::vector<Distribution>> beliefs(n, std::vector<Distribution>(state_count));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t strat = 0; strat < game->strategy_count(i); ++strat) {
      std::vector<StateIndex> group;
      for (StateIndex s = 0; s < state_count; ++s) {
        if (states[s].profile[i] == strat) group.push_back(s);
      }
      shuffle(group, rng);
      std::vector<std::vector<StateIndex>> cells;
      for (StateIndex s : group) {
        if (cells.empty() || below(rng, 2) == 0) {
          cells.push_back({s});
        } else {
          cells[below(rng, cells.size())].push_back(s);
        }
      }
      for (auto& cell : cells) {
        std::sort(cell.begin(), cell.end());
        std::vector<StateIndex> support;
        for (StateIndex s : cell) {
          if (below(rng, 2) == 0) support.push_back(s);
        }
        if (support.empty()) support.push_back(cell[below(rng, cell.size())]);
        std::vector<std::int64_t> weights;
        std::int64_t total = 0;
        for (std::size_t k = 0; k < support.size(); ++k) {
          weights.push_back(1 + static_cast<std::int64_t>(below(rng, 3)));
          total += weights.back();
        }
        std::map<StateIndex, Rational> masses;
        for (std::size_t k = 0; k < support.size(); ++k) masses[support[k]] = Rational(weights[k], total);
        Distribution d(masses);
        for (StateIndex s : cell) beliefs[i][s] = d;
      }
    }
  }

  std::vector<std::vector<std::vector<StateIndex>>> closest(state_count);
  for (StateIndex w = 0; w < state_count; ++w) {
    closest[w].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t strat = 0; strat < game->strategy_count(i); ++strat) {
        if (strat == states[w].profile[i]) {
          closest[w][i].push_back(w);
          continue;
        }
        std::vector<StateIndex> candidates;
        for (StateIndex s = 0; s < state_count; ++s) {
          if (states[s].profile[i] == strat) candidates.push_back(s);
        }
        closest[w][i].push_back(candidates[below(rng, candidates.size())]);
      }
    }
  }
  return CounterfactualStructure(std::move(game), std::move(states), std::move(beliefs),
                                 std::move(closest));
}

namespace {

// Builds a structure over a two-strategy game from readable tables keyed by
// state id. Closest entries that are not listed default to the identity.
struct StructureSpec {
  std::vector<std::pair<std::string, std::vector<std::string>>> states;
  std::vector<std::map<std::string, std::map<std::string, Rational>>> beliefs;
  std::map<std::tuple<std::string, std::size_t, std::string>, std::string> closest;
};

CounterfactualStructure assemble(std::shared_ptr<const Game> game, const StructureSpec& spec) {
  std::vector<StateInfo> states;
  std::map<std::string, StateIndex> index;
  for (const auto& [id, names] : spec.states) {
    index[id] = states.size();
    states.push_back({id, game->profile_from_names(names)});
  }
  const std::size_t n = game->player_count();
  std::vector<std::vector<Distribution>> beliefs(n, std::vector<Distribution>(states.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [id, dist] : spec.beliefs[i]) {
      std::map<StateIndex, Rational> masses;
      for (const auto& [to, mass] : dist) masses[index.at(to)] = mass;
      beliefs[i][index.at(id)] = Distribution(masses);
    }
  }
  std::vector<std::vector<std::vector<StateIndex>>> closest(states.size());
  for (StateIndex w = 0; w < states.size(); ++w) {
    closest[w].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < game->strategy_count(i); ++s) {
        auto it = spec.closest.find({states[w].id, i, game->strategy_name(i, s)});
        closest[w][i].push_back(it == spec.closest.end() ? w : index.at(it->second));
      }
    }
  }
  return CounterfactualStructure(std::move(game), std::move(states), std::move(beliefs),
                                 std::move(closest));
}

}  // namespace

DesignatedStructure translucent_pd_structure(const Rational& reward, const Rational& penalty,
                                             const Rational& eps) {
  if (eps <= Rational(0) || eps >= Rational(1)) {
    throw InputError("translucent_pd needs 0 < eps < 1, got " + eps.str());
  }
  auto game = std::make_shared<const Game>(translucent_pd(reward, penalty));
  // coop/leak: both cooperate; in "leak" either player's switch is noticed.
  // dev1/dev2: unnoticed switch by player 1/2; punish: mutual suing.
  // undo1/undo2: player 1/2 returns to C while the other keeps suing.
  const std::map<std::string, Rational> shared{{"leak", eps}, {"coop", Rational(1) - eps}};
  auto self = [](const char* id) { return std::map<std::string, Rational>{{id, Rational(1)}}; };
  StructureSpec spec;
  spec.states = {{"coop", {"C", "C"}}, {"leak", {"C", "C"}},  {"dev1", {"S", "C"}},
                 {"dev2", {"C", "S"}}, {"punish", {"S", "S"}}, {"undo1", {"C", "S"}},
                 {"undo2", {"S", "C"}}};
  spec.beliefs = {
      {{"coop", shared}, {"leak", shared}, {"dev1", self("dev1")}, {"dev2", shared},
       {"punish", self("punish")}, {"undo1", self("undo1")}, {"undo2", self("punish")}},
      {{"coop", shared}, {"leak", shared}, {"dev1", shared}, {"dev2", self("dev2")},
       {"punish", self("punish")}, {"undo1", self("punish")}, {"undo2", self("undo2")}},
  };
  spec.closest = {
      {{"coop", 0, "S"}, "dev1"},   {{"coop", 1, "S"}, "dev2"},   {{"leak", 0, "S"}, "punish"},
      {{"leak", 1, "S"}, "punish"}, {{"dev1", 0, "C"}, "coop"},   {{"dev1", 1, "S"}, "punish"},
      {{"dev2", 1, "C"}, "coop"},   {{"dev2", 0, "S"}, "punish"}, {{"punish", 0, "C"}, "undo1"},
      {{"punish", 1, "C"}, "undo2"}, {{"undo1", 0, "S"}, "punish"}, {{"undo1", 1, "C"}, "coop"},
      {{"undo2", 1, "S"}, "punish"}, {{"undo2", 0, "C"}, "coop"},
  };
  auto m = assemble(std::move(game), spec);
  StateIndex coop = m.state_index("coop");
  return {std::move(m), coop};
}

DesignatedStructure pd_naive_structure(const Rational& reward, const Rational& penalty) {
  auto game = std::make_shared<const Game>(translucent_pd(reward, penalty));
  StructureSpec spec;
  spec.states = {{"w0", {"C", "C"}}, {"w1", {"S", "S"}}};
  const std::map<std::string, std::map<std::string, Rational>> self{
      {"w0", {{"w0", Rational(1)}}}, {"w1", {{"w1", Rational(1)}}}};
  spec.beliefs = {self, self};
  spec.closest = {{{"w0", 0, "S"}, "w1"}, {{"w0", 1, "S"}, "w1"},
                  {{"w1", 0, "C"}, "w0"}, {{"w1", 1, "C"}, "w0"}};
  auto m = assemble(std::move(game), spec);
  return {std::move(m), 0};
}

namespace {

const Rational& param(const GameParams& params, const std::string& key, std::string_view name) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw InputError("missing parameter '" + key + "' for " + std::string(name));
  }
  return it->second;
}

}  // namespace

DesignatedStructure builtin_structure(std::string_view name, const GameParams& params) {
  if (name == "translucent_pd") {
    return translucent_pd_structure(param(params, "r", name), param(params, "p", name),
                                    param(params, "eps", name));
  }
  if (name == "pd_naive") return pd_naive_structure(param(params, "r", name), param(params, "p", name));
  throw InputError("unknown built-in structure '" + std::string(name) + "'");
}

namespace {

std::size_t player_from_key(const std::string& key, std::size_t n) {
  std::size_t player = 0;
  try {
    std::size_t used = 0;
    player = std::stoul(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
  } catch (const std::exception&) {
    throw InputError("structure: bad player key '" + key + "'");
  }
  if (player < 1 || player > n) throw InputError("structure: player " + key + " out of range");
  return player - 1;
}

std::shared_ptr<const Game> resolve_game(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.contains("game")) throw InputError("structure: missing 'game'");
  const auto& field = doc["game"];
  if (field.is_object()) return std::make_shared<const Game>(game_from_json(field));
  if (field.is_string()) {
    std::filesystem::path path = field.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw InputError("structure: cannot read game file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return std::make_shared<const Game>(parse_game(buffer.str()));
  }
  throw InputError("structure: 'game' must be an object or a path");
}

}  // namespace

CounterfactualStructure parse_structure(std::string_view text, std::shared_ptr<const Game> game,
                                        const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("structure: syntax error: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw InputError("structure: expected an object");
  if (!game) game = resolve_game(doc, base_dir);
  const std::size_t n = game->player_count();

  if (!doc.contains("states") || !doc["states"].is_array()) {
    throw InputError("structure: missing 'states' array");
  }
  std::vector<StateInfo> states;
  std::map<std::string, StateIndex> index;
  for (const auto& entry : doc["states"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
        !entry.contains("profile") || !entry["profile"].is_array()) {
      throw InputError("structure: each state needs an 'id' and a 'profile'");
    }
    std::vector<std::string> names;
    for (const auto& name : entry["profile"]) {
      if (!name.is_string()) throw InputError("structure: profile entries must be strings");
      names.push_back(name.get<std::string>());
    }
    std::string id = entry["id"].get<std::string>();
    if (!index.emplace(id, states.size()).second) {
      throw InputError("structure: duplicate state id '" + id + "'");
    }
    states.push_back({id, game->profile_from_names(names)});
  }
  auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw InputError("structure: dangling state id '" + id + "'");
    return it->second;
  };

  if (!doc.contains("beliefs") || !doc["beliefs"].is_object()) {
    throw InputError("structure: missing 'beliefs' object");
  }
  std::vector<std::vector<std::optional<Distribution>>> partial(
      n, std::vector<std::optional<Distribution>>(states.size()));
  for (const auto& [player_key, per_state] : doc["beliefs"].items()) {
    const std::size_t i = player_from_key(player_key, n);
    if (!per_state.is_object()) throw InputError("structure: beliefs must map states to distributions");
    for (const auto& [state_id, dist] : per_state.items()) {
      if (!dist.is_object()) throw InputError("structure: a distribution must be an object");
      std::map<StateIndex, Rational> masses;
      Rational total;
      for (const auto& [to, mass] : dist.items()) {
        Rational value = rational_from_json(mass, "structure belief");
        if (value.is_negative()) throw InputError("structure: negative probability " + value.str());
        masses[lookup(to)] += value;
        total += value;
      }
      if (total != Rational(1)) {
        throw InputError("structure: belief of player " + player_key + " at '" + state_id +
                         "' has mass " + total.str() + ", expected 1");
      }
      partial[i][lookup(state_id)] = Distribution(masses);
    }
  }
  std::vector<std::vector<Distribution>> beliefs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (StateIndex s = 0; s < states.size(); ++s) {
      if (!partial[i][s]) {
        throw InputError("structure: missing belief of player " + std::to_string(i + 1) + " at '" +
                         states[s].id + "'");
      }
      beliefs[i].push_back(*partial[i][s]);
    }
  }

  std::vector<std::vector<std::vector<std::optional<StateIndex>>>> targets(states.size());
  for (StateIndex w = 0; w < states.size(); ++w) {
    targets[w].resize(n);
    for (std::size_t i = 0; i < n; ++i) targets[w][i].resize(game->strategy_count(i));
  }
  if (doc.contains("closest")) {
    if (!doc["closest"].is_array()) throw InputError("structure: 'closest' must be an array");
    for (const auto& entry : doc["closest"]) {
      if (!entry.is_object() || !entry.contains("state") || !entry.contains("player") ||
          !entry.contains("strategy") || !entry.contains("to") || !entry["state"].is_string() ||
          !entry["player"].is_number_integer() || !entry["strategy"].is_string() ||
          !entry["to"].is_string()) {
        throw InputError("structure: closest entries need state, player, strategy and to");
      }
      const StateIndex w = lookup(entry["state"].get<std::string>());
      const auto player = entry["player"].get<std::int64_t>();
      if (player < 1 || static_cast<std::size_t>(player) > n) {
        throw InputError("structure: closest entry player out of range");
      }
      const std::size_t i = static_cast<std::size_t>(player) - 1;
      const std::string& strategy_name = entry["strategy"].get_ref<const std::string&>();
      const std::size_t s = game->strategy_index(i, strategy_name);
      const StateIndex to = lookup(entry["to"].get<std::string>());
      auto& slot = targets[w][i][s];
      if (slot) throw InputError("structure: duplicate closest entry at '" + states[w].id + "'");
      if (states[to].profile[i] != s) {
        throw InputError("structure: closest entry from '" + states[w].id + "' for player " +
                         std::to_string(player) + " switching to " + strategy_name + " lands on '" +
                         states[to].id + "' where that strategy is not played");
      }
      if (s == states[w].profile[i] && to != w) {
        throw InputError("structure: closest entry from '" + states[w].id +
                         "' for the strategy already played must point to the state itself");
      }
      slot = to;
    }
  }
  std::vector<std::vector<std::vector<StateIndex>>> closest(states.size());
  for (StateIndex w = 0; w < states.size(); ++w) {
    closest[w].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < game->strategy_count(i); ++s) {
        const auto& slot = targets[w][i][s];
        if (slot) {
          closest[w][i].push_back(*slot);
        } else if (s == states[w].profile[i]) {
          closest[w][i].push_back(w);
        } else {
          throw InputError("structure: missing closest entry for state '" + states[w].id +
                           "', player " + std::to_string(i + 1) + ", strategy " +
                           game->strategy_name(i, s));
        }
      }
    }
  }
  return CounterfactualStructure(std::move(game), std::move(states), std::move(beliefs),
                                 std::move(closest));
}

std::string serialize_structure(const CounterfactualStructure& m) {
  const Game& g = m.game();
  std::vector<StateIndex> order(m.state_count());
  for (StateIndex s = 0; s < order.size(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](StateIndex a, StateIndex b) { return m.id(a) < m.id(b); });

  nlohmann::json states = nlohmann::json::array();
  for (StateIndex s : order) states.push_back({{"id", m.id(s)}, {"profile", g.profile_names(m.profile(s))}});

  nlohmann::json beliefs = nlohmann::json::object();
  for (std::size_t i = 0; i < m.player_count(); ++i) {
    nlohmann::json per_state = nlohmann::json::object();
    for (StateIndex s : order) {
      nlohmann::json dist = nlohmann::json::object();
      for (const auto& [to, mass] : m.belief(i, s).entries()) dist[m.id(to)] = mass.str();
      per_state[m.id(s)] = dist;
    }
    beliefs[std::to_string(i + 1)] = per_state;
  }

  nlohmann::json closest = nlohmann::json::array();
  for (StateIndex w : order) {
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      std::vector<std::size_t> strategies(g.strategy_count(i));
      for (std::size_t s = 0; s < strategies.size(); ++s) strategies[s] = s;
      std::sort(strategies.begin(), strategies.end(), [&](std::size_t a, std::size_t b) {
        return g.strategy_name(i, a) < g.strategy_name(i, b);
      });
      for (std::size_t s : strategies) {
        if (s == m.strategy(w, i) && m.closest(w, i, s) == w) continue;
        closest.push_back({{"state", m.id(w)},
                           {"player", i + 1},
                           {"strategy", g.strategy_name(i, s)},
                           {"to", m.id(m.closest(w, i, s))}});
      }
    }
  }
  nlohmann::json doc{{"game", game_to_json(g)}, {"states", states}, {"beliefs", beliefs},
                     {"closest", closest}};
  return doc.dump(2) + "\n";
}

}  // namespace translucent
