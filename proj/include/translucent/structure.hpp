#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "translucent/game.hpp"

namespace translucent {

using StateIndex = std::size_t;

/// Subset of the states of one structure.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe, bool filled = false) : bits_(universe, filled) {}
  static StateSet of(std::size_t universe, const std::vector<StateIndex>& members);

  std::size_t universe() const { return bits_.size(); }
  bool contains(StateIndex s) const { return bits_[s]; }
  void insert(StateIndex s) { bits_[s] = true; }
  void erase(StateIndex s) { bits_[s] = false; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<StateIndex> members() const;

  StateSet& operator&=(const StateSet& rhs);
  StateSet& operator|=(const StateSet& rhs);
  StateSet complement() const;
  bool subset_of(const StateSet& rhs) const;

  friend StateSet operator&(StateSet lhs, const StateSet& rhs) { return lhs &= rhs; }
  friend StateSet operator|(StateSet lhs, const StateSet& rhs) { return lhs |= rhs; }
  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Probability distribution over states with exact masses. Only positive
/// entries are stored, sorted by state, so == is equality of measures.
class Distribution {
 public:
  Distribution() = default;
  /// Throws InputError on negative masses. Zero entries are dropped.
  explicit Distribution(const std::map<StateIndex, Rational>& masses);
  static Distribution point(StateIndex state);

  const std::vector<std::pair<StateIndex, Rational>>& entries() const { return entries_; }
  std::vector<StateIndex> support() const;
  Rational mass_of(StateIndex state) const;
  Rational mass(const StateSet& event) const;
  Rational total() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;
  friend bool operator<(const Distribution& a, const Distribution& b) { return a.entries_ < b.entries_; }

 private:
  std::vector<std::pair<StateIndex, Rational>> entries_;
};

struct StateInfo {
  std::string id;
  Profile profile;

  friend bool operator==(const StateInfo&, const StateInfo&) = default;
};

/// Finite counterfactual structure (states, profile map, closest-state map,
/// per-player beliefs) over a game. The constructor enforces structural
/// well-formedness only; appropriateness is checked by validate_appropriate.
class CounterfactualStructure {
 public:
  /// beliefs[player][state]; closest[state][player][strategy].
  CounterfactualStructure(std::shared_ptr<const Game> game, std::vector<StateInfo> states,
                          std::vector<std::vector<Distribution>> beliefs,
                          std::vector<std::vector<std::vector<StateIndex>>> closest);

  const Game& game() const { return *game_; }
  const std::shared_ptr<const Game>& game_ptr() const { return game_; }
  std::size_t player_count() const { return game_->player_count(); }
  std::size_t state_count() const { return states_.size(); }

  const std::vector<StateInfo>& states() const { return states_; }
  const std::string& id(StateIndex state) const { return states_[state].id; }
  std::optional<StateIndex> find_state(std::string_view id) const;
  StateIndex state_index(std::string_view id) const;
  const Profile& profile(StateIndex state) const { return states_[state].profile; }
  std::size_t strategy(StateIndex state, std::size_t player) const { return states_[state].profile[player]; }

  const Distribution& belief(std::size_t player, StateIndex state) const { return beliefs_[player][state]; }
  StateIndex closest(StateIndex state, std::size_t player, std::size_t strategy) const {
    return closest_[state][player][strategy];
  }

  CounterfactualStructure with_belief(std::size_t player, StateIndex state, Distribution belief) const;
  CounterfactualStructure with_closest(StateIndex state, std::size_t player, std::size_t strategy,
                                       StateIndex target) const;

  StateSet all_states() const { return StateSet(states_.size(), true); }
  /// [[σ_i]]: states where `player` plays `strategy`.
  StateSet playing(std::size_t player, std::size_t strategy) const;

 private:
  std::shared_ptr<const Game> game_;
  std::vector<StateInfo> states_;
  std::vector<std::vector<Distribution>> beliefs_;
  std::vector<std::vector<std::vector<StateIndex>>> closest_;
  std::map<std::string, StateIndex, std::less<>> index_;
};

/// PR^c: pushforward of PR_i(state) through the closest-state map for a
/// switch to `strategy`.
Distribution counterfactual_belief(const CounterfactualStructure& m, StateIndex state,
                                   std::size_t player, std::size_t strategy);

struct Violation {
  std::string condition;
  StateIndex state = 0;
  std::size_t player = 0;
  std::optional<std::size_t> strategy;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Both belief conditions and both closest-state conditions, exhaustively.
ValidationReport validate_appropriate(const CounterfactualStructure& m);
/// Every counterfactual belief concentrates on states whose own belief
/// equals it.
ValidationReport validate_strongly_appropriate(const CounterfactualStructure& m);
/// Switching players leaves everybody else's strategy and beliefs unchanged.
bool respects_unilateral_deviations(const CounterfactualStructure& m);
/// Largest total-variation distance between actual and counterfactual
/// beliefs, projected onto the other players' strategies and beliefs.
Rational translucency_epsilon(const CounterfactualStructure& m);

/// Appropriate-by-construction random structure. Throws InputError when
/// state_count is too small to give every strategy a state.
CounterfactualStructure random_appropriate_structure(std::shared_ptr<const Game> game,
                                                     std::uint64_t seed, std::size_t state_count);

struct DesignatedStructure {
  CounterfactualStructure structure;
  StateIndex designated;
};

/// Leak story for the prisoner's dilemma: at "coop" each player expects a
/// switch to S to be noticed with probability eps and punished.
DesignatedStructure translucent_pd_structure(const Rational& reward, const Rational& penalty,
                                             const Rational& eps);
/// Two states w0 = (C,C), w1 = (S,S); any switch moves to the other state.
DesignatedStructure pd_naive_structure(const Rational& reward, const Rational& penalty);

/// "translucent_pd" (r, p, eps) or "pd_naive" (r, p).
DesignatedStructure builtin_structure(std::string_view name, const GameParams& params);

/// When `game` is null the document's "game" field is used: an inline game
/// object or a path resolved against `base_dir`.
CounterfactualStructure parse_structure(std::string_view text, std::shared_ptr<const Game> game = nullptr,
                                        const std::filesystem::path& base_dir = {});
/// Canonical form: states sorted by id, closest entries by state id, player,
/// strategy name; identity closest entries omitted; game inlined.
std::string serialize_structure(const CounterfactualStructure& m);

}  // namespace translucent
