#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "translucent/errors.hpp"
#include "translucent/rational.hpp"

namespace translucent {

// Players are 0-based everywhere in the API; files, formulas and CLI output
// number them from 1.

/// Full pure profile: one strategy index per player.
using Profile = std::vector<std::size_t>;
/// Profile of the players other than some i, original order kept, i omitted.
using OpponentProfile = std::vector<std::size_t>;

/// Finite normal-form game with exact rational payoffs.
class Game {
 public:
  /// `payoffs` is indexed by flat profile index (player 0 varies slowest);
  /// each entry holds one payoff per player.
  Game(std::vector<std::vector<std::string>> strategies,
       std::vector<std::vector<Rational>> payoffs);

  /// Builds a game from (profile names -> payoff vector) entries. Throws
  /// InputError on duplicate strategies, unknown names or an incomplete table.
  static Game from_entries(std::vector<std::vector<std::string>> strategies,
                           const std::map<std::vector<std::string>, std::vector<Rational>>& entries);

  std::size_t player_count() const { return strategies_.size(); }
  std::size_t strategy_count(std::size_t player) const;
  const std::vector<std::string>& strategies(std::size_t player) const;
  const std::string& strategy_name(std::size_t player, std::size_t strategy) const;
  std::size_t strategy_index(std::size_t player, std::string_view name) const;
  std::optional<std::size_t> find_strategy(std::size_t player, std::string_view name) const;

  std::size_t profile_count() const { return payoffs_.size(); }
  std::size_t flat_index(const Profile& profile) const;
  Profile profile_at(std::size_t flat) const;

  const Rational& payoff(const Profile& profile, std::size_t player) const;
  const std::vector<Rational>& payoffs(const Profile& profile) const;

  /// Per-player list {0, ..., |Σ_i| - 1}.
  std::vector<std::vector<std::size_t>> full_family() const;

  Profile profile_from_names(std::span<const std::string> names) const;
  std::vector<std::string> profile_names(const Profile& profile) const;

  friend bool operator==(const Game&, const Game&) = default;

 private:
  void check_player(std::size_t player) const;

  std::vector<std::vector<std::string>> strategies_;
  std::vector<std::vector<Rational>> payoffs_;
};

Profile with_player(const OpponentProfile& others, std::size_t player, std::size_t strategy);
OpponentProfile without_player(const Profile& profile, std::size_t player);

/// Calls fn(profile) for every element of the product of `sets`, odometer
/// order with the last player varying fastest.
template <typename Fn>
void for_each_profile(const std::vector<std::vector<std::size_t>>& sets, Fn&& fn) {
  for (const auto& s : sets) {
    if (s.empty()) return;
  }
  std::vector<std::size_t> pos(sets.size(), 0);
  Profile profile(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) profile[i] = sets[i][0];
  while (true) {
    fn(static_cast<const Profile&>(profile));
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++pos[k] < sets[k].size()) {
        profile[k] = sets[k][pos[k]];
        break;
      }
      pos[k] = 0;
      profile[k] = sets[k][0];
      if (k == 0) return;
    }
    if (sets.empty()) return;
  }
}

/// Name-based payoff lookup. Throws InputError on unknown names or player.
Rational utility(const Game& game, std::span<const std::string> profile, std::size_t player);

/// Distribution over the opponents' profiles of one player.
class OpponentBelief {
 public:
  OpponentBelief() = default;
  explicit OpponentBelief(std::map<OpponentProfile, Rational> masses) : masses_(std::move(masses)) {}

  static OpponentBelief point(OpponentProfile profile);

  void add(const OpponentProfile& profile, const Rational& mass);
  const std::map<OpponentProfile, Rational>& masses() const { return masses_; }
  Rational total() const;

  friend bool operator==(const OpponentBelief&, const OpponentBelief&) = default;

 private:
  std::map<OpponentProfile, Rational> masses_;
};

/// Σ belief(τ) · u_i(sigma, τ). Throws InputError if the belief has negative
/// entries, does not sum to exactly 1, or names profiles outside the game.
Rational expected_utility(const Game& game, std::size_t player, std::size_t sigma,
                          const OpponentBelief& belief);

using GameParams = std::map<std::string, Rational>;

Game translucent_pd(const Rational& reward, const Rational& penalty);
Game ladder_game(std::int64_t k, const Rational& reward);

/// "translucent_pd" (params r, p) or "ladder" (params k, p).
Game builtin_game(std::string_view name, const GameParams& params);

Game parse_game(std::string_view text);
/// Canonical form: payoff entries sorted lexicographically by profile names.
std::string serialize_game(const Game& game);

}  // namespace translucent
