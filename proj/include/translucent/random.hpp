#pragma once

#include <cstdint>
#include <memory>

#include "translucent/game.hpp"
#include "translucent/structure.hpp"

namespace translucent {

struct RandomGameOptions {
  std::size_t min_players = 2;
  std::size_t max_players = 3;
  std::size_t min_strategies = 2;
  std::size_t max_strategies = 4;
  std::int64_t min_payoff = -9;
  std::int64_t max_payoff = 9;
};

/// Seeded random game with uniform integer payoffs. Strategy names are
/// "a", "b", "c", ... for every player.
Game random_game(std::uint64_t seed, const RandomGameOptions& options = {});

/// One state per pure profile; each player's belief depends only on its own
/// strategy, and f(ω, i, σ') swaps in σ' while keeping the others' profile.
/// Appropriate and respects unilateral deviations by construction.
CounterfactualStructure random_unilateral_structure(std::shared_ptr<const Game> game, std::uint64_t seed);

/// Derives independent per-trial seeds (splitmix64 over the three inputs).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

}  // namespace translucent
