#include "translucent/random.hpp"

#include <random>

namespace translucent {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

// Portable bounded draw; the modulo bias is irrelevant at these ranges.
std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(base) ^ stream) ^ index);
}

Game random_game(std::uint64_t seed, const RandomGameOptions& options) {
  std::mt19937_64 rng(seed);
  const std::size_t n = options.min_players + below(rng, options.max_players - options.min_players + 1);
  std::vector<std::vector<std::string>> strategies(n);
  std::size_t total = 1;
  for (auto& names : strategies) {
    const std::size_t m =
        options.min_strategies + below(rng, options.max_strategies - options.min_strategies + 1);
    for (std::size_t s = 0; s < m; ++s) names.push_back(std::string(1, static_cast<char>('a' + s)));
    total *= m;
  }
  const auto span = static_cast<std::size_t>(options.max_payoff - options.min_payoff + 1);
  std::vector<std::vector<Rational>> payoffs(total);
  for (auto& entry : payoffs) {
    for (std::size_t i = 0; i < n; ++i) {
      entry.emplace_back(options.min_payoff + static_cast<std::int64_t>(below(rng, span)));
    }
  }
  return Game(std::move(strategies), std::move(payoffs));
}

CounterfactualStructure random_unilateral_structure(std::shared_ptr<const Game> game, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = game->player_count();
  std::vector<StateInfo> states;
  for (std::size_t flat = 0; flat < game->profile_count(); ++flat) {
    states.push_back({"p" + std::to_string(flat), game->profile_at(flat)});
  }
  std::vector<std::vector<Distribution>> beliefs(n, std::vector<Distribution>(states.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < game->strategy_count(i); ++s) {
      std::vector<StateIndex> cell;
      for (StateIndex w = 0; w < states.size(); ++w) {
        if (states[w].profile[i] == s) cell.push_back(w);
      }
      std::map<StateIndex, Rational> weights;
      std::int64_t total = 0;
      for (StateIndex w : cell) {
        if (below(rng, 3) != 0) continue;
        std::int64_t weight = 1 + static_cast<std::int64_t>(below(rng, 4));
        weights[w] = weight;
        total += weight;
      }
      if (weights.empty()) {
        weights[cell[below(rng, cell.size())]] = 1;
        total = 1;
      }
      for (auto& [_, w] : weights) w /= Rational(total);
      Distribution d(weights);
      for (StateIndex w : cell) beliefs[i][w] = d;
    }
  }
  std::vector<std::vector<std::vector<StateIndex>>> closest(states.size());
  for (StateIndex w = 0; w < states.size(); ++w) {
    closest[w].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < game->strategy_count(i); ++s) {
        Profile moved = states[w].profile;
        moved[i] = s;
        closest[w][i].push_back(game->flat_index(moved));
      }
    }
  }
  return CounterfactualStructure(std::move(game), std::move(states), std::move(beliefs),
                                 std::move(closest));
}

}  // namespace translucent
