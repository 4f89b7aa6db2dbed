#include "translucent/rationalizability.hpp"

#include <algorithm>
#include <cstdint>

namespace translucent {

std::size_t WitnessSets::total_size() const {
  std::size_t total = 0;
  for (const auto& s : sets) total += s.size();
  return total;
}

namespace {

// Evaluates max/min of u_i(sigma, ·) over the opponents' witness subsets.
struct Extremes {
  Rational max;
  Rational min;
};

Extremes extremes(const Game& game, std::size_t player, std::size_t sigma,
                  const std::vector<std::vector<std::size_t>>& sets) {
  std::vector<std::vector<std::size_t>> opponents;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (j != player) opponents.push_back(sets[j]);
  }
  std::optional<Extremes> out;
  for_each_profile(opponents, [&](const OpponentProfile& others) {
    const Rational& u = game.payoff(with_player(others, player, sigma), player);
    if (!out) {
      out = Extremes{u, u};
    } else {
      out->max = std::max(out->max, u);
      out->min = std::min(out->min, u);
    }
  });
  return *out;
}

// Returns an empty string when the condition holds, else the first violation.
std::string witness_violation(const Game& game, const std::vector<std::vector<std::size_t>>& sets) {
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    // Weakest member of Z_i against the strongest alternative in Σ_i.
    std::optional<std::pair<Rational, std::size_t>> weakest;
    for (std::size_t s : sets[i]) {
      Rational best = extremes(game, i, s, sets).max;
      if (!weakest || best < weakest->first) weakest.emplace(best, s);
    }
    for (std::size_t alt = 0; alt < game.strategy_count(i); ++alt) {
      Rational worst = extremes(game, i, alt, sets).min;
      if (weakest->first < worst) {
        return "player " + std::to_string(i + 1) + ": max payoff " + weakest->first.str() +
               " of '" + game.strategy_name(i, weakest->second) + "' is below min payoff " +
               worst.str() + " of '" + game.strategy_name(i, alt) + "'";
      }
    }
  }
  return {};
}

std::string shape_violation(const Game& game, const WitnessSets& z) {
  if (z.sets.size() != game.player_count()) return "wrong number of witness sets";
  for (std::size_t i = 0; i < z.sets.size(); ++i) {
    if (z.sets[i].empty()) return "empty witness set for player " + std::to_string(i + 1);
    for (std::size_t s : z.sets[i]) {
      if (s >= game.strategy_count(i)) return "witness strategy not in game";
    }
  }
  return {};
}

void check_budget(const Game& game, std::size_t budget) {
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    if (game.strategy_count(i) > budget) {
      throw SearchBudgetExceeded("witness search budget exceeded: player " + std::to_string(i + 1) +
                                 " has " + std::to_string(game.strategy_count(i)) +
                                 " strategies, bound is " + std::to_string(budget));
    }
  }
}

std::vector<std::uint64_t> mask_radix(const Game& game) {
  std::vector<std::uint64_t> radix(game.player_count());
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    radix[i] = (std::uint64_t{1} << game.strategy_count(i)) - 1;
  }
  return radix;
}

std::vector<std::vector<std::size_t>> decode(const std::vector<std::uint64_t>& radix,
                                             std::uint64_t combination) {
  std::vector<std::vector<std::size_t>> sets(radix.size());
  for (std::size_t i = radix.size(); i-- > 0;) {
    std::uint64_t mask = combination % radix[i] + 1;
    combination /= radix[i];
    for (std::size_t s = 0; mask != 0; ++s, mask >>= 1U) {
      if ((mask & 1U) != 0) sets[i].push_back(s);
    }
  }
  return sets;
}

}  // namespace

WitnessCheck satisfies_witness_condition(const Game& game, const WitnessSets& z) {
  if (auto why = shape_violation(game, z); !why.empty()) return {false, why};
  WitnessSets sorted = z;
  for (auto& s : sorted.sets) std::sort(s.begin(), s.end());
  if (auto why = witness_violation(game, sorted.sets); !why.empty()) return {false, why};
  return {};
}

WitnessCheck check_witness_sets(const Game& game, const Profile& profile, const WitnessSets& z) {
  if (auto why = shape_violation(game, z); !why.empty()) return {false, why};
  if (profile.size() != game.player_count()) return {false, "profile has wrong length"};
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (std::find(z.sets[i].begin(), z.sets[i].end(), profile[i]) == z.sets[i].end()) {
      return {false, "player " + std::to_string(i + 1) + " strategy '" +
                         game.strategy_name(i, profile[i]) + "' is not in its witness set"};
    }
  }
  return satisfies_witness_condition(game, z);
}

std::vector<char> valid_witness_combinations(const Game& game, Execution execution,
                                             std::size_t budget) {
  check_budget(game, budget);
  const auto radix = mask_radix(game);
  std::uint64_t total = 1;
  for (auto r : radix) total *= r;
  std::vector<char> valid(total, 0);
  const auto count = static_cast<std::int64_t>(total);
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t c = 0; c < count; ++c) {
      valid[c] = witness_violation(game, decode(radix, static_cast<std::uint64_t>(c))).empty() ? 1 : 0;
    }
  } else {
    for (std::int64_t c = 0; c < count; ++c) {
      valid[c] = witness_violation(game, decode(radix, static_cast<std::uint64_t>(c))).empty() ? 1 : 0;
    }
  }
  return valid;
}

namespace {

bool better_witness(const WitnessSets& candidate, const WitnessSets& incumbent) {
  auto a = candidate.total_size();
  auto b = incumbent.total_size();
  if (a != b) return a < b;
  return candidate.sets < incumbent.sets;
}

}  // namespace

RationalizableProfiles minimax_rationalizable_profiles(const Game& game, std::size_t budget,
                                                       Execution execution) {
  const auto valid = valid_witness_combinations(game, execution, budget);
  const auto radix = mask_radix(game);
  RationalizableProfiles out;
  for (std::uint64_t c = 0; c < valid.size(); ++c) {
    if (valid[c] == 0) continue;
    WitnessSets z{decode(radix, c)};
    for_each_profile(z.sets, [&](const Profile& profile) {
      auto [it, inserted] = out.witnesses.try_emplace(profile, z);
      if (!inserted && better_witness(z, it->second)) it->second = z;
    });
  }
  for (const auto& [profile, _] : out.witnesses) out.profiles.push_back(profile);
  std::sort(out.profiles.begin(), out.profiles.end(), [&](const Profile& a, const Profile& b) {
    return game.flat_index(a) < game.flat_index(b);
  });
  return out;
}

std::optional<WitnessSets> find_witness_sets(const Game& game, const Profile& profile,
                                             std::size_t budget, Execution execution) {
  game.flat_index(profile);  // validates the profile
  const auto valid = valid_witness_combinations(game, execution, budget);
  const auto radix = mask_radix(game);
  std::optional<WitnessSets> best;
  for (std::uint64_t c = 0; c < valid.size(); ++c) {
    if (valid[c] == 0) continue;
    WitnessSets z{decode(radix, c)};
    bool member = true;
    for (std::size_t i = 0; i < profile.size() && member; ++i) {
      member = std::binary_search(z.sets[i].begin(), z.sets[i].end(), profile[i]);
    }
    if (member && (!best || better_witness(z, *best))) best = std::move(z);
  }
  return best;
}

}  // namespace translucent
