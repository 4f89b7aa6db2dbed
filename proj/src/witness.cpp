#include "translucent/witness.hpp"

#include <algorithm>
#include <memory>
#include <optional>

#include "translucent/logic.hpp"

namespace translucent {

namespace {

// Opponent profile in Z_-i maximizing (or minimizing) u_i(sigma, ·); the
// first one in odometer order wins ties.
OpponentProfile extreme_response(const Game& game, const WitnessSets& z, std::size_t player,
                                 std::size_t sigma, bool best) {
  std::vector<std::vector<std::size_t>> opponents;
  for (std::size_t j = 0; j < z.sets.size(); ++j) {
    if (j != player) opponents.push_back(z.sets[j]);
  }
  std::optional<std::pair<Rational, OpponentProfile>> pick;
  for_each_profile(opponents, [&](const OpponentProfile& others) {
    const Rational& u = game.payoff(with_player(others, player, sigma), player);
    if (!pick || (best ? u > pick->first : u < pick->first)) pick.emplace(u, others);
  });
  return pick->second;
}

}  // namespace

CanonicalWitness build_canonical_witness_unchecked(const Game& game, const WitnessSets& z,
                                                   const Profile& profile) {
  const std::size_t n = game.player_count();
  WitnessSets sorted = z;
  for (auto& s : sorted.sets) std::sort(s.begin(), s.end());

  std::vector<StateInfo> states;
  std::map<std::pair<std::size_t, std::size_t>, StateIndex> belief_states;
  std::map<std::pair<std::size_t, std::size_t>, StateIndex> punishment_states;
  auto label = [&](const char* kind, std::size_t i, std::size_t s) {
    return std::string(kind) + std::to_string(i + 1) + ":" + game.strategy_name(i, s);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s : sorted.sets[i]) {
      belief_states[{i, s}] = states.size();
      states.push_back({label("B", i, s), with_player(extreme_response(game, sorted, i, s, true), i, s)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < game.strategy_count(i); ++s) {
      punishment_states[{i, s}] = states.size();
      states.push_back({label("P", i, s), with_player(extreme_response(game, sorted, i, s, false), i, s)});
    }
  }
  const StateIndex designated = states.size();
  states.push_back({"play", profile});

  std::vector<std::vector<Distribution>> beliefs(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (StateIndex w = 0; w < states.size(); ++w) {
      const std::size_t own = states[w].profile[j];
      auto p = punishment_states.at({j, own});
      StateIndex target = p;
      if (w != p) {
        auto b = belief_states.find({j, own});
        if (b != belief_states.end()) target = b->second;
      }
      beliefs[j].push_back(Distribution::point(target));
    }
  }

  std::vector<std::vector<std::vector<StateIndex>>> closest(states.size());
  for (StateIndex w = 0; w < states.size(); ++w) {
    closest[w].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t s = 0; s < game.strategy_count(j); ++s) {
        closest[w][j].push_back(s == states[w].profile[j] ? w : punishment_states.at({j, s}));
      }
    }
  }

  CounterfactualStructure structure(std::make_shared<const Game>(game), std::move(states),
                                    std::move(beliefs), std::move(closest));
  return {std::move(structure), designated, std::move(belief_states), std::move(punishment_states)};
}

CanonicalWitness build_canonical_witness(const Game& game, const WitnessSets& z, const Profile& profile) {
  auto check = check_witness_sets(game, profile, z);
  if (!check.valid) throw InputError("witness sets rejected: " + check.violation);
  return build_canonical_witness_unchecked(game, z, profile);
}

WitnessReport verify_ccbr_witness(const CanonicalWitness& witness, const Profile& profile) {
  WitnessReport report;
  const auto& m = witness.structure;
  auto appropriate = validate_appropriate(m);
  report.appropriate = appropriate.ok();
  for (const auto& v : appropriate.violations) report.problems.push_back(v.message);
  auto strong = validate_strongly_appropriate(m);
  report.strongly_appropriate = strong.ok();
  for (const auto& v : strong.violations) report.problems.push_back(v.message);

  report.plays_profile = m.profile(witness.designated) == profile;
  if (!report.plays_profile) report.problems.push_back("designated state does not play the profile");

  if (report.appropriate) {
    CcbrResult ccbr = ccbr_states(m);
    report.stable_level = ccbr.stable_level;
    report.designated_in_ccbr = ccbr.states.contains(witness.designated);
    if (!report.designated_in_ccbr) report.problems.push_back("CCBR fails at the designated state");
  } else {
    report.problems.push_back("CCBR not checked: structure is not appropriate");
  }
  return report;
}

}  // namespace translucent
