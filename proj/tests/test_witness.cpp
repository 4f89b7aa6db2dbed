#include <doctest.h>

#include "translucent/acceptance.hpp"
#include "translucent/logic.hpp"
#include "translucent/random.hpp"
#include "translucent/witness.hpp"

using namespace translucent;

namespace {

std::size_t expected_size(const Game& g, const WitnessSets& z) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < g.player_count(); ++i) n += z.sets[i].size() + g.strategy_count(i);
  return n;
}

}  // namespace

TEST_CASE("ladder witness") {
  const Game ladder = ladder_game(3, Rational(1, 2));
  const WitnessSets z{{{2}, {2}}};
  const CanonicalWitness w = build_canonical_witness(ladder, z, {2, 2});
  CHECK(w.belief_states.size() == 2);
  CHECK(w.punishment_states.size() == 6);
  CHECK(w.structure.state_count() == 9);
  CHECK(w.structure.profile(w.designated) == Profile{2, 2});
  CHECK(validate_strongly_appropriate(w.structure).ok());

  const WitnessReport report = verify_ccbr_witness(w, {2, 2});
  CHECK(report.pass());
  CHECK(report.problems.empty());

  const LevelSets sr = srat_sets(w.structure, 2 * w.structure.state_count());
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& level : sr.sets[i]) CHECK(level.contains(w.designated));
  }
}

TEST_CASE("prisoner's dilemma witnesses") {
  const Game pd = translucent_pd(1, 5);
  const WitnessSets full{pd.full_family()};
  for (std::size_t flat = 0; flat < pd.profile_count(); ++flat) {
    const Profile p = pd.profile_at(flat);
    const CanonicalWitness w = build_canonical_witness(pd, full, p);
    CHECK(w.structure.state_count() == expected_size(pd, full));
    CHECK(verify_ccbr_witness(w, p).pass());
  }
}

TEST_CASE("1x1 witness") {
  const Game one = ladder_game(1, 1);
  const CanonicalWitness w = build_canonical_witness(one, WitnessSets{{{0}, {0}}}, {0, 0});
  CHECK(w.structure.state_count() == 5);
  CHECK(verify_ccbr_witness(w, {0, 0}).pass());
}

TEST_CASE("punishment beliefs must be self-beliefs") {
  const Game pd = translucent_pd(1, 5);
  const CanonicalWitness w = build_canonical_witness(pd, WitnessSets{pd.full_family()}, {0, 0});
  const StateIndex punish = w.punishment_states.at({0, 0});
  const StateIndex target = w.belief_states.at({0, 0});
  const CounterfactualStructure mutated = w.structure.with_belief(0, punish, Distribution::point(target));
  CHECK(validate_appropriate(mutated).ok());
  CHECK_FALSE(validate_strongly_appropriate(mutated).ok());
}

TEST_CASE("construction on a profile that is not rationalizable") {
  const Game ladder = ladder_game(3, Rational(1, 2));
  CHECK_THROWS_AS(build_canonical_witness(ladder, WitnessSets{{{0}, {0}}}, {0, 0}), InputError);
  CHECK_THROWS_AS(build_canonical_witness(ladder, WitnessSets{{{2}, {2}}}, {0, 0}), InputError);
  const CanonicalWitness w = build_canonical_witness_unchecked(ladder, WitnessSets{{{0}, {0}}}, {0, 0});
  const WitnessReport report = verify_ccbr_witness(w, {0, 0});
  CHECK_FALSE(report.designated_in_ccbr);
  CHECK_FALSE(report.pass());
}

TEST_CASE("witnesses across random games") {
  std::size_t verified = 0;
  for (std::size_t t = 0; t < 150; ++t) {
    const Game g = acceptance_game(53, t);
    const auto rationalizable = minimax_rationalizable_profiles(g);
    for (const Profile& p : rationalizable.profiles) {
      const WitnessSets& z = rationalizable.witnesses.at(p);
      const CanonicalWitness w = build_canonical_witness(g, z, p);
      CHECK(w.structure.state_count() == expected_size(g, z));
      const WitnessReport report = verify_ccbr_witness(w, p);
      CHECK(report.pass());
      CHECK(report.stable_level <= 2);

      const ModelChecker checker(w.structure);
      for (const auto& [key, state] : w.belief_states) CHECK(checker.rat(key.first).contains(state));
      CHECK(checker.rat_all().contains(w.designated));
      ++verified;
    }
  }
  CHECK(verified > 150);
}
