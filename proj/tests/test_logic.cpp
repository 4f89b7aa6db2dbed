#include <doctest.h>

#include <random>

#include "support.hpp"
#include "translucent/acceptance.hpp"
#include "translucent/domination.hpp"
#include "translucent/logic.hpp"
#include "translucent/random.hpp"

using namespace translucent;

namespace {

StateSet states_of(const CounterfactualStructure& m, std::initializer_list<const char*> ids) {
  StateSet out(m.state_count());
  for (const char* id : ids) out.insert(m.state_index(id));
  return out;
}

StateSet eval(const CounterfactualStructure& m, const std::string& text,
              EvalMode mode = EvalMode::kCounterfactual) {
  return satisfying_states(m, mode, parse_formula(text, m.game()));
}

// Definitional CB: intersect EB^1 A, EB^2 A, ... long enough for the iterate
// sequence on a small carrier to have cycled.
StateSet cb_by_definition(const CounterfactualStructure& m, const StateSet& event, bool counterfactual) {
  const ModelChecker checker(m);
  StateSet power = checker.everyone_believes(event, counterfactual);
  StateSet out = power;
  const std::size_t rounds = (std::size_t{1} << m.state_count()) + 1;
  for (std::size_t k = 0; k < rounds; ++k) {
    power = checker.everyone_believes(power, counterfactual);
    out &= power;
  }
  return out;
}

Formula random_formula(std::mt19937_64& rng, const Game& g, int depth) {
  const std::size_t player = rng() % g.player_count();
  const int pick = depth <= 0 ? static_cast<int>(rng() % 4) : static_cast<int>(rng() % 9);
  switch (pick) {
    case 0: return Formula::truth();
    case 1: return Formula::play(player, g.strategy_name(player, rng() % g.strategy_count(player)));
    case 2: return Formula::rat(player);
    case 3: return Formula::rat_all();
    case 4: return Formula::negation(random_formula(rng, g, depth - 1));
    case 5: return Formula::conjunction(random_formula(rng, g, depth - 1), random_formula(rng, g, depth - 1));
    case 6: return Formula::belief(player, random_formula(rng, g, depth - 1));
    case 7: return Formula::cf_belief(player, random_formula(rng, g, depth - 1));
    default: return Formula::common_cf_belief(random_formula(rng, g, depth - 1));
  }
}

}  // namespace

TEST_CASE("basic satisfaction sets") {
  const auto naive = pd_naive_structure(1, 5).structure;
  CHECK(eval(naive, "true") == naive.all_states());
  CHECK(eval(naive, "!true").empty());
  CHECK(eval(naive, "play_1(C)") == states_of(naive, {"w0"}));
  CHECK(eval(naive, "B_1 play_2(C)") == states_of(naive, {"w0"}));
  CHECK(eval(naive, "B*_1 play_2(S)").empty());
  CHECK(eval(naive, "B*_1 true") == naive.all_states());
}

TEST_CASE("probability mode rejects counterfactual operators") {
  const auto naive = pd_naive_structure(1, 5).structure;
  for (const char* f : {"B*_1 true", "CB* RAT", "SRAT_1^1", "CCBR", "RAT_1 & !B*_2 true"}) {
    CAPTURE(f);
    CHECK_THROWS_AS(eval(naive, f, EvalMode::kProbability), InputError);
  }
  CHECK_NOTHROW(eval(naive, "CB RAT & WRAT_1^2 & B_1 RAT_2", EvalMode::kProbability));
}

TEST_CASE("RAT in the translucent prisoner's dilemma") {
  const auto tpd = translucent_pd_structure(1, 5, Rational(1, 4));
  const StateIndex coop = tpd.designated;
  CHECK(rat_holds(tpd.structure, EvalMode::kCounterfactual, coop, 0));
  CHECK(rat_holds(tpd.structure, EvalMode::kCounterfactual, coop, 1));
  CHECK_FALSE(rat_holds(tpd.structure, EvalMode::kProbability, coop, 0));
  const ModelChecker cf(tpd.structure);
  const RatPayoffs p = cf.rat_payoffs(coop, 0);
  CHECK(p.stay == Rational(0));
  CHECK(p.deviation[1] == Rational(3, 4) * Rational(1) + Rational(1, 4) * Rational(-4));
  CHECK(p.deviation[1] == Rational(-1, 4));
  CHECK(p.deviation[0] == Rational(0));
  const ModelChecker prob(tpd.structure, EvalMode::kProbability);
  CHECK(prob.rat_payoffs(coop, 0).deviation[1] == Rational(1));

  const auto weak = translucent_pd_structure(1, 5, Rational(1, 10));
  CHECK_FALSE(rat_holds(weak.structure, EvalMode::kCounterfactual, weak.designated, 0));
  CHECK(ModelChecker(weak.structure).rat_payoffs(weak.designated, 0).deviation[1] == Rational(1, 2));

  const auto naive = pd_naive_structure(1, 5).structure;
  CHECK(rat_holds(naive, EvalMode::kCounterfactual, 0, 0));
  CHECK_FALSE(rat_holds(naive, EvalMode::kCounterfactual, 1, 0));
}

TEST_CASE("both forms of RAT agree") {
  std::vector<CounterfactualStructure> corpus;
  for (const auto& [_, m] : bundled_structures()) corpus.push_back(m);
  corpus.push_back(testing_support::load_fixture("drug.json"));
  for (std::size_t t = 0; t < 500; ++t) corpus.push_back(acceptance_structure(17, t));
  for (const auto& m : corpus) {
    for (StateIndex w = 0; w < m.state_count(); ++w) {
      for (std::size_t i = 0; i < m.player_count(); ++i) CHECK(rat_equivalence_check(m, w, i));
    }
  }
}

TEST_CASE("SRAT levels") {
  const auto naive = pd_naive_structure(1, 5).structure;
  const LevelSets sr = srat_sets(naive, 3);
  const ModelChecker checker(naive);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(sr.sets[i][0] == naive.all_states());
    CHECK(sr.sets[i][1] == checker.rat(i));
  }
  CHECK(sr.sets[0][1].contains(0));
  CHECK_FALSE(sr.sets[0][2].contains(0));
  CHECK(eval(naive, "SRAT_1^2").empty());

  for (std::size_t t = 0; t < 300; ++t) {
    const auto m = acceptance_structure(23, t);
    const LevelSets levels = srat_sets(m, default_level_bound(m));
    const ModelChecker c(m);
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      CHECK(levels.sets[i][1] == c.rat(i));
      for (std::size_t k = 0; k + 1 < levels.sets[i].size(); ++k) CHECK(levels.sets[i][k + 1].subset_of(levels.sets[i][k]));
    }
  }
}

TEST_CASE("WRAT levels") {
  for (const auto& [name, m] : bundled_structures()) {
    CAPTURE(name);
    const WratResult w = wrat_sets(m, default_level_bound(m));
    CHECK(w.forms_agree);
    const ModelChecker c(m);
    for (std::size_t i = 0; i < m.player_count(); ++i) CHECK(w.levels.sets[i][1] == c.rat(i));
  }
  for (std::size_t t = 0; t < 500; ++t) {
    const auto m = acceptance_structure(29, t);
    for (EvalMode mode : {EvalMode::kCounterfactual, EvalMode::kProbability}) {
      const WratResult w = wrat_sets(m, default_level_bound(m), mode);
      CHECK(w.forms_agree);
      for (std::size_t i = 0; i < m.player_count(); ++i) {
        for (std::size_t k = 0; k + 1 < w.levels.sets[i].size(); ++k) {
          CHECK(w.levels.sets[i][k + 1].subset_of(w.levels.sets[i][k]));
        }
      }
    }
  }
}

TEST_CASE("CCBR") {
  CHECK(ccbr_states(pd_naive_structure(1, 5).structure).states.empty());
  const auto single = testing_support::single_state_structure();
  CHECK(ccbr_states(single).states == single.all_states());
  const auto tpd = translucent_pd_structure(1, 5, Rational(1, 4));
  const CcbrResult r = ccbr_states(tpd.structure);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.levels.sets[i][r.stable_level + 1] == r.levels.sets[i][r.stable_level]);
  }
  CHECK(eval(tpd.structure, "CCBR") == r.states);
}

TEST_CASE("common belief") {
  std::vector<CounterfactualStructure> corpus;
  for (const auto& [_, m] : bundled_structures()) corpus.push_back(m);
  for (std::size_t t = 0; t < 500; ++t) corpus.push_back(acceptance_structure(31, t));
  std::mt19937_64 rng(5);
  for (const auto& m : corpus) {
    const ModelChecker checker(m);
    CHECK(checker.common_belief(m.all_states(), false).by_iteration == m.all_states());
    CHECK(checker.common_belief(m.all_states(), true).by_iteration == m.all_states());
    for (int n = 0; n < 3; ++n) {
      StateSet event(m.state_count());
      for (StateIndex w = 0; w < m.state_count(); ++w) {
        if (rng() % 3 != 0) event.insert(w);
      }
      for (bool cf : {false, true}) {
        const CommonBeliefResult r = checker.common_belief(event, cf);
        CHECK(r.agree());
        CHECK(r.by_iteration == cb_by_definition(m, event, cf));
      }
    }
    const StateSet cb_rat = checker.common_belief(checker.rat_all(), false).by_iteration;
    const WratResult wrat = checker.wrat_sets(default_level_bound(m));
    StateSet all_levels = m.all_states();
    for (const auto& per_player : wrat.levels.sets) {
      for (const auto& level : per_player) all_levels &= level;
    }
    CHECK(cb_rat == all_levels);
  }
}

TEST_CASE("validity spot checks") {
  for (const auto& [name, m] : bundled_structures()) {
    CAPTURE(name);
    const ValidityReport report = validity_spotchecks(m);
    CHECK(report.ok());
    CHECK(report.implications_checked > 0);
  }
  for (std::size_t t = 0; t < 200; ++t) CHECK(validity_spotchecks(acceptance_structure(37, t)).ok());

  const auto naive = pd_naive_structure(1, 5);
  CHECK(eval(naive.structure, "SRAT_1^1").contains(naive.designated));
  CHECK_FALSE(eval(naive.structure, "B*_1 SRAT_1^1").contains(naive.designated));
}

TEST_CASE("compositional semantics") {
  std::mt19937_64 rng(41);
  for (std::size_t t = 0; t < 150; ++t) {
    const auto m = acceptance_structure(43, t);
    const ModelChecker checker(m);
    for (int n = 0; n < 5; ++n) {
      const Formula a = random_formula(rng, m.game(), 2);
      const Formula b = random_formula(rng, m.game(), 2);
      const StateSet sa = checker.satisfying(a);
      const StateSet sb = checker.satisfying(b);
      CHECK(checker.satisfying(Formula::negation(a)) == sa.complement());
      CHECK(checker.satisfying(Formula::conjunction(a, b)) == (sa & sb));
      for (std::size_t i = 0; i < m.player_count(); ++i) {
        const StateSet cf = checker.satisfying(Formula::cf_belief(i, a));
        for (StateIndex v = 0; v < m.state_count(); ++v) {
          for (StateIndex w = 0; w < m.state_count(); ++w) {
            if (m.belief(i, v) == m.belief(i, w)) CHECK(cf.contains(v) == cf.contains(w));
          }
        }
      }
    }
  }
}

TEST_CASE("strong rationality never keeps deleted strategies") {
  for (std::size_t t = 0; t < 300; ++t) {
    const auto m = acceptance_structure(47, t);
    const DeletionTrace trace = nsd_fixpoint(m.game());
    const LevelSets sr = srat_sets(m, 4);
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      for (std::size_t k = 0; k <= 4; ++k) {
        for (StateIndex w : sr.sets[i][k].members()) CHECK(trace.after(k).contains(i, m.strategy(w, i)));
      }
    }
  }
}

TEST_CASE("unilateral structures make both RAT notions coincide") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = std::make_shared<const Game>(random_game(seed));
    const auto m = random_unilateral_structure(g, seed + 1000);
    const ModelChecker cf(m, EvalMode::kCounterfactual);
    const ModelChecker prob(m, EvalMode::kProbability);
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      CHECK(cf.rat(i) == prob.rat(i));
      for (StateIndex w = 0; w < m.state_count(); ++w) {
        CHECK(cf.rat_payoffs(w, i).deviation == prob.rat_payoffs(w, i).deviation);
      }
    }
  }
}
