#include "translucent/acceptance.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <memory>
#include <random>
#include <sstream>

#include "translucent/domination.hpp"
#include "translucent/logic.hpp"
#include "translucent/random.hpp"
#include "translucent/witness.hpp"

namespace translucent {

namespace {

// Seed streams, one per kind of random object.
constexpr std::uint64_t kGameStream = 1;
constexpr std::uint64_t kSequenceStream = 2;
constexpr std::uint64_t kStructureGameStream = 3;
constexpr std::uint64_t kStructureStream = 4;
constexpr std::uint64_t kUnilateralStream = 5;

// Runs fn(t) for every trial; fn returns an empty string on success. Each
// trial writes only its own slot, so the outcome is independent of the
// schedule.
template <typename Fn>
std::vector<std::string> run_trials(std::size_t count, Execution execution, Fn&& fn) {
  std::vector<std::string> out(count);
  auto body = [&](std::size_t t) {
    try {
      out[t] = fn(t);
    } catch (const std::exception& e) {
      out[t] = std::string("exception: ") + e.what();
    }
  };
  const auto n = static_cast<std::int64_t>(count);
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < n; ++t) body(static_cast<std::size_t>(t));
  } else {
    for (std::int64_t t = 0; t < n; ++t) body(static_cast<std::size_t>(t));
  }
  return out;
}

void tally(CriterionResult& result, const std::vector<std::string>& outcomes, const std::string& label) {
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    ++result.trials;
    if (outcomes[t].empty()) continue;
    if (result.failures++ == 0) result.detail = label + " " + std::to_string(t) + ": " + outcomes[t];
  }
}

std::string family_str(const Game& g, const StrategyFamily& family) {
  std::string out;
  for (std::size_t i = 0; i < family.player_count(); ++i) {
    if (i > 0) out += "x";
    out += "{";
    for (std::size_t k = 0; k < family[i].size(); ++k) {
      if (k > 0) out += ",";
      out += g.strategy_name(i, family[i][k]);
    }
    out += "}";
  }
  return out;
}

std::vector<Profile> product(const StrategyFamily& family) {
  std::vector<Profile> out;
  for_each_profile(family.sets(), [&](const Profile& p) { out.push_back(p); });
  return out;
}

std::string profile_str(const Game& g, const Profile& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ",";
    out += g.strategy_name(i, p[i]);
  }
  return out + ")";
}

CriterionResult ladder_criterion() {
  CriterionResult r;
  const Rational half(1, 2);
  std::vector<std::string> outcomes;
  for (std::int64_t k = 2; k <= 7; ++k) {
    const Game g = ladder_game(k, half);
    const DeletionTrace trace = nsd_fixpoint(g);
    std::string problem;
    const auto top = static_cast<std::size_t>(k - 1);
    if (trace.round_count() != top) {
      problem = "expected " + std::to_string(k - 1) + " rounds, got " + std::to_string(trace.round_count());
    } else if (!(trace.final_family() == StrategyFamily({{top}, {top}}))) {
      problem = "survivors " + family_str(g, trace.final_family());
    } else {
      bool found = false;
      for (const auto& c : trace.certificates) {
        if (c.round != 1 || c.deleted != 0) continue;
        found = true;
        if (c.dominator_min != Rational(3, 2) || c.dominated_max != Rational(1)) {
          problem = "round 1 certificate shows min " + c.dominator_min.str() + ", max " +
                    c.dominated_max.str();
        }
      }
      if (!found) problem = "strategy 1 not deleted in round 1";
    }
    outcomes.push_back(problem);
  }
  tally(r, outcomes, "k-index");
  if (r.failures == 0) r.detail = "k=2..7: k-1 rounds, survivors {k}x{k}, round 1 min 3/2 > max 1";
  return r;
}

CriterionResult translucent_pd_criterion() {
  CriterionResult r;
  std::vector<std::string> outcomes;
  auto check = [&](const Rational& eps, bool expect_cf, const Rational& expect_deviation, bool check_prob) {
    auto tpd = translucent_pd_structure(1, 5, eps);
    const StateIndex coop = tpd.designated;
    std::string problem;
    const ModelChecker cf(tpd.structure, EvalMode::kCounterfactual);
    const ModelChecker prob(tpd.structure, EvalMode::kProbability);
    const std::size_t defect = tpd.structure.game().strategy_index(0, "S");
    for (std::size_t i = 0; i < 2; ++i) {
      const RatPayoffs p = cf.rat_payoffs(coop, i);
      if (p.stay != Rational(0) || p.deviation[defect] != expect_deviation) {
        problem = "eps=" + eps.str() + ": stay " + p.stay.str() + ", deviate " + p.deviation[defect].str();
      } else if (cf.rat(i).contains(coop) != expect_cf) {
        problem = "eps=" + eps.str() + ": counterfactual RAT_" + std::to_string(i + 1) + " has wrong verdict";
      } else if (check_prob && prob.rat(i).contains(coop)) {
        problem = "eps=" + eps.str() + ": probability-mode RAT_" + std::to_string(i + 1) + " holds";
      }
    }
    outcomes.push_back(problem);
  };
  check(Rational(1, 4), true, Rational(-1, 4), true);
  check(Rational(1, 10), false, Rational(1, 2), false);
  tally(r, outcomes, "case");
  if (r.failures == 0) {
    r.detail = "eps=1/4: stay 0 >= deviate -1/4, probability RAT fails; eps=1/10: deviate 1/2 > 0";
  }
  return r;
}

CriterionResult order_independence_criterion(const AcceptanceOptions& o) {
  CriterionResult r;
  auto outcomes = run_trials(o.game_trials, o.execution, [&](std::size_t t) -> std::string {
    const Game g = acceptance_game(o.seed, t);
    const StrategyFamily fixpoint = nsd_fixpoint(g).final_family();
    for (std::size_t q = 0; q < o.sequences_per_game; ++q) {
      const auto seq = random_terminating_sequence(g, derive_seed(o.seed, kSequenceStream,
                                                                  t * o.sequences_per_game + q));
      const SequenceCheck check = validate_deletion_sequence(g, seq);
      if (!check.valid) return "sequence " + std::to_string(q) + " invalid: " + check.violation;
      if (!(seq.back() == fixpoint)) {
        return "sequence " + std::to_string(q) + " ends at " + family_str(g, seq.back()) + ", fixpoint " +
               family_str(g, fixpoint);
      }
    }
    return {};
  });
  tally(r, outcomes, "game");
  if (r.failures == 0) {
    r.detail = std::to_string(o.game_trials * o.sequences_per_game) + " sequences all reach the fixpoint";
  }
  return r;
}

CriterionResult restricted_pool_criterion(const AcceptanceOptions& o) {
  CriterionResult r;
  auto outcomes = run_trials(o.game_trials, o.execution, [&](std::size_t t) -> std::string {
    return restricted_dominators_agree(acceptance_game(o.seed, t)) ? "" : "round sequences differ";
  });
  tally(r, outcomes, "game");
  if (r.failures == 0) r.detail = "restricted and full dominator pools agree round by round";
  return r;
}

// Criteria 5 and 6 share the rationalizability computation.
std::pair<CriterionResult, CriterionResult> rationalizability_criteria(const AcceptanceOptions& o) {
  struct Outcome {
    std::string equivalence;
    std::string witness;
    std::size_t witnesses = 0;
    std::size_t max_stable_level = 0;
  };
  std::vector<Outcome> outcomes(o.rationalizable_trials);
  run_trials(o.rationalizable_trials, o.execution, [&](std::size_t t) -> std::string {
    Outcome& out = outcomes[t];
    try {
      const Game g = acceptance_game(o.seed, t);
      const StrategyFamily fixpoint = nsd_fixpoint(g).final_family();
      const std::vector<Profile> expected = product(fixpoint);
      const RationalizableProfiles rp = minimax_rationalizable_profiles(g);
      if (rp.profiles != expected) {
        out.equivalence = "rationalizable set has " + std::to_string(rp.profiles.size()) +
                          " profiles, NSD product " + family_str(g, fixpoint) + " has " +
                          std::to_string(expected.size());
      }
      for (const Profile& p : expected) {
        auto z = rp.witnesses.find(p);
        if (z == rp.witnesses.end()) {
          out.witness = "no witness sets for " + profile_str(g, p);
          break;
        }
        const CanonicalWitness w = build_canonical_witness(g, z->second, p);
        const WitnessReport report = verify_ccbr_witness(w, p);
        ++out.witnesses;
        out.max_stable_level = std::max(out.max_stable_level, report.stable_level);
        if (!report.pass()) {
          out.witness = "witness for " + profile_str(g, p) + " fails: " +
                        (report.problems.empty() ? std::string("unknown") : report.problems.front());
          break;
        }
      }
    } catch (const std::exception& e) {
      if (out.equivalence.empty()) out.equivalence = std::string("exception: ") + e.what();
      if (out.witness.empty()) out.witness = std::string("exception: ") + e.what();
    }
    return {};
  });

  CriterionResult equivalence;
  CriterionResult witness;
  std::vector<std::string> eq;
  std::vector<std::string> wi;
  std::size_t total_witnesses = 0;
  std::size_t max_level = 0;
  for (const auto& out : outcomes) {
    eq.push_back(out.equivalence);
    wi.push_back(out.witness);
    total_witnesses += out.witnesses;
    max_level = std::max(max_level, out.max_stable_level);
  }
  tally(equivalence, eq, "game");
  tally(witness, wi, "game");
  if (equivalence.failures == 0) equivalence.detail = "rationalizable profiles = NSD product on every game";
  if (witness.failures == 0) {
    witness.detail = std::to_string(total_witnesses) + " witnesses verified, max CCBR stable level " +
                     std::to_string(max_level);
  }
  return {equivalence, witness};
}

CriterionResult soundness_shadow_criterion(const AcceptanceOptions& o) {
  CriterionResult r;
  std::vector<char> strong(o.structure_trials, 0);
  auto outcomes = run_trials(o.structure_trials, o.execution, [&](std::size_t t) -> std::string {
    const CounterfactualStructure m = acceptance_structure(o.seed, t);
    const ValidationReport appropriate = validate_appropriate(m);
    if (!appropriate.ok()) return "generated structure not appropriate: " + appropriate.violations.front().message;
    strong[t] = validate_strongly_appropriate(m).ok() ? 1 : 0;
    const DeletionTrace trace = nsd_fixpoint(m.game());
    const LevelSets sr = srat_sets(m, o.shadow_depth);
    for (std::size_t k = 0; k <= o.shadow_depth; ++k) {
      for (std::size_t i = 0; i < m.player_count(); ++i) {
        for (StateIndex w : sr.sets[i][k].members()) {
          if (!trace.after(k).contains(i, m.strategy(w, i))) {
            return "state '" + m.id(w) + "' in SR_" + std::to_string(i + 1) + "^" + std::to_string(k) +
                   " plays " + m.game().strategy_name(i, m.strategy(w, i)) + " outside NSD^" +
                   std::to_string(k);
          }
        }
      }
    }
    return {};
  });
  tally(r, outcomes, "structure");
  if (r.failures == 0) {
    const auto strong_count = static_cast<std::size_t>(std::count(strong.begin(), strong.end(), 1));
    r.detail = "k<=" + std::to_string(o.shadow_depth) + "; " + std::to_string(strong_count) + "/" +
               std::to_string(o.structure_trials) + " random structures strongly appropriate";
  }
  return r;
}

// Runs `check` on every bundled structure and every random structure.
template <typename Check>
void over_structures(CriterionResult& r, const AcceptanceOptions& o, Check&& check) {
  std::vector<std::string> fixture_outcomes;
  for (const auto& [name, m] : bundled_structures()) {
    std::string problem;
    try {
      problem = check(m);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    fixture_outcomes.push_back(problem.empty() ? "" : name + ": " + problem);
  }
  tally(r, fixture_outcomes, "fixture");
  auto outcomes = run_trials(o.structure_trials, o.execution,
                             [&](std::size_t t) { return check(acceptance_structure(o.seed, t)); });
  tally(r, outcomes, "structure");
}

std::string common_belief_law(const CounterfactualStructure& m) {
  for (EvalMode mode : {EvalMode::kCounterfactual, EvalMode::kProbability}) {
    const ModelChecker checker(m, mode);
    const char* label = mode == EvalMode::kCounterfactual ? "counterfactual" : "probability";
    const CommonBeliefResult cb = checker.common_belief(checker.rat_all(), false);
    if (!cb.agree()) return std::string(label) + ": CB routes disagree";
    const std::size_t bound = default_level_bound(m);
    const WratResult wrat = checker.wrat_sets(bound);
    if (!wrat.forms_agree) return std::string(label) + ": WRAT forms disagree";
    StateSet all_levels = m.all_states();
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      for (std::size_t k = 0; k <= bound; ++k) all_levels &= wrat.levels.sets[i][k];
    }
    if (!(all_levels == cb.by_iteration)) {
      return std::string(label) + ": [[CB(RAT)]] has " + std::to_string(cb.by_iteration.size()) +
             " states, WRAT intersection has " + std::to_string(all_levels.size());
    }
  }
  return {};
}

std::string structural_laws(const CounterfactualStructure& m) {
  const ModelChecker checker(m);
  for (StateIndex w = 0; w < m.state_count(); ++w) {
    for (std::size_t i = 0; i < m.player_count(); ++i) {
      const Distribution& belief = m.belief(i, w);
      const std::string where = "at '" + m.id(w) + "', player " + std::to_string(i + 1);
      if (!rat_equivalence_check(m, w, i)) return "RAT forms differ " + where;
      for (std::size_t s = 0; s < m.game().strategy_count(i); ++s) {
        const Distribution& cf = checker.cf_belief(w, i, s);
        if (cf.total() != Rational(1)) return "counterfactual mass " + cf.total().str() + " " + where;
        std::vector<StateIndex> image;
        for (StateIndex v : belief.support()) image.push_back(m.closest(v, i, s));
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        if (cf.support() != image) return "support law fails " + where;
        if (cf.mass(m.playing(i, s)) != Rational(1)) return "switch-knowledge fails " + where;
        for (StateIndex v = 0; v < m.state_count(); ++v) {
          if (m.belief(i, v) == belief && !(checker.cf_belief(v, i, s) == cf)) {
            return "belief-determinism fails " + where + " vs '" + m.id(v) + "'";
          }
        }
      }
    }
  }
  return {};
}

CriterionResult validity_criterion(const AcceptanceOptions& o) {
  CriterionResult r;
  over_structures(r, o, [](const CounterfactualStructure& m) -> std::string {
    const ValidityReport report = validity_spotchecks(m);
    return report.ok() ? "" : report.counterexamples.front();
  });
  std::string problem;
  const auto naive = pd_naive_structure(1, 5);
  const StateSet witness =
      satisfying_states(naive.structure, EvalMode::kCounterfactual, parse_formula("SRAT_1^1 & !B*_1 SRAT_1^1"));
  if (!witness.contains(naive.designated)) problem = "pd_naive: SRAT_1^1 & !B*_1 SRAT_1^1 fails at w0";
  tally(r, {problem}, "pd_naive");
  if (r.failures == 0) r.detail = "no counterexamples; pd_naive separates SRAT_1^1 from B*_1 SRAT_1^1 at w0";
  return r;
}

CriterionResult epsilon_criterion(const AcceptanceOptions& o) {
  CriterionResult r;
  const Rational tpd = translucency_epsilon(translucent_pd_structure(1, 5, Rational(1, 4)).structure);
  tally(r, {tpd == Rational(1, 4) ? "" : "translucent_pd(1,5,1/4) reports " + tpd.str()}, "bundled");

  std::size_t unilateral = 0;
  auto zero_if_unilateral = [&](const CounterfactualStructure& m) -> std::string {
    if (!respects_unilateral_deviations(m)) return {};
    const Rational eps = translucency_epsilon(m);
    return eps.is_zero() ? "" : "respects unilateral deviations but reports " + eps.str();
  };
  over_structures(r, o, zero_if_unilateral);
  for (const auto& [_, m] : bundled_structures()) unilateral += respects_unilateral_deviations(m) ? 1 : 0;
  for (std::size_t t = 0; t < o.structure_trials; ++t) {
    unilateral += respects_unilateral_deviations(acceptance_structure(o.seed, t)) ? 1 : 0;
  }

  auto outcomes = run_trials(o.unilateral_trials, o.execution, [&](std::size_t t) -> std::string {
    const Game g = acceptance_game(derive_seed(o.seed, kUnilateralStream, t), 0);
    const auto m = random_unilateral_structure(std::make_shared<const Game>(g),
                                               derive_seed(o.seed, kUnilateralStream, t));
    if (!respects_unilateral_deviations(m)) return "generated structure does not respect unilateral deviations";
    return zero_if_unilateral(m);
  });
  tally(r, outcomes, "unilateral");
  unilateral += o.unilateral_trials;
  if (r.failures == 0) {
    r.detail = "translucent_pd(1,5,1/4) reports 1/4; " + std::to_string(unilateral) +
               " unilateral structures report 0";
  }
  return r;
}

const char* title(int id) {
  switch (id) {
    case 1: return "ladder game deletion rounds";
    case 2: return "translucent prisoner's dilemma";
    case 3: return "order independence of deletion";
    case 4: return "restricted dominator pool";
    case 5: return "rationalizable = NSD^inf";
    case 6: return "canonical CCBR witnesses";
    case 7: return "SRAT soundness vs NSD^k";
    case 8: return "CB(RAT) = WRAT intersection";
    case 9: return "validity suite";
    case 10: return "counterfactual structural laws";
    case 11: return "epsilon-translucency";
    default: return "unknown";
  }
}

}  // namespace

Game acceptance_game(std::uint64_t seed, std::size_t trial) {
  return random_game(derive_seed(seed, kGameStream, trial));
}

CounterfactualStructure acceptance_structure(std::uint64_t seed, std::size_t trial) {
  const std::uint64_t game_seed = derive_seed(seed, kStructureGameStream, trial);
  auto game = std::make_shared<const Game>(random_game(game_seed));
  std::size_t widest = 2;
  for (std::size_t i = 0; i < game->player_count(); ++i) widest = std::max(widest, game->strategy_count(i));
  std::mt19937_64 rng(game_seed);
  const std::size_t states = widest + static_cast<std::size_t>(rng() % (6 - widest + 1));
  return random_appropriate_structure(std::move(game), derive_seed(seed, kStructureStream, trial), states);
}

std::vector<std::pair<std::string, CounterfactualStructure>> bundled_structures() {
  std::vector<std::pair<std::string, CounterfactualStructure>> out;
  out.emplace_back("translucent_pd(1,5,1/4)", translucent_pd_structure(1, 5, Rational(1, 4)).structure);
  out.emplace_back("translucent_pd(1,5,1/10)", translucent_pd_structure(1, 5, Rational(1, 10)).structure);
  out.emplace_back("pd_naive(1,5)", pd_naive_structure(1, 5).structure);
  const Game ladder = ladder_game(3, Rational(1, 2));
  out.emplace_back("witness ladder(3,1/2) at (3,3)",
                   build_canonical_witness(ladder, WitnessSets{{{2}, {2}}}, {2, 2}).structure);
  const Game pd = translucent_pd(1, 5);
  out.emplace_back("witness pd(1,5) at (C,C)",
                   build_canonical_witness(pd, WitnessSets{{{0, 1}, {0, 1}}}, {0, 0}).structure);
  return out;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  CriterionResult r;
  switch (id) {
    case 1: r = ladder_criterion(); break;
    case 2: r = translucent_pd_criterion(); break;
    case 3: r = order_independence_criterion(options); break;
    case 4: r = restricted_pool_criterion(options); break;
    case 5: r = rationalizability_criteria(options).first; break;
    case 6: r = rationalizability_criteria(options).second; break;
    case 7: r = soundness_shadow_criterion(options); break;
    case 8: over_structures(r, options, common_belief_law); break;
    case 9: r = validity_criterion(options); break;
    case 10: over_structures(r, options, structural_laws); break;
    case 11: r = epsilon_criterion(options); break;
    default: throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
  }
  r.id = id;
  r.title = title(id);
  r.pass = r.failures == 0;
  if (r.pass && r.detail.empty()) r.detail = std::to_string(r.trials) + " structures checked";
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (id == 5) {
      auto [equivalence, witness] = rationalizability_criteria(options);
      for (auto* r : {&equivalence, &witness}) {
        r->id = static_cast<int>(out.size()) + 1;
        r->title = title(r->id);
        r->pass = r->failures == 0;
        out.push_back(*r);
      }
      ++id;
      continue;
    }
    out.push_back(run_criterion(id, options));
  }
  return out;
}

}  // namespace translucent
