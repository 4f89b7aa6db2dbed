#include "translucent/logic.hpp"

#include <deque>
#include <stdexcept>

namespace translucent {

namespace {

Rational payoff_against(const CounterfactualStructure& m, std::size_t player, std::size_t strategy,
                        StateIndex opponents_from) {
  Profile profile = m.profile(opponents_from);
  profile[player] = strategy;
  return m.game().payoff(profile, player);
}

Rational expected_against(const CounterfactualStructure& m, const Distribution& belief,
                          std::size_t player, std::size_t strategy) {
  Rational sum;
  for (const auto& [state, mass] : belief.entries()) {
    sum += mass * payoff_against(m, player, strategy, state);
  }
  return sum;
}

}  // namespace

ModelChecker::ModelChecker(const CounterfactualStructure& m, EvalMode mode) : m_(m), mode_(mode) {
  const std::size_t n = m.player_count();
  cf_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cf_[i].resize(m.state_count());
    for (StateIndex w = 0; w < m.state_count(); ++w) {
      for (std::size_t s = 0; s < m.game().strategy_count(i); ++s) {
        cf_[i][w].push_back(counterfactual_belief(m, w, i, s));
      }
    }
  }
  rat_.assign(n, StateSet(m.state_count()));
  for (std::size_t i = 0; i < n; ++i) {
    for (StateIndex w = 0; w < m.state_count(); ++w) {
      RatPayoffs p = rat_payoffs(w, i);
      bool rational = true;
      for (const auto& dev : p.deviation) rational = rational && p.stay >= dev;
      if (rational) rat_[i].insert(w);
    }
  }
}

RatPayoffs ModelChecker::rat_payoffs(StateIndex state, std::size_t player) const {
  RatPayoffs out;
  const auto& belief = m_.belief(player, state);
  out.stay = expected_against(m_, belief, player, m_.strategy(state, player));
  for (std::size_t s = 0; s < m_.game().strategy_count(player); ++s) {
    if (mode_ == EvalMode::kCounterfactual) {
      out.deviation.push_back(expected_against(m_, cf_[player][state][s], player, s));
    } else {
      // Classical best response: the deviation faces the same induced belief.
      OpponentBelief induced;
      for (const auto& [w, mass] : belief.entries()) induced.add(without_player(m_.profile(w), player), mass);
      out.deviation.push_back(expected_utility(m_.game(), player, s, induced));
    }
  }
  return out;
}

StateSet ModelChecker::rat_all() const {
  StateSet out = m_.all_states();
  for (const auto& r : rat_) out &= r;
  return out;
}

StateSet ModelChecker::believes(std::size_t player, const StateSet& event) const {
  StateSet out(m_.state_count());
  for (StateIndex w = 0; w < m_.state_count(); ++w) {
    if (m_.belief(player, w).mass(event) == Rational(1)) out.insert(w);
  }
  return out;
}

StateSet ModelChecker::cf_believes(std::size_t player, const StateSet& event) const {
  StateSet out(m_.state_count());
  for (StateIndex w = 0; w < m_.state_count(); ++w) {
    bool all = true;
    for (const auto& d : cf_[player][w]) {
      if (d.mass(event) != Rational(1)) {
        all = false;
        break;
      }
    }
    if (all) out.insert(w);
  }
  return out;
}

StateSet ModelChecker::everyone_believes(const StateSet& event, bool counterfactual) const {
  StateSet out = m_.all_states();
  for (std::size_t i = 0; i < m_.player_count(); ++i) {
    out &= counterfactual ? cf_believes(i, event) : believes(i, event);
  }
  return out;
}

CommonBeliefResult ModelChecker::common_belief(const StateSet& event, bool counterfactual) const {
  CommonBeliefResult result;

  // Running intersection X_k of EB^1..EB^k. Since EB distributes over
  // intersections, X_{k+1} = EB(A) ∩ EB(X_k), a function of X_k alone, so
  // the first repeat is the fixpoint.
  const StateSet first = everyone_believes(event, counterfactual);
  StateSet running = first;
  while (true) {
    StateSet next = first & everyone_believes(running, counterfactual);
    if (next == running) break;
    running = std::move(next);
  }
  result.by_iteration = running;

  // Independent route: every state reachable in one or more support steps
  // must lie in the event.
  std::vector<std::vector<StateIndex>> successors(m_.state_count());
  for (StateIndex w = 0; w < m_.state_count(); ++w) {
    StateSet next(m_.state_count());
    for (std::size_t i = 0; i < m_.player_count(); ++i) {
      if (counterfactual) {
        for (const auto& d : cf_[i][w]) {
          for (auto s : d.support()) next.insert(s);
        }
      } else {
        for (auto s : m_.belief(i, w).support()) next.insert(s);
      }
    }
    successors[w] = next.members();
  }
  result.by_reachability = StateSet(m_.state_count());
  for (StateIndex w = 0; w < m_.state_count(); ++w) {
    StateSet seen(m_.state_count());
    std::deque<StateIndex> frontier(successors[w].begin(), successors[w].end());
    for (auto s : successors[w]) seen.insert(s);
    bool inside = true;
    while (!frontier.empty() && inside) {
      StateIndex s = frontier.front();
      frontier.pop_front();
      if (!event.contains(s)) inside = false;
      for (auto t : successors[s]) {
        if (!seen.contains(t)) {
          seen.insert(t);
          frontier.push_back(t);
        }
      }
    }
    if (inside) result.by_reachability.insert(w);
  }
  return result;
}

LevelSets ModelChecker::srat_sets(std::size_t k_max) const {
  require_counterfactual("SRAT");
  const std::size_t n = m_.player_count();
  LevelSets out;
  out.sets.assign(n, {m_.all_states()});
  for (std::size_t k = 0; k < k_max; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      StateSet others = m_.all_states();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) others &= out.sets[j][k];
      }
      out.sets[i].push_back(rat_[i] & cf_believes(i, others));
    }
  }
  return out;
}

WratResult ModelChecker::wrat_sets(std::size_t k_max) const {
  const std::size_t n = m_.player_count();
  WratResult out;
  out.levels.sets.assign(n, {m_.all_states()});
  for (std::size_t k = 0; k < k_max; ++k) {
    StateSet everyone = m_.all_states();
    for (std::size_t j = 0; j < n; ++j) everyone &= out.levels.sets[j][k];
    std::vector<StateSet> next;
    for (std::size_t i = 0; i < n; ++i) {
      StateSet others = m_.all_states();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) others &= out.levels.sets[j][k];
      }
      StateSet level = rat_[i] & believes(i, others);
      if (!(level == (rat_[i] & believes(i, everyone)))) out.forms_agree = false;
      next.push_back(std::move(level));
    }
    for (std::size_t i = 0; i < n; ++i) out.levels.sets[i].push_back(std::move(next[i]));
  }
  return out;
}

CcbrResult ModelChecker::ccbr() const {
  require_counterfactual("CCBR");
  const std::size_t n = m_.player_count();
  // Each level is a function of the previous one and the sequence shrinks,
  // so it stabilizes within n·|Ω| + 1 levels.
  const std::size_t cap = n * m_.state_count() + 2;
  CcbrResult out;
  std::size_t k_max = 1;
  while (true) {
    out.levels = srat_sets(k_max);
    bool stable = true;
    for (std::size_t i = 0; i < n; ++i) {
      stable = stable && out.levels.sets[i][k_max] == out.levels.sets[i][k_max - 1];
    }
    if (stable) break;
    if (++k_max > cap) throw std::logic_error("SRAT levels failed to stabilize");
  }
  out.stable_level = k_max - 1;
  out.states = m_.all_states();
  for (std::size_t i = 0; i < n; ++i) out.states &= out.levels.sets[i][k_max];
  return out;
}

void ModelChecker::require_counterfactual(const char* op) const {
  if (mode_ != EvalMode::kCounterfactual) {
    throw InputError(std::string(op) + " is only defined for counterfactual evaluation");
  }
}

StateSet ModelChecker::satisfying(const Formula& f) const {
  validate_formula(f, m_.game());
  switch (f.kind()) {
    case FormulaKind::kTrue:
      return m_.all_states();
    case FormulaKind::kPlay:
      return m_.playing(f.player(), m_.game().strategy_index(f.player(), f.strategy()));
    case FormulaKind::kRat:
      return rat_[f.player()];
    case FormulaKind::kRatAll:
      return rat_all();
    case FormulaKind::kNot:
      return satisfying(f.operand()).complement();
    case FormulaKind::kAnd:
      return satisfying(f.lhs()) & satisfying(f.rhs());
    case FormulaKind::kBelief:
      return believes(f.player(), satisfying(f.operand()));
    case FormulaKind::kCfBelief:
      require_counterfactual("B*");
      return cf_believes(f.player(), satisfying(f.operand()));
    case FormulaKind::kCommonBelief:
    case FormulaKind::kCommonCfBelief: {
      const bool cf = f.kind() == FormulaKind::kCommonCfBelief;
      if (cf) require_counterfactual("CB*");
      auto result = common_belief(satisfying(f.operand()), cf);
      if (!result.agree()) throw std::logic_error("common-belief routes disagree");
      return result.by_iteration;
    }
    case FormulaKind::kSrat:
      return srat_sets(f.level()).sets[f.player()][f.level()];
    case FormulaKind::kWrat:
      return wrat_sets(f.level()).levels.sets[f.player()][f.level()];
    case FormulaKind::kCcbr:
      return ccbr().states;
  }
  throw std::logic_error("unhandled formula kind");
}

StateSet satisfying_states(const CounterfactualStructure& m, EvalMode mode, const Formula& formula) {
  return ModelChecker(m, mode).satisfying(formula);
}

bool rat_holds(const CounterfactualStructure& m, EvalMode mode, StateIndex state, std::size_t player) {
  return ModelChecker(m, mode).rat(player).contains(state);
}

bool rat_equivalence_check(const CounterfactualStructure& m, StateIndex state, std::size_t player) {
  const auto& belief = m.belief(player, state);
  for (std::size_t s = 0; s < m.game().strategy_count(player); ++s) {
    Rational pushed = expected_against(m, counterfactual_belief(m, state, player, s), player, s);
    Rational direct;
    for (const auto& [w, mass] : belief.entries()) {
      direct += mass * payoff_against(m, player, s, m.closest(w, player, s));
    }
    if (pushed != direct) return false;
  }
  return true;
}

LevelSets srat_sets(const CounterfactualStructure& m, std::size_t k_max) {
  return ModelChecker(m).srat_sets(k_max);
}

WratResult wrat_sets(const CounterfactualStructure& m, std::size_t k_max, EvalMode mode) {
  return ModelChecker(m, mode).wrat_sets(k_max);
}

CcbrResult ccbr_states(const CounterfactualStructure& m) { return ModelChecker(m).ccbr(); }

CommonBeliefResult cb_states(const CounterfactualStructure& m, const StateSet& event, bool counterfactual) {
  return ModelChecker(m).common_belief(event, counterfactual);
}

std::size_t default_level_bound(const CounterfactualStructure& m) { return m.state_count() + 1; }

ValidityReport validity_spotchecks(const CounterfactualStructure& m) {
  const ModelChecker checker(m);
  const Game& g = m.game();
  const std::size_t n = m.player_count();

  std::vector<Formula> atoms{Formula::truth(), Formula::rat_all()};
  for (std::size_t j = 0; j < n; ++j) {
    atoms.push_back(Formula::rat(j));
    for (const auto& name : g.strategies(j)) atoms.push_back(Formula::play(j, name));
  }
  std::vector<Formula> schema = atoms;
  for (const auto& a : atoms) {
    schema.push_back(Formula::negation(a));
    for (std::size_t j = 0; j < n; ++j) {
      schema.push_back(Formula::belief(j, a));
      schema.push_back(Formula::cf_belief(j, a));
      schema.push_back(Formula::negation(Formula::cf_belief(j, a)));
    }
  }
  for (std::size_t a = 0; a + 1 < atoms.size(); ++a) {
    schema.push_back(Formula::conjunction(atoms[a], atoms[a + 1]));
    schema.push_back(Formula::conjunction(atoms[a], Formula::negation(atoms[a + 1])));
  }

  ValidityReport report;
  for (const auto& phi : schema) {
    const StateSet event = checker.satisfying(phi);
    for (std::size_t i = 0; i < n; ++i) {
      const StateSet premise = checker.cf_believes(i, event);
      const StateSet conclusion = checker.believes(i, premise);
      ++report.implications_checked;
      for (StateIndex w : premise.members()) {
        if (!conclusion.contains(w)) {
          report.counterexamples.push_back("B*_" + std::to_string(i + 1) + " φ => B_" +
                                           std::to_string(i + 1) + " B*_" + std::to_string(i + 1) +
                                           " φ fails at '" + m.id(w) + "' for φ = " + phi.str());
        }
      }
    }
  }

  const std::size_t bound = default_level_bound(m);
  const LevelSets levels = checker.srat_sets(bound);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < bound; ++k) {
      ++report.implications_checked;
      const StateSet& upper = levels.sets[i][k + 1];
      for (StateIndex w : upper.members()) {
        if (!levels.sets[i][k].contains(w)) {
          report.counterexamples.push_back("SRAT_" + std::to_string(i + 1) + "^" +
                                           std::to_string(k + 1) + " => SRAT_" +
                                           std::to_string(i + 1) + "^" + std::to_string(k) +
                                           " fails at '" + m.id(w) + "'");
        }
      }
    }
  }
  return report;
}

}  // namespace translucent
