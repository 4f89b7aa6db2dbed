#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "translucent/formula.hpp"
#include "translucent/structure.hpp"

namespace translucent {

enum class EvalMode {
  kProbability,     // closest-state map ignored; counterfactual operators rejected
  kCounterfactual,
};

/// Expected payoff of staying put and of each deviation (indexed by strategy).
struct RatPayoffs {
  Rational stay;
  std::vector<Rational> deviation;
};

/// Per-player, per-level satisfaction sets: sets[player][k].
struct LevelSets {
  std::vector<std::vector<StateSet>> sets;
};

struct WratResult {
  LevelSets levels;
  /// The j != i recursion agrees with the all-j recursion at every level.
  bool forms_agree = true;
};

struct CcbrResult {
  StateSet states;
  /// Smallest k with SR^{k+1} = SR^k for every player.
  std::size_t stable_level = 0;
  LevelSets levels;
};

struct CommonBeliefResult {
  StateSet by_iteration;
  StateSet by_reachability;
  bool agree() const { return by_iteration == by_reachability; }
};

/// Model checker over one structure. Counterfactual beliefs and RAT sets are
/// computed once at construction; the structure must outlive the checker.
class ModelChecker {
 public:
  explicit ModelChecker(const CounterfactualStructure& m, EvalMode mode = EvalMode::kCounterfactual);

  const CounterfactualStructure& structure() const { return m_; }
  EvalMode mode() const { return mode_; }

  /// [[φ]]. Throws InputError for operators the mode does not support and
  /// for players or strategies the game does not have.
  StateSet satisfying(const Formula& formula) const;

  const StateSet& rat(std::size_t player) const { return rat_[player]; }
  StateSet rat_all() const;
  RatPayoffs rat_payoffs(StateIndex state, std::size_t player) const;

  const Distribution& cf_belief(StateIndex state, std::size_t player, std::size_t strategy) const {
    return cf_[player][state][strategy];
  }

  /// B_i: probability 1 on the event.
  StateSet believes(std::size_t player, const StateSet& event) const;
  /// B*_i: probability 1 on the event under every counterfactual belief.
  StateSet cf_believes(std::size_t player, const StateSet& event) const;
  /// EB (or EB* when counterfactual): conjunction over all players.
  StateSet everyone_believes(const StateSet& event, bool counterfactual) const;
  CommonBeliefResult common_belief(const StateSet& event, bool counterfactual) const;

  LevelSets srat_sets(std::size_t k_max) const;
  WratResult wrat_sets(std::size_t k_max) const;
  CcbrResult ccbr() const;

 private:
  void require_counterfactual(const char* op) const;

  const CounterfactualStructure& m_;
  EvalMode mode_;
  std::vector<std::vector<std::vector<Distribution>>> cf_;  // [player][state][strategy]
  std::vector<StateSet> rat_;
};

StateSet satisfying_states(const CounterfactualStructure& m, EvalMode mode, const Formula& formula);
bool rat_holds(const CounterfactualStructure& m, EvalMode mode, StateIndex state, std::size_t player);

/// Evaluates every deviation payoff through the counterfactual belief and
/// through the closest-state map directly; true iff they agree exactly.
bool rat_equivalence_check(const CounterfactualStructure& m, StateIndex state, std::size_t player);

LevelSets srat_sets(const CounterfactualStructure& m, std::size_t k_max);
WratResult wrat_sets(const CounterfactualStructure& m, std::size_t k_max,
                     EvalMode mode = EvalMode::kCounterfactual);
CcbrResult ccbr_states(const CounterfactualStructure& m);
CommonBeliefResult cb_states(const CounterfactualStructure& m, const StateSet& event, bool counterfactual);

/// Fixpoint bound used where the number of levels is not given: |Ω| + 1.
std::size_t default_level_bound(const CounterfactualStructure& m);

struct ValidityReport {
  std::size_t implications_checked = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

/// Checks B*_i φ ⇒ B_i B*_i φ over a fixed family of small formulas, and
/// SRAT_i^{k+1} ⇒ SRAT_i^k up to the default level bound, at every state.
ValidityReport validity_spotchecks(const CounterfactualStructure& m);

}  // namespace translucent
