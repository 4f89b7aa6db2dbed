#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "translucent/rationalizability.hpp"
#include "translucent/structure.hpp"

namespace translucent {

struct AcceptanceOptions {
  std::uint64_t seed = 2013;
  Execution execution = Execution::kParallel;
  std::size_t game_trials = 500;
  std::size_t sequences_per_game = 10;
  std::size_t rationalizable_trials = 300;
  std::size_t structure_trials = 500;
  std::size_t unilateral_trials = 200;
  std::size_t shadow_depth = 4;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// First failure in trial order, or a short summary on success.
  std::string detail;
};

inline constexpr int kCriterionCount = 11;

/// Runs a single acceptance criterion (1-based id). Trials are seeded from
/// options.seed and the trial index only, so results do not depend on the
/// execution mode or on thread scheduling.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// Appropriate structures shipped with the toolbox: both translucent PD
/// variants, pd_naive, and canonical witnesses for ladder(3, 1/2) and the PD.
std::vector<std::pair<std::string, CounterfactualStructure>> bundled_structures();

/// The random structure used by trial t of the structure criteria: a random
/// game and a random appropriate structure with 2 to 6 states.
CounterfactualStructure acceptance_structure(std::uint64_t seed, std::size_t trial);

/// The random game used by trial t of the game criteria.
Game acceptance_game(std::uint64_t seed, std::size_t trial);

}  // namespace translucent
