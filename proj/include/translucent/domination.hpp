#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "translucent/game.hpp"

namespace translucent {

/// Per-player subset of strategy indices. Each subset is kept sorted and
/// duplicate-free, so equality is set equality.
class StrategyFamily {
 public:
  StrategyFamily() = default;
  explicit StrategyFamily(std::vector<std::vector<std::size_t>> sets);

  static StrategyFamily full(const Game& game);

  std::size_t player_count() const { return sets_.size(); }
  const std::vector<std::size_t>& operator[](std::size_t player) const { return sets_[player]; }
  const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }

  bool contains(std::size_t player, std::size_t strategy) const;
  bool subset_of(const StrategyFamily& other) const;
  std::size_t total_size() const;

  /// Same family with `strategy` removed from `player`'s subset.
  StrategyFamily without(std::size_t player, std::size_t strategy) const;

  friend bool operator==(const StrategyFamily&, const StrategyFamily&) = default;

 private:
  std::vector<std::vector<std::size_t>> sets_;
};

/// Witness that `deleted` is minimax dominated by `dominator` for `player`:
/// dominator_min > dominated_max. For the classical strict-dominance
/// baseline, dominator_min holds the smallest pointwise payoff advantage and
/// dominated_max is 0.
struct DominationCertificate {
  std::size_t player = 0;
  std::size_t deleted = 0;
  std::size_t dominator = 0;
  Rational dominator_min;
  Rational dominated_max;
  std::size_t round = 0;

  friend bool operator==(const DominationCertificate&, const DominationCertificate&) = default;
};

struct DeletionTrace {
  /// rounds[0] is the starting family; consecutive entries strictly shrink.
  std::vector<StrategyFamily> rounds;
  std::vector<DominationCertificate> certificates;

  std::size_t round_count() const { return rounds.empty() ? 0 : rounds.size() - 1; }
  const StrategyFamily& final_family() const { return rounds.back(); }
  /// Family after k deletion rounds; stays at the final family past the end.
  const StrategyFamily& after(std::size_t k) const;
};

/// Minimax domination of `sigma` for `player` with respect to the
/// opponents' subsets in `family` (the player's own subset is ignored).
/// Dominators are tried in the order given by `dominator_pool`; the first
/// valid one is returned. Throws InputError on an empty opponent subset or
/// an unknown strategy.
std::optional<DominationCertificate> is_minimax_dominated(const Game& game, std::size_t player,
                                                          std::size_t sigma,
                                                          const StrategyFamily& family,
                                                          std::span<const std::size_t> dominator_pool);

enum class DominatorPool {
  kFull,       // every strategy of the player
  kSurviving,  // only the player's strategies in the current family
};

/// One maximal deletion round. Appends certificates (tagged with `round`)
/// when `certificates` is non-null.
StrategyFamily nsd_step(const Game& game, const StrategyFamily& family,
                        DominatorPool pool = DominatorPool::kFull,
                        std::vector<DominationCertificate>* certificates = nullptr,
                        std::size_t round = 0);

/// Iterated minimax deletion from the full family until nothing changes.
DeletionTrace nsd_fixpoint(const Game& game, DominatorPool pool = DominatorPool::kFull);

struct SequenceCheck {
  bool valid = true;
  std::size_t index = 0;  // element at which the first violation occurs
  std::string violation;
};

/// Checks that `sequence` is a terminating deletion sequence.
SequenceCheck validate_deletion_sequence(const Game& game, std::span<const StrategyFamily> sequence);

/// Terminating deletion sequence from the full family that deletes a random
/// nonempty subset of the currently dominated strategies each round.
std::vector<StrategyFamily> random_terminating_sequence(const Game& game, std::uint64_t seed);

/// Reruns the iteration with dominators restricted to the surviving set and
/// compares round by round against the full-pool iteration.
bool restricted_dominators_agree(const Game& game);

/// Classical iterated removal of strategies strictly dominated, pointwise
/// over the current opponent family, by a surviving strategy.
DeletionTrace iterated_strict_dominance(const Game& game);

}  // namespace translucent
