#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "translucent/game.hpp"

namespace translucent {

// Minimax rationalizability by brute-force enumeration of witness sets.
// Deliberately independent of the iterated-deletion code in domination.hpp
// so that each can serve as an oracle for the other.

/// Per-player witness subsets Z_i, each sorted and nonempty.
struct WitnessSets {
  std::vector<std::vector<std::size_t>> sets;

  std::size_t total_size() const;
  friend bool operator==(const WitnessSets&, const WitnessSets&) = default;
  friend auto operator<=>(const WitnessSets&, const WitnessSets&) = default;
};

struct WitnessCheck {
  bool valid = true;
  std::string violation;
};

/// The witness condition on its own: for every player i, every σ' in Z_i and
/// every σ'' in Σ_i, max over Z_-i of u_i(σ', ·) >= min over Z_-i of u_i(σ'', ·).
WitnessCheck satisfies_witness_condition(const Game& game, const WitnessSets& z);

/// Witness condition plus profile_i ∈ Z_i for all i.
WitnessCheck check_witness_sets(const Game& game, const Profile& profile, const WitnessSets& z);

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Execution { kSerial, kParallel };

inline constexpr std::size_t kDefaultStrategyBudget = 5;

/// Flags, per combination index, whether the encoded family of nonempty
/// subsets satisfies the witness condition. Combination c encodes one
/// nonempty bitmask per player in mixed radix (player 0 most significant).
std::vector<char> valid_witness_combinations(const Game& game, Execution execution,
                                             std::size_t budget = kDefaultStrategyBudget);

/// Minimal witness (total size, then lexicographic) for `profile`, if any.
std::optional<WitnessSets> find_witness_sets(const Game& game, const Profile& profile,
                                             std::size_t budget = kDefaultStrategyBudget,
                                             Execution execution = Execution::kSerial);

struct RationalizableProfiles {
  /// Sorted by the game's flat profile order.
  std::vector<Profile> profiles;
  /// Minimal witness per rationalizable profile.
  std::map<Profile, WitnessSets> witnesses;
};

RationalizableProfiles minimax_rationalizable_profiles(const Game& game,
                                                       std::size_t budget = kDefaultStrategyBudget,
                                                       Execution execution = Execution::kSerial);

}  // namespace translucent
