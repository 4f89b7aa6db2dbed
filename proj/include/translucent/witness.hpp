#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "translucent/rationalizability.hpp"
#include "translucent/structure.hpp"

namespace translucent {

/// Strongly appropriate structure in which a minimax rationalizable profile
/// is played at `designated` under common counterfactual belief of
/// rationality.
///
/// For each player i:
///   belief state  B<i,σ> (σ ∈ Z_i): i plays σ, the others play the profile
///                 in Z_-i that is best for i against σ;
///   punishment    P<i,σ> (σ ∈ Σ_i): i plays σ, the others play the profile
///                 in Z_-i that is worst for i against σ.
/// Player j's belief at a state is a point mass on B<j, s_j> when s_j ∈ Z_j
/// and on P<j, s_j> otherwise, except at j's own punishment states, where j
/// believes it is exactly there. Every switch by j to σ' ≠ s_j lands on
/// P<j,σ'>. Ties among best/worst profiles go to the lexicographically
/// smallest opponent profile.
struct CanonicalWitness {
  CounterfactualStructure structure;
  StateIndex designated;
  std::map<std::pair<std::size_t, std::size_t>, StateIndex> belief_states;
  std::map<std::pair<std::size_t, std::size_t>, StateIndex> punishment_states;
};

/// Throws InputError when check_witness_sets rejects (profile, z).
CanonicalWitness build_canonical_witness(const Game& game, const WitnessSets& z, const Profile& profile);

/// Same construction without the precondition check; used to probe what
/// happens for profiles that are not minimax rationalizable.
CanonicalWitness build_canonical_witness_unchecked(const Game& game, const WitnessSets& z,
                                                   const Profile& profile);

struct WitnessReport {
  bool appropriate = false;
  bool strongly_appropriate = false;
  bool plays_profile = false;
  bool designated_in_ccbr = false;
  std::size_t stable_level = 0;
  std::vector<std::string> problems;

  bool pass() const { return appropriate && strongly_appropriate && plays_profile && designated_in_ccbr; }
};

WitnessReport verify_ccbr_witness(const CanonicalWitness& witness, const Profile& profile);

}  // namespace translucent
