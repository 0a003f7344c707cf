#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "banditlab/grammar.hpp"
#include "banditlab/policies.hpp"
#include "banditlab/properties.hpp"

namespace banditlab {

// Reward assigned to derivations whose property cannot be evaluated (bare
// CH4 has no group row; some groups lack viscosity coefficients). Strictly
// below every reachable property value, and never folded into r_max.
inline constexpr double kInvalidMoleculeReward = -1.0;

struct MctsResult {
  std::string best_smiles;  // empty until the first valid molecule
  double best_value;        // -inf until the first valid molecule
  std::vector<double> r_max_trajectory;        // one entry per trial
  std::vector<std::string> best_smiles_trajectory;
};

// Tree search over the derivation game tree, one molecule generation per
// trial: descend by the policy index over per-child visit statistics (all
// children share the global running maximum), expand one new child at the
// frontier, finish with a uniform random rollout under the depth cap, score
// the molecule, and back-propagate the reward along the path. Deterministic
// given the seed.
MctsResult mcts_search(const Grammar& grammar, const PropertyModel& model,
                       const PolicyConfig& policy, int trials, int depth_cap,
                       std::uint64_t seed);

}  // namespace banditlab
