#include "banditlab/mcts.hpp"

#include <limits>
#include <memory>
#include <stdexcept>

namespace banditlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  explicit Node(DerivationState s) : state(std::move(s)) {}

  DerivationState state;
  std::vector<int> legal;  // rule ids, filled on first visit to an inner node
  std::vector<std::unique_ptr<Node>> children;  // aligned with legal

  // Rewards back-propagated through this node (Welford).
  std::int64_t visits = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add_reward(double reward) {
    ++visits;
    const double delta = reward - mean;
    mean += delta / static_cast<double>(visits);
    m2 += delta * (reward - mean);
  }

  ArmSnapshot snapshot() const {
    return {visits, mean, visits >= 2 ? m2 / static_cast<double>(visits - 1) : 0.0};
  }
};

}  // namespace

MctsResult mcts_search(const Grammar& grammar, const PropertyModel& model,
                       const PolicyConfig& policy, int trials, int depth_cap,
                       std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("mcts_search: trials must be >= 1");
  if (depth_cap < 1) throw std::invalid_argument("mcts_search: depth cap must be >= 1");
  policy.validate();

  Rng rng(seed);
  Node root(DerivationState::start());

  MctsResult result;
  result.best_value = -kInf;
  result.r_max_trajectory.reserve(static_cast<std::size_t>(trials));
  result.best_smiles_trajectory.reserve(static_cast<std::size_t>(trials));

  std::vector<Node*> path;
  std::vector<double> index;
  for (int trial = 0; trial < trials; ++trial) {
    path.clear();
    path.push_back(&root);

    // Selection until a terminal node or a fresh expansion.
    DerivationState molecule = root.state;
    Node* node = &root;
    while (!node->state.complete()) {
      if (node->legal.empty()) {
        node->legal = legal_productions(grammar, node->state, depth_cap);
        node->children.resize(node->legal.size());
      }
      index.resize(node->legal.size());
      const double round = static_cast<double>(node->visits + 1);
      for (std::size_t i = 0; i < node->legal.size(); ++i) {
        const Node* child = node->children[i].get();
        index[i] = policy_index(policy, child ? child->snapshot() : ArmSnapshot{},
                                round, result.best_value);
      }
      const std::size_t pick = pick_argmax(index, rng);
      if (!node->children[pick]) {
        // Expansion: materialize the child, then complete it by rollout.
        node->children[pick] = std::make_unique<Node>(
            apply_production(node->state, grammar, node->legal[pick]));
        Node* child = node->children[pick].get();
        path.push_back(child);
        molecule = random_rollout(grammar, child->state, depth_cap, rng);
        node = nullptr;
        break;
      }
      node = node->children[pick].get();
      path.push_back(node);
    }
    if (node != nullptr) molecule = node->state;

    double reward = kInvalidMoleculeReward;
    bool valid = false;
    try {
      const MolecularGraph graph = build_graph(molecule);
      reward = model.estimate_graph(graph);
      valid = true;
    } catch (const std::domain_error&) {
      // Unscorable molecule: penalized, kept out of r_max.
    }

    for (Node* n : path) n->add_reward(reward);
    if (valid && reward > result.best_value) {
      result.best_value = reward;
      result.best_smiles = render_smiles(molecule);
    }
    result.r_max_trajectory.push_back(result.best_value);
    result.best_smiles_trajectory.push_back(result.best_smiles);
  }
  return result;
}

}  // namespace banditlab
