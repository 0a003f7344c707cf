#include "banditlab/grammar.hpp"

#include <algorithm>
#include <stdexcept>

namespace banditlab {

namespace {

bool is_slot(char c) { return c == 'S' || c == 'X' || c == 'Y'; }

int count_slots(const std::string& rhs) {
  return static_cast<int>(std::count_if(rhs.begin(), rhs.end(), is_slot));
}

std::size_t leftmost_slot_pos(const std::string& text) {
  const std::size_t pos = text.find_first_of("SXY");
  if (pos == std::string::npos) {
    throw std::domain_error("derivation is already complete");
  }
  return pos;
}

}  // namespace

Grammar::Grammar(std::vector<Production> rules) : rules_(std::move(rules)) {}

const Grammar& Grammar::acyclic_smiles() {
  static const Grammar grammar([] {
    const char* table[][2] = {
        {"S", "C(X)(Y)(Y)Y"},
        {"S", "C(=O)(Y)Y"},
        {"S", "C(Y)(Y)=C(Y)Y"},
        {"S", "C(=O)(OY)Y"},
        {"X", "[H]"},
        {"X", "F"},
        {"X", "Cl"},
        {"X", "Br"},
        {"X", "C(X)(Y)Y"},
        {"X", "OY"},
        {"X", "N(Y)Y"},
        {"X", "C(=O)Y"},
        {"X", "C(Y)=C(Y)Y"},
        {"X", "C(=O)OY"},
        {"Y", "[H]"},
        {"Y", "F"},
        {"Y", "Cl"},
        {"Y", "Br"},
        {"Y", "C(X)(Y)Y"},
        {"Y", "C(=O)Y"},
        {"Y", "C(Y)=C(Y)Y"},
        {"Y", "C(=O)OY"},
    };
    std::vector<Production> rules;
    for (const auto& [lhs, rhs] : table) {
      rules.push_back({lhs[0], rhs, count_slots(rhs)});
    }
    return rules;
  }());
  return grammar;
}

const Production& Grammar::rule(int id) const {
  if (id < 0 || id >= static_cast<int>(rules_.size())) {
    throw std::out_of_range("Grammar: bad rule id");
  }
  return rules_[static_cast<std::size_t>(id)];
}

std::vector<int> Grammar::rule_ids_for(char nonterminal) const {
  std::vector<int> ids;
  for (int id = 0; id < static_cast<int>(rules_.size()); ++id) {
    if (rules_[static_cast<std::size_t>(id)].lhs == nonterminal) ids.push_back(id);
  }
  return ids;
}

DerivationState DerivationState::start() { return DerivationState{}; }

char DerivationState::leftmost_nonterminal() const {
  return text_[leftmost_slot_pos(text_)];
}

int DerivationState::leftmost_depth() const {
  if (slot_depths_.empty()) throw std::domain_error("derivation is already complete");
  return slot_depths_.front();
}

std::vector<int> legal_productions(const Grammar& grammar,
                                   const DerivationState& state, int depth_cap) {
  if (state.complete()) {
    throw std::domain_error("legal_productions: derivation is already complete");
  }
  if (depth_cap < 1) {
    throw std::invalid_argument("legal_productions: depth cap must be >= 1");
  }
  const char nt = state.leftmost_nonterminal();
  const bool at_cap = state.leftmost_depth() >= depth_cap;
  std::vector<int> ids;
  for (const int id : grammar.rule_ids_for(nt)) {
    if (at_cap && grammar.rule(id).slot_count > 0) continue;
    ids.push_back(id);
  }
  if (ids.empty()) {
    throw std::domain_error("legal_productions: no terminal rule at depth cap");
  }
  return ids;
}

DerivationState apply_production(const DerivationState& state,
                                 const Grammar& grammar, int rule_id) {
  const Production& prod = grammar.rule(rule_id);
  const std::size_t pos = leftmost_slot_pos(state.text_);
  if (state.text_[pos] != prod.lhs) {
    throw std::domain_error("apply_production: rule does not match leftmost slot");
  }
  const int depth = state.slot_depths_.front();

  DerivationState next;
  next.text_ = state.text_;
  next.text_.replace(pos, 1, prod.rhs);
  next.slot_depths_.clear();
  next.slot_depths_.reserve(state.slot_depths_.size() - 1 +
                            static_cast<std::size_t>(prod.slot_count));
  for (int i = 0; i < prod.slot_count; ++i) next.slot_depths_.push_back(depth + 1);
  next.slot_depths_.insert(next.slot_depths_.end(), state.slot_depths_.begin() + 1,
                           state.slot_depths_.end());
  return next;
}

std::string render_smiles(const DerivationState& state) {
  if (!state.complete()) {
    throw std::domain_error("render_smiles: derivation has pending slots");
  }
  return state.text();
}

DerivationState random_rollout(const Grammar& grammar, DerivationState state,
                               int depth_cap, Rng& rng) {
  while (!state.complete()) {
    const std::vector<int> ids = legal_productions(grammar, state, depth_cap);
    const int pick = ids[rng.next_below(ids.size())];
    state = apply_production(state, grammar, pick);
  }
  return state;
}

}  // namespace banditlab
