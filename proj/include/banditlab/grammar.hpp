#pragma once

#include <string>
#include <vector>

#include "banditlab/rng.hpp"

namespace banditlab {

// One substitution rule of the acyclic-SMILES grammar. The right-hand side
// is a fragment template in render form: atoms C/O/N/F/Cl/Br, explicit [H],
// '=' for a double bond, parentheses for branches, and the characters
// 'S'/'X'/'Y' marking pending nonterminal slots. The last substituent of
// each atom is written without parentheses, so completed derivations
// concatenate directly into valid SMILES.
struct Production {
  char lhs;
  std::string rhs;
  int slot_count;
};

// The fixed fragment grammar: 4 start rules, 10 X rules, 8 Y rules.
class Grammar {
 public:
  static const Grammar& acyclic_smiles();

  const std::vector<Production>& rules() const { return rules_; }
  const Production& rule(int id) const;
  std::vector<int> rule_ids_for(char nonterminal) const;

 private:
  explicit Grammar(std::vector<Production> rules);
  std::vector<Production> rules_;
};

// Partial derivation: template text with embedded slot markers plus the
// nesting depth of each pending slot in left-to-right order.
class DerivationState {
 public:
  static DerivationState start();

  bool complete() const { return slot_depths_.empty(); }
  int pending_slots() const { return static_cast<int>(slot_depths_.size()); }
  char leftmost_nonterminal() const;
  int leftmost_depth() const;
  const std::string& text() const { return text_; }

  bool operator==(const DerivationState& other) const = default;

  friend DerivationState apply_production(const DerivationState& state,
                                          const Grammar& grammar, int rule_id);

 private:
  std::string text_ = "S";
  std::vector<int> slot_depths_ = {0};
};

// Rules applicable to the leftmost pending slot. Slots at depth >= depth_cap
// only admit rules that introduce no new slots.
std::vector<int> legal_productions(const Grammar& grammar,
                                   const DerivationState& state, int depth_cap);

// Replaces the leftmost slot by the rule's template; new slots inherit
// depth + 1.
DerivationState apply_production(const DerivationState& state,
                                 const Grammar& grammar, int rule_id);

// The SMILES string of a complete derivation.
std::string render_smiles(const DerivationState& state);

// Completes a derivation by uniformly random legal substitutions.
DerivationState random_rollout(const Grammar& grammar, DerivationState state,
                               int depth_cap, Rng& rng);

}  // namespace banditlab
