#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "banditlab/grammar.hpp"

namespace banditlab {

enum class Element { C, N, O, F, Cl, Br };

std::string_view element_symbol(Element e);
double element_mass(Element e);
int element_valence(Element e);

// Heavy-atom graph with implicit hydrogen counts; bond orders are 1 or 2.
struct GraphAtom {
  Element element;
  int hydrogens = 0;
};

struct GraphBond {
  int a;
  int b;
  int order;
};

struct MolecularGraph {
  std::vector<GraphAtom> atoms;
  std::vector<GraphBond> bonds;

  int heavy_atom_count() const { return static_cast<int>(atoms.size()); }
  int total_atom_count() const;  // heavy atoms plus hydrogens
  double molecular_weight() const;
  // Per-atom list of (neighbor index, bond order).
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;
  // Throws if any atom's bond orders plus hydrogens miss its valence.
  void check_valence() const;
};

// Builds the graph straight off a complete derivation (the template alphabet
// is fixed, so this is a structural read of the fragment nesting, not a
// general SMILES parser).
MolecularGraph build_graph(const DerivationState& state);

// Functional-group labels of the property-estimation tables. Carbonyl-bearing
// clusters consume their member atoms; every other heavy atom maps to exactly
// one label.
enum class Group {
  Ch3, Ch2, Ch, QuaternaryC,
  EneCh2, EneCh, EneC,
  Fluoro, Chloro, Bromo,
  Hydroxyl, Ether,
  Ketone, Aldehyde, Ester, CarboxylicAcid,
  PrimaryAmine, SecondaryAmine, TertiaryAmine,
};

std::string_view group_label(Group g);
const std::vector<Group>& all_groups();

struct UnclassifiableAtomError : std::domain_error {
  UnclassifiableAtomError(int atom_index, const std::string& what)
      : std::domain_error(what), atom(atom_index) {}
  int atom;
};

// Multiset of group labels covering every heavy atom exactly once. Throws
// UnclassifiableAtomError for patterns outside the label set (bare CH4).
std::map<Group, int> classify_groups(const MolecularGraph& graph);

}  // namespace banditlab
