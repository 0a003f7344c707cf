#include "banditlab/molecule.hpp"

#include <array>

namespace banditlab {

std::string_view element_symbol(Element e) {
  switch (e) {
    case Element::C: return "C";
    case Element::N: return "N";
    case Element::O: return "O";
    case Element::F: return "F";
    case Element::Cl: return "Cl";
    case Element::Br: return "Br";
  }
  return "?";
}

double element_mass(Element e) {
  switch (e) {
    case Element::C: return 12.011;
    case Element::N: return 14.007;
    case Element::O: return 15.999;
    case Element::F: return 18.998;
    case Element::Cl: return 35.45;
    case Element::Br: return 79.904;
  }
  return 0.0;
}

int element_valence(Element e) {
  switch (e) {
    case Element::C: return 4;
    case Element::N: return 3;
    case Element::O: return 2;
    case Element::F:
    case Element::Cl:
    case Element::Br: return 1;
  }
  return 0;
}

int MolecularGraph::total_atom_count() const {
  int total = heavy_atom_count();
  for (const GraphAtom& atom : atoms) total += atom.hydrogens;
  return total;
}

double MolecularGraph::molecular_weight() const {
  constexpr double kHydrogenMass = 1.008;
  double mass = 0.0;
  for (const GraphAtom& atom : atoms) {
    mass += element_mass(atom.element) + kHydrogenMass * atom.hydrogens;
  }
  return mass;
}

std::vector<std::vector<std::pair<int, int>>> MolecularGraph::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(atoms.size());
  for (const GraphBond& bond : bonds) {
    adj[static_cast<std::size_t>(bond.a)].emplace_back(bond.b, bond.order);
    adj[static_cast<std::size_t>(bond.b)].emplace_back(bond.a, bond.order);
  }
  return adj;
}

void MolecularGraph::check_valence() const {
  std::vector<int> used(atoms.size(), 0);
  for (const GraphBond& bond : bonds) {
    used[static_cast<std::size_t>(bond.a)] += bond.order;
    used[static_cast<std::size_t>(bond.b)] += bond.order;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const int total = used[i] + atoms[i].hydrogens;
    if (total != element_valence(atoms[i].element)) {
      throw std::domain_error("valence violated at atom " + std::to_string(i) +
                              " (" + std::string(element_symbol(atoms[i].element)) +
                              ": " + std::to_string(total) + ")");
    }
  }
}

namespace {

// Recursive reader of the rendered fragment nesting:
//   node   := atom branch* tail?
//   branch := '(' '='? node ')'
//   tail   := '='? node          (the unparenthesized last substituent)
class GraphReader {
 public:
  explicit GraphReader(const std::string& text) : text_(text) {}

  MolecularGraph read() {
    parse_node(-1, 1);
    if (pos_ != text_.size()) {
      throw std::domain_error("unexpected trailing text in derivation");
    }
    return std::move(graph_);
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void parse_node(int parent, int bond_order) {
    // Explicit hydrogen: folds into the parent's hydrogen count.
    if (peek() == '[') {
      expect("[H]");
      if (parent < 0 || bond_order != 1) {
        throw std::domain_error("hydrogen needs a single-bonded heavy parent");
      }
      ++graph_.atoms[static_cast<std::size_t>(parent)].hydrogens;
      return;
    }

    const int index = graph_.heavy_atom_count();
    graph_.atoms.push_back({read_element(), 0});
    if (parent >= 0) graph_.bonds.push_back({parent, index, bond_order});

    while (peek() == '(') {
      ++pos_;
      parse_node(index, consume_bond_order());
      if (peek() != ')') throw std::domain_error("unbalanced parenthesis");
      ++pos_;
    }
    if (peek() != '\0' && peek() != ')') {
      parse_node(index, consume_bond_order());
    }
  }

  int consume_bond_order() {
    if (peek() == '=') {
      ++pos_;
      return 2;
    }
    return 1;
  }

  Element read_element() {
    switch (peek()) {
      case 'C':
        ++pos_;
        if (peek() == 'l') {
          ++pos_;
          return Element::Cl;
        }
        return Element::C;
      case 'B': expect("Br"); return Element::Br;
      case 'O': ++pos_; return Element::O;
      case 'N': ++pos_; return Element::N;
      case 'F': ++pos_; return Element::F;
      default:
        throw std::domain_error("unexpected character '" + std::string(1, peek()) +
                                "' in derivation");
    }
  }

  void expect(std::string_view token) {
    if (text_.compare(pos_, token.size(), token) != 0) {
      throw std::domain_error("malformed derivation near position " +
                              std::to_string(pos_));
    }
    pos_ += token.size();
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  MolecularGraph graph_;
};

}  // namespace

MolecularGraph build_graph(const DerivationState& state) {
  if (!state.complete()) {
    throw std::domain_error("build_graph: derivation has pending slots");
  }
  MolecularGraph graph = GraphReader(state.text()).read();
  graph.check_valence();
  return graph;
}

std::string_view group_label(Group g) {
  switch (g) {
    case Group::Ch3: return "-CH3";
    case Group::Ch2: return ">CH2";
    case Group::Ch: return ">CH-";
    case Group::QuaternaryC: return ">C<";
    case Group::EneCh2: return "=CH2";
    case Group::EneCh: return "=CH-";
    case Group::EneC: return "=C<";
    case Group::Fluoro: return "F";
    case Group::Chloro: return "Cl";
    case Group::Bromo: return "Br";
    case Group::Hydroxyl: return "-OH";
    case Group::Ether: return "-O-";
    case Group::Ketone: return ">C=O";
    case Group::Aldehyde: return "-CHO";
    case Group::Ester: return "-COO-";
    case Group::CarboxylicAcid: return "-COOH";
    case Group::PrimaryAmine: return "-NH2";
    case Group::SecondaryAmine: return ">NH";
    case Group::TertiaryAmine: return ">N-";
  }
  return "?";
}

const std::vector<Group>& all_groups() {
  static const std::vector<Group> groups = {
      Group::Ch3,        Group::Ch2,           Group::Ch,
      Group::QuaternaryC, Group::EneCh2,       Group::EneCh,
      Group::EneC,       Group::Fluoro,        Group::Chloro,
      Group::Bromo,      Group::Hydroxyl,      Group::Ether,
      Group::Ketone,     Group::Aldehyde,      Group::Ester,
      Group::CarboxylicAcid, Group::PrimaryAmine, Group::SecondaryAmine,
      Group::TertiaryAmine,
  };
  return groups;
}

std::map<Group, int> classify_groups(const MolecularGraph& graph) {
  const auto adj = graph.adjacency();
  const std::size_t n = graph.atoms.size();
  std::vector<bool> consumed(n, false);
  std::map<Group, int> groups;
  const auto add = [&groups](Group g) { ++groups[g]; };

  // Carbonyl clusters first: the carbon, its double-bonded oxygen, and (for
  // esters/acids) the single-bonded oxygen are consumed together.
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.atoms[i].element != Element::C) continue;
    int carbonyl_o = -1;
    int single_o = -1;
    for (const auto& [nb, order] : adj[i]) {
      if (graph.atoms[static_cast<std::size_t>(nb)].element != Element::O) continue;
      if (order == 2) {
        carbonyl_o = nb;
      } else if (!consumed[static_cast<std::size_t>(nb)]) {
        // An anhydride-like bridge oxygen belongs to whichever carbonyl
        // claimed it first; the other carbonyl classifies on its own.
        single_o = nb;
      }
    }
    if (carbonyl_o < 0) continue;
    consumed[i] = true;
    consumed[static_cast<std::size_t>(carbonyl_o)] = true;
    if (single_o >= 0) {
      consumed[static_cast<std::size_t>(single_o)] = true;
      const bool acid = graph.atoms[static_cast<std::size_t>(single_o)].hydrogens > 0;
      add(acid ? Group::CarboxylicAcid : Group::Ester);
    } else if (graph.atoms[i].hydrogens >= 1) {
      add(Group::Aldehyde);
    } else {
      add(Group::Ketone);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (consumed[i]) continue;
    const GraphAtom& atom = graph.atoms[i];
    const int h = atom.hydrogens;
    switch (atom.element) {
      case Element::F: add(Group::Fluoro); break;
      case Element::Cl: add(Group::Chloro); break;
      case Element::Br: add(Group::Bromo); break;
      case Element::O:
        add(h > 0 ? Group::Hydroxyl : Group::Ether);
        break;
      case Element::N:
        add(h >= 2 ? Group::PrimaryAmine
                   : (h == 1 ? Group::SecondaryAmine : Group::TertiaryAmine));
        break;
      case Element::C: {
        bool ene = false;
        for (const auto& [nb, order] : adj[i]) {
          if (order == 2) ene = true;
        }
        if (ene) {
          add(h >= 2 ? Group::EneCh2 : (h == 1 ? Group::EneCh : Group::EneC));
        } else if (h == 4) {
          throw UnclassifiableAtomError(
              static_cast<int>(i),
              "atom " + std::to_string(i) + ": CH4 has no group assignment");
        } else {
          add(h == 3 ? Group::Ch3
                     : (h == 2 ? Group::Ch2 : (h == 1 ? Group::Ch : Group::QuaternaryC)));
        }
        break;
      }
    }
  }
  return groups;
}

}  // namespace banditlab
