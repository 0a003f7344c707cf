#include "banditlab/properties.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace banditlab {

namespace {

// Atom content of each group (heavy atom + its hydrogens), used for the
// closed-world check of the n_atoms column and for molecular weight sums.
struct GroupComposition {
  int c = 0, h = 0, o = 0, n = 0, f = 0, cl = 0, br = 0;
  int atom_count() const { return c + h + o + n + f + cl + br; }
  double mass() const {
    return c * element_mass(Element::C) + h * 1.008 + o * element_mass(Element::O) +
           n * element_mass(Element::N) + f * element_mass(Element::F) +
           cl * element_mass(Element::Cl) + br * element_mass(Element::Br);
  }
};

GroupComposition group_composition(Group g) {
  switch (g) {
    case Group::Ch3: return {.c = 1, .h = 3};
    case Group::Ch2: return {.c = 1, .h = 2};
    case Group::Ch: return {.c = 1, .h = 1};
    case Group::QuaternaryC: return {.c = 1};
    case Group::EneCh2: return {.c = 1, .h = 2};
    case Group::EneCh: return {.c = 1, .h = 1};
    case Group::EneC: return {.c = 1};
    case Group::Fluoro: return {.f = 1};
    case Group::Chloro: return {.cl = 1};
    case Group::Bromo: return {.br = 1};
    case Group::Hydroxyl: return {.h = 1, .o = 1};
    case Group::Ether: return {.o = 1};
    case Group::Ketone: return {.c = 1, .o = 1};
    case Group::Aldehyde: return {.c = 1, .h = 1, .o = 1};
    case Group::Ester: return {.c = 1, .o = 2};
    case Group::CarboxylicAcid: return {.c = 1, .h = 1, .o = 2};
    case Group::PrimaryAmine: return {.h = 2, .n = 1};
    case Group::SecondaryAmine: return {.h = 1, .n = 1};
    case Group::TertiaryAmine: return {.n = 1};
  }
  return {};
}

// Polar fragments each group contributes to the surface-area sum.
std::vector<std::string> tpsa_fragments(Group g) {
  switch (g) {
    case Group::Hydroxyl: return {"O_hydroxyl"};
    case Group::Ether: return {"O_ether"};
    case Group::Ketone: return {"O_double"};
    case Group::Aldehyde: return {"O_double"};
    case Group::Ester: return {"O_double", "O_ether"};
    case Group::CarboxylicAcid: return {"O_double", "O_hydroxyl"};
    case Group::PrimaryAmine: return {"N_primary"};
    case Group::SecondaryAmine: return {"N_secondary"};
    case Group::TertiaryAmine: return {"N_tertiary"};
    default: return {};
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, const std::filesystem::path& file) {
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) {
    throw std::runtime_error("bad number '" + text + "' in " + file.string());
  }
  return value;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& file,
                                               const std::string& expected_header) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open data file '" + file.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line) || line != expected_header) {
    throw std::runtime_error("unexpected header in '" + file.string() +
                             "' (want '" + expected_header + "')");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

}  // namespace

Property property_from_name(std::string_view name) {
  if (name == "tb") return Property::Tb;
  if (name == "pc") return Property::Pc;
  if (name == "eta") return Property::Eta;
  if (name == "tpsa") return Property::Tpsa;
  throw std::invalid_argument("unknown property '" + std::string(name) +
                              "' (expected tb, pc, eta, or tpsa)");
}

const char* property_name(Property p) {
  switch (p) {
    case Property::Tb: return "tb";
    case Property::Pc: return "pc";
    case Property::Eta: return "eta";
    case Property::Tpsa: return "tpsa";
  }
  return "?";
}

PropertyModel PropertyModel::load(Property property,
                                  const std::filesystem::path& data_dir,
                                  double eta_temperature) {
  if (!(eta_temperature > 0.0)) {
    throw std::invalid_argument("eta temperature must be > 0 K");
  }
  PropertyModel model;
  model.property_ = property;
  model.eta_temperature_ = eta_temperature;

  const auto joback_file = data_dir / "joback_groups.csv";
  std::map<std::string, Group> by_label;
  for (const Group g : all_groups()) by_label.emplace(group_label(g), g);

  for (const auto& fields :
       read_csv(joback_file, "group,dTb,dPc,eta_a,eta_b,n_atoms")) {
    if (fields.size() != 6) {
      throw std::runtime_error("malformed row in '" + joback_file.string() + "'");
    }
    const auto it = by_label.find(fields[0]);
    if (it == by_label.end()) {
      throw std::runtime_error("unknown group '" + fields[0] + "' in '" +
                               joback_file.string() + "'");
    }
    JobackRow row;
    row.d_tb = parse_number(fields[1], joback_file);
    row.d_pc = parse_number(fields[2], joback_file);
    if (!fields[3].empty()) row.eta_a = parse_number(fields[3], joback_file);
    if (!fields[4].empty()) row.eta_b = parse_number(fields[4], joback_file);
    row.n_atoms = static_cast<int>(parse_number(fields[5], joback_file));
    if (row.n_atoms != group_composition(it->second).atom_count()) {
      throw std::runtime_error("n_atoms mismatch for group '" + fields[0] +
                               "' in '" + joback_file.string() + "'");
    }
    model.joback_[it->second] = row;
  }
  for (const Group g : all_groups()) {
    if (!model.joback_.count(g)) {
      throw std::runtime_error("data file '" + joback_file.string() +
                               "' is missing group '" +
                               std::string(group_label(g)) + "'");
    }
  }

  const auto tpsa_file = data_dir / "tpsa_contributions.csv";
  for (const auto& fields : read_csv(tpsa_file, "pattern_label,contribution_A2")) {
    if (fields.size() != 2) {
      throw std::runtime_error("malformed row in '" + tpsa_file.string() + "'");
    }
    model.tpsa_[fields[0]] = parse_number(fields[1], tpsa_file);
  }
  for (const Group g : all_groups()) {
    for (const std::string& fragment : tpsa_fragments(g)) {
      if (!model.tpsa_.count(fragment)) {
        throw std::runtime_error("data file '" + tpsa_file.string() +
                                 "' is missing pattern '" + fragment + "'");
      }
    }
  }
  return model;
}

double PropertyModel::estimate(const std::map<Group, int>& groups,
                               int total_atom_count) const {
  switch (property_) {
    case Property::Tb: {
      double sum = 198.2;
      for (const auto& [g, count] : groups) sum += count * joback_.at(g).d_tb;
      return sum;
    }
    case Property::Pc: {
      double sum = 0.0;
      for (const auto& [g, count] : groups) sum += count * joback_.at(g).d_pc;
      const double base = 0.113 + 0.0032 * total_atom_count - sum;
      if (!(base > 0.0)) {
        throw std::domain_error("critical-pressure correlation out of range");
      }
      return 1.0 / (base * base);
    }
    case Property::Eta: {
      double sum_a = 0.0;
      double sum_b = 0.0;
      double mass = 0.0;
      for (const auto& [g, count] : groups) {
        const JobackRow& row = joback_.at(g);
        if (!row.eta_a || !row.eta_b) {
          throw MissingCoefficientError(
              "no viscosity coefficients for group '" +
              std::string(group_label(g)) + "'");
        }
        sum_a += count * *row.eta_a;
        sum_b += count * *row.eta_b;
        mass += count * group_composition(g).mass();
      }
      return mass * std::exp((sum_a - 597.82) / eta_temperature_ + sum_b - 11.202);
    }
    case Property::Tpsa: {
      double sum = 0.0;
      for (const auto& [g, count] : groups) {
        for (const std::string& fragment : tpsa_fragments(g)) {
          sum += count * tpsa_.at(fragment);
        }
      }
      return sum;
    }
  }
  throw std::logic_error("unreachable property kind");
}

double PropertyModel::estimate_graph(const MolecularGraph& graph) const {
  return estimate(classify_groups(graph), graph.total_atom_count());
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("BANDITLAB_DATA_DIR")) {
    return std::filesystem::path(env);
  }
  return "data";
}

}  // namespace banditlab
