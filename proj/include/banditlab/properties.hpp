#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "banditlab/molecule.hpp"

namespace banditlab {

enum class Property { Tb, Pc, Eta, Tpsa };

Property property_from_name(std::string_view name);  // tb | pc | eta | tpsa
const char* property_name(Property p);

struct MissingCoefficientError : std::domain_error {
  using std::domain_error::domain_error;
};

// Group-contribution estimator backed by the coefficient data files
// data/joback_groups.csv and data/tpsa_contributions.csv. Loading verifies
// that every group the classifier can emit has a row (closed world); the
// viscosity columns may be empty for groups the published table omits, in
// which case estimating eta over such a group raises MissingCoefficientError.
class PropertyModel {
 public:
  static PropertyModel load(Property property,
                            const std::filesystem::path& data_dir,
                            double eta_temperature = 300.0);

  Property property() const { return property_; }
  double eta_temperature() const { return eta_temperature_; }

  // Property value from a classified group multiset. `total_atom_count`
  // counts heavy atoms plus hydrogens (the critical-pressure term needs it).
  //   Tb   = 198.2 + sum dTb                                  [K]
  //   Pc   = (0.113 + 0.0032*atoms - sum dPc)^-2              [bar]
  //   eta  = M_w * exp((sum eta_a - 597.82)/T + sum eta_b - 11.202)  [Pa s]
  //   TPSA = sum of polar-fragment contributions              [A^2]
  double estimate(const std::map<Group, int>& groups, int total_atom_count) const;

  // Classifies the graph and estimates in one step.
  double estimate_graph(const MolecularGraph& graph) const;

 private:
  struct JobackRow {
    double d_tb = 0.0;
    double d_pc = 0.0;
    std::optional<double> eta_a;
    std::optional<double> eta_b;
    int n_atoms = 0;
  };

  Property property_;
  double eta_temperature_;
  std::map<Group, JobackRow> joback_;
  std::map<std::string, double> tpsa_;
};

// Data directory resolution: $BANDITLAB_DATA_DIR if set, else "data".
std::filesystem::path default_data_dir();

}  // namespace banditlab
