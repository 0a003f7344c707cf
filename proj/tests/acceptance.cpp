// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Expected values come from independent oracles (quadrature,
// bisection, direct resampling), never from the library path under test.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "banditlab/bandit.hpp"
#include "banditlab/experiments.hpp"
#include "banditlab/mcts.hpp"
#include "banditlab/policies.hpp"
#include "banditlab/special_math.hpp"
#include "test_oracles.hpp"

using namespace banditlab;

namespace {

int failures_total = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s  (%s)\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures_total;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --- criterion 1: oracle desk-check ---------------------------------------

void criterion_oracle_desk_check() {
  const ArmSpec arm1{0.0, 1.0};
  const ArmSpec arm2{-1.0, 2.0};
  const double ei1 = oracle_value(OracleKind::ExpectedImprovement, arm1, 0.5);
  const double ei2 = oracle_value(OracleKind::ExpectedImprovement, arm2, 0.5);
  const double pi1 = oracle_value(OracleKind::ProbabilityOfImprovement, arm1, 0.5);
  const double pi2 = oracle_value(OracleKind::ProbabilityOfImprovement, arm2, 0.5);
  const bool ok = std::fabs(ei1 - 0.198) <= 0.002 && std::fabs(ei2 - 0.262) <= 0.002 &&
                  std::fabs(pi1 - 0.309) <= 0.002 && std::fabs(pi2 - 0.227) <= 0.002;
  report(1, "oracle desk-check",
         ok,
         "EI=" + fmt(ei1) + "/" + fmt(ei2) + " PI=" + fmt(pi1) + "/" + fmt(pi2));
}

// --- criterion 2: special-function accuracy --------------------------------

void criterion_special_functions() {
  double worst_erfc = 0.0, worst_ierfc = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = -4.0 + 8.0 * i / 999.0;
    worst_erfc = std::max(worst_erfc, std::fabs(banditlab::erfc(x) - oracles::erfc_quadrature(x)));
    worst_ierfc =
        std::max(worst_ierfc, std::fabs(banditlab::ierfc(x) - oracles::ierfc_quadrature(x)));
  }
  double worst_round_trip = 0.0;
  for (int n = 1; n <= 50; ++n) {
    for (int i = 1; i <= 99; ++i) {
      const double p = i / 100.0;
      worst_round_trip = std::max(
          worst_round_trip, std::fabs(student_t_cdf(student_t_quantile({p, n}), n) - p));
      worst_round_trip = std::max(
          worst_round_trip,
          std::fabs(chi_square_cdf(chi_square_quantile({p, n}), n) - p));
    }
  }
  const bool ok =
      worst_erfc < 1e-10 && worst_ierfc < 1e-10 && worst_round_trip < 1e-6;
  report(2, "special-function accuracy", ok,
         "max|erfc err|=" + fmt(worst_erfc) + " max|ierfc err|=" + fmt(worst_ierfc) +
             " max|round trip|=" + fmt(worst_round_trip));
}

// --- criteria 3-5: synthetic benchmarks ------------------------------------

double mean_final_failures(const std::vector<RunSummary>& runs) {
  double sum = 0.0;
  for (const auto& run : runs) {
    sum += static_cast<double>(run.trajectory.back().failures);
  }
  return sum / static_cast<double>(runs.size());
}

double mean_final_r_max(const std::vector<RunSummary>& runs) {
  double sum = 0.0;
  for (const auto& run : runs) sum += run.trajectory.back().r_max;
  return sum / static_cast<double>(runs.size());
}

void criterion_unfavorable() {
  const ProblemSpec problem =
      make_problem("unfavorable", 10000, OracleKind::ExpectedImprovement);
  const auto runs =
      run_replications(problem, PolicyConfig::parse("ucb"), 100, 90210, 0);
  const double mean_failures = mean_final_failures(runs);
  report(3, "unfavorable problem, classical UCB failure count",
         mean_failures < 60.0, "mean N(T)=" + fmt(mean_failures) + " < 60");
}

void criterion_easy_ordering() {
  const ProblemSpec problem =
      make_problem("easy", 10000, OracleKind::ExpectedImprovement);
  const std::uint64_t seed = 424242;
  const auto ucb = run_replications(problem, PolicyConfig::parse("ucb"), 100, seed, 0);
  const auto maxsearch =
      run_replications(problem, PolicyConfig::parse("maxsearch"), 100, seed, 0);
  const auto piucb1 =
      run_replications(problem, PolicyConfig::parse("piucb1"), 100, seed, 0);
  const auto piucb2 =
      run_replications(problem, PolicyConfig::parse("piucb2"), 100, seed, 0);

  const double n_ucb = mean_final_failures(ucb);
  const double n_ms = mean_final_failures(maxsearch);
  const double n_p1 = mean_final_failures(piucb1);
  const double n_p2 = mean_final_failures(piucb2);

  const AggregateSummary p2_summary = aggregate(piucb2);
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < p2_summary.failures.t.size(); ++i) {
    if (p2_summary.failures.t[i] >= 100) {
      points.emplace_back(static_cast<double>(p2_summary.failures.t[i]),
                          p2_summary.failures.mean[i]);
    }
  }
  const LinearFit fit = fit_loglinear(points);

  const bool ok = n_ms < n_p1 && n_p2 < n_p1 && n_ms < 0.5 * n_ucb &&
                  n_p1 < 0.5 * n_ucb && n_p2 < 0.5 * n_ucb && fit.r_squared >= 0.95;
  report(4, "easy problem failure ordering and log-linearity", ok,
         "N(T): ucb=" + fmt(n_ucb) + " maxsearch=" + fmt(n_ms) + " piucb1=" +
             fmt(n_p1) + " piucb2=" + fmt(n_p2) + ", piucb2 R^2=" + fmt(fit.r_squared));
}

void criterion_difficult() {
  const ProblemSpec problem =
      make_problem("difficult", 10000, OracleKind::ExpectedImprovement);
  const std::uint64_t seed = 31337;
  const double r_ucb = mean_final_r_max(
      run_replications(problem, PolicyConfig::parse("ucb"), 100, seed, 0));
  const double r_ms = mean_final_r_max(
      run_replications(problem, PolicyConfig::parse("maxsearch"), 100, seed, 0));
  const double r_p1 = mean_final_r_max(
      run_replications(problem, PolicyConfig::parse("piucb1"), 100, seed, 0));
  const double r_p2 = mean_final_r_max(
      run_replications(problem, PolicyConfig::parse("piucb2"), 100, seed, 0));
  const bool ok = r_ms >= r_ucb && r_p1 >= r_ucb && r_p2 >= r_ucb;
  report(5, "difficult problem r_max ordering", ok,
         "mean r_max(T): ucb=" + fmt(r_ucb) + " maxsearch=" + fmt(r_ms) +
             " piucb1=" + fmt(r_p1) + " piucb2=" + fmt(r_p2));
}

// --- criterion 6: PIUCB unit fidelity ---------------------------------------

void criterion_piucb_fidelity() {
  // Rewards {0,1} on the arm (mean 0.5, variance 0.5, two pulls) at round
  // t = 10 with c_mu = c_sigma = sqrt(2) and r_max = 1.
  const double c = std::sqrt(2.0);
  const auto bounds = confidence_bounds_gaussian(0.5, 0.5, 2, 10.0, c, c);
  const double index = bounds ? piucb_index(*bounds, 1.0) : -1.0;

  // Independent assembly via quadrature-CDF bisection oracles.
  const double t_or = oracles::invert_by_bisection(
      [](double x) { return oracles::student_t_cdf_quadrature(x, 1); }, 0.95, 0.0,
      1e4);
  const double chi_or = oracles::invert_by_bisection(
      [](double x) { return oracles::chi_square_cdf_quadrature(x, 1); }, 0.05, 0.0,
      10.0);
  const double mu_plus = 0.5 + std::sqrt(0.5) * t_or / std::sqrt(2.0);
  const double sigma_plus = std::sqrt(0.5 / chi_or);
  const double oracle_index = (mu_plus - 1.0) / sigma_plus;

  const bool ok =
      bounds && std::fabs(index - 0.2356) <= 1e-3 && std::fabs(index - oracle_index) <= 1e-6;
  report(6, "PIUCB index fidelity on the worked state", ok,
         "index=" + fmt(index) + " oracle=" + fmt(oracle_index));
}

// --- criterion 7: molecule generation soundness -----------------------------

void criterion_molecule_soundness() {
  const Grammar& grammar = Grammar::acyclic_smiles();
  Rng rng(50505);
  int bad = 0;
  int sentinel = 0;
  for (int i = 0; i < 10000; ++i) {
    try {
      const DerivationState state =
          random_rollout(grammar, DerivationState::start(), 6, rng);
      const std::string smiles = render_smiles(state);
      int depth = 0;
      bool balanced = true;
      for (const char ch : smiles) {
        if (ch == '(') ++depth;
        if (ch == ')' && --depth < 0) balanced = false;
      }
      if (!balanced || depth != 0) {
        ++bad;
        continue;
      }
      const MolecularGraph graph = build_graph(state);  // checks valence
      try {
        (void)classify_groups(graph);
      } catch (const UnclassifiableAtomError&) {
        if (graph.heavy_atom_count() == 1) {
          ++sentinel;  // bare CH4, the documented sentinel
        } else {
          ++bad;
        }
      }
    } catch (const std::exception&) {
      ++bad;
    }
  }
  report(7, "molecule generation soundness", bad == 0,
         "10000 rollouts, " + std::to_string(sentinel) + " methane sentinels, " +
             std::to_string(bad) + " violations");
}

// --- criterion 8: molecule search sanity ------------------------------------

void criterion_molsearch_sanity() {
  const PropertyModel model =
      PropertyModel::load(Property::Tb, BANDITLAB_TEST_DATA_DIR);
  const Grammar& grammar = Grammar::acyclic_smiles();
  const int trials = 3000;
  const int runs = 20;
  double sum_piucb2 = 0.0, sum_random = 0.0;
  for (int r = 0; r < runs; ++r) {
    sum_piucb2 += mcts_search(grammar, model, PolicyConfig::parse("piucb2"), trials,
                              6, Rng::derive_stream(777, static_cast<std::uint64_t>(r)))
                      .best_value;
    sum_random += mcts_search(grammar, model, PolicyConfig::parse("random"), trials,
                              6, Rng::derive_stream(888, static_cast<std::uint64_t>(r)))
                      .best_value;
  }
  const double mean_piucb2 = sum_piucb2 / runs;
  const double mean_random = sum_random / runs;
  report(8, "molecule search beats flat random generation",
         mean_piucb2 >= mean_random,
         "mean r_max: piucb2=" + fmt(mean_piucb2) + " random=" + fmt(mean_random));
}

// --- criterion 9: byte-identical reproducibility ----------------------------

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BANDITLAB_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  return std::system(cmd.c_str());
}

void criterion_reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "banditlab_acceptance";
  fs::create_directories(dir);
  setenv("BANDITLAB_DATA_DIR", BANDITLAB_TEST_DATA_DIR, 1);

  bool ok = true;
  std::string detail;

  const std::string synth_args =
      "synthetic --problem easy --policy piucb2 --horizon 2000 --runs 8 "
      "--seed 42 --threads 2 --out ";
  const auto s1 = dir / "synth_1.csv";
  const auto s2 = dir / "synth_2.csv";
  const auto s3 = dir / "synth_3.csv";
  ok &= run_cli(synth_args + s1.string()) == 0;
  ok &= run_cli(synth_args + s2.string()) == 0;
  ok &= run_cli("synthetic --problem easy --policy piucb2 --horizon 2000 --runs 8 "
                "--seed 42 --threads 1 --out " +
                s3.string()) == 0;
  const std::string synth_bytes = slurp(s1);
  if (synth_bytes.empty() || synth_bytes != slurp(s2)) {
    ok = false;
    detail += "synthetic reruns differ; ";
  }
  if (synth_bytes != slurp(s3)) {
    ok = false;
    detail += "synthetic differs across thread counts; ";
  }

  const std::string mol_args =
      "molsearch --property tpsa --policy piucb1 --trials 400 --runs 4 "
      "--depth-cap 6 --seed 7 --threads 2 --out ";
  const auto m1 = dir / "mol_1.csv";
  const auto m2 = dir / "mol_2.csv";
  ok &= run_cli(mol_args + m1.string()) == 0;
  ok &= run_cli(mol_args + m2.string()) == 0;
  const std::string mol_bytes = slurp(m1);
  if (mol_bytes.empty() || mol_bytes != slurp(m2)) {
    ok = false;
    detail += "molsearch reruns differ; ";
  }

  if (detail.empty()) detail = "synthetic and molsearch outputs byte-identical";
  report(9, "seeded reruns are byte-identical", ok, detail);
}

}  // namespace

int main() {
  criterion_oracle_desk_check();
  criterion_special_functions();
  criterion_unfavorable();
  criterion_easy_ordering();
  criterion_difficult();
  criterion_piucb_fidelity();
  criterion_molecule_soundness();
  criterion_molsearch_sanity();
  criterion_reproducibility();

  if (failures_total == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures_total);
  return 1;
}
