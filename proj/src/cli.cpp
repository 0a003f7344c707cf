#include "banditlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "banditlab/csv.hpp"
#include "banditlab/experiments.hpp"
#include "banditlab/mcts.hpp"
#include "banditlab/parallel.hpp"
#include "banditlab/special_math.hpp"

namespace banditlab {

namespace {

constexpr const char* kPolicyHelp =
    "Selection policy: ucb[:c], maxsearch[:c_mu,c_sigma], piucb:c_mu,c_sigma, "
    "piucb1, piucb2, random";

// Flat key=value config support: the file is expanded into long flags that
// run ahead of the explicit command line, and a key is dropped whenever the
// same flag was given explicitly, so flags always win. Unknown keys turn
// into unknown flags and fail parsing.
std::vector<std::string> expand_config_args(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw std::invalid_argument("--config requires a file path");
      }
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  std::vector<std::string> expanded;
  expanded.push_back(args.front());  // the subcommand
  std::string line;
  const auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    const auto to = s.find_last_not_of(" \t\r");
    return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
  };
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line without '=': " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("empty key in config file");
    if (key == "config") {
      throw std::invalid_argument("config files cannot nest --config");
    }
    const std::string flag = "--" + key;
    bool overridden = false;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) {
        overridden = true;
        break;
      }
    }
    if (overridden) continue;
    expanded.push_back(flag);
    expanded.push_back(value);
  }
  expanded.insert(expanded.end(), args.begin() + 1, args.end());
  return expanded;
}

bool is_subcommand_name(const std::string& arg) {
  return arg == "synthetic" || arg == "molsearch" || arg == "oracle-eval";
}

std::vector<std::string> maybe_expand_config(const std::vector<std::string>& args) {
  if (args.empty() || !is_subcommand_name(args.front())) return args;
  return expand_config_args(args);
}

void build_app(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);

  CLI::App* synthetic =
      app.add_subcommand("synthetic", "Simulate a synthetic bandit benchmark");
  synthetic->add_option("--config", cfg.config_file, "Flat key=value config file");
  synthetic->add_option("--problem", cfg.problem,
                        "Benchmark problem: easy, difficult, unfavorable")
      ->capture_default_str();
  synthetic->add_option("--policy", cfg.policy, kPolicyHelp)->capture_default_str();
  synthetic->add_option("--horizon", cfg.horizon, "Rounds per run")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synthetic->add_option("--runs", cfg.runs, "Independent replications")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synthetic->add_option("--seed", cfg.seed, "Master seed (required; no wall-clock)")
      ->required();
  synthetic->add_option("--out", cfg.out, "Per-run trajectory CSV path")
      ->capture_default_str();
  synthetic->add_option("--summary-out", cfg.summary_out,
                        "Optional mean/stderr summary CSV path");
  synthetic->add_option("--oracle", cfg.oracle,
                        "Failure oracle: mean, ei, pi")
      ->capture_default_str();
  synthetic->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  synthetic->add_option("--init-pulls", cfg.init_pulls,
                        "Initialization pulls per arm (-1 = policy default)")
      ->capture_default_str();

  CLI::App* molsearch =
      app.add_subcommand("molsearch", "Tree search for molecules with a high property");
  molsearch->add_option("--config", cfg.config_file, "Flat key=value config file");
  molsearch->add_option("--property", cfg.property,
                        "Target property: tb, pc, eta, tpsa")
      ->capture_default_str();
  molsearch->add_option("--policy", cfg.policy, kPolicyHelp)->capture_default_str();
  molsearch->add_option("--trials", cfg.trials, "Molecule generations per run")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  molsearch->add_option("--runs", cfg.runs, "Independent replications")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  molsearch->add_option("--depth-cap", cfg.depth_cap,
                        "Maximum derivation nesting depth")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  molsearch->add_option("--seed", cfg.seed, "Master seed (required; no wall-clock)")
      ->required();
  molsearch->add_option("--out", cfg.out, "Per-trial trajectory CSV path")
      ->capture_default_str();
  molsearch->add_option("--eta-temperature", cfg.eta_temperature,
                        "Viscosity evaluation temperature [K]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  molsearch->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  CLI::App* oracle_eval = app.add_subcommand(
      "oracle-eval", "Print the oracle value for one arm and running maximum");
  oracle_eval->add_option("kind", cfg.oracle_kind, "Oracle: mean, ei, pi")->required();
  oracle_eval->add_option("mu", cfg.mu, "Arm mean")->required();
  oracle_eval->add_option("sigma", cfg.sigma, "Arm standard deviation")->required();
  oracle_eval->add_option("r_max", cfg.r_max, "Running maximum reward")->required();

  app.parse_complete_callback([&cfg, &app]() {
    if (app.got_subcommand("synthetic")) {
      cfg.command = RunConfig::Command::Synthetic;
    } else if (app.got_subcommand("molsearch")) {
      cfg.command = RunConfig::Command::Molsearch;
    } else {
      cfg.command = RunConfig::Command::OracleEval;
    }
  });
}

PolicyConfig policy_from_config(const RunConfig& cfg) {
  PolicyConfig policy = PolicyConfig::parse(cfg.policy);
  if (cfg.init_pulls >= 0) policy.init_pulls_per_arm = cfg.init_pulls;
  policy.validate();
  return policy;
}

int run_synthetic(const RunConfig& cfg) {
  const PolicyConfig policy = policy_from_config(cfg);
  const ProblemSpec problem =
      make_problem(cfg.problem, cfg.horizon, oracle_from_name(cfg.oracle));
  const std::vector<RunSummary> runs =
      run_replications(problem, policy, cfg.runs, cfg.seed, cfg.threads);
  emit_runs_csv(runs, std::filesystem::path(cfg.out));
  if (!cfg.summary_out.empty()) {
    emit_summary_csv(aggregate(runs), std::filesystem::path(cfg.summary_out));
  }

  double mean_r_max = 0.0;
  double mean_failures = 0.0;
  for (const RunSummary& run : runs) {
    mean_r_max += run.trajectory.back().r_max;
    mean_failures += static_cast<double>(run.trajectory.back().failures);
  }
  mean_r_max /= static_cast<double>(runs.size());
  mean_failures /= static_cast<double>(runs.size());
  std::cout << "synthetic " << problem.name << " policy=" << policy.name()
            << " runs=" << runs.size() << " T=" << cfg.horizon
            << ": mean r_max=" << format_double(mean_r_max)
            << " mean failures=" << format_double(mean_failures) << "\n";
  return 0;
}

int run_molsearch(const RunConfig& cfg) {
  const PolicyConfig policy = policy_from_config(cfg);
  const PropertyModel model = PropertyModel::load(
      property_from_name(cfg.property), default_data_dir(), cfg.eta_temperature);
  const Grammar& grammar = Grammar::acyclic_smiles();

  std::vector<MctsResult> results(static_cast<std::size_t>(cfg.runs));
  parallel_for_runs(cfg.runs, cfg.threads, [&](int run_id) {
    const std::uint64_t seed =
        Rng::derive_stream(cfg.seed, static_cast<std::uint64_t>(run_id));
    results[static_cast<std::size_t>(run_id)] =
        mcts_search(grammar, model, policy, cfg.trials, cfg.depth_cap, seed);
  });

  const std::filesystem::path out_path(cfg.out);
  if (out_path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out_path.parent_path(), ec);
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + cfg.out + "' for writing");
  out << "run_id,trial,r_max,best_smiles\n";
  for (int run_id = 0; run_id < cfg.runs; ++run_id) {
    const MctsResult& r = results[static_cast<std::size_t>(run_id)];
    for (std::size_t i = 0; i < r.r_max_trajectory.size(); ++i) {
      out << run_id << ',' << (i + 1) << ',' << format_double(r.r_max_trajectory[i])
          << ',' << r.best_smiles_trajectory[i] << '\n';
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + cfg.out + "'");

  std::vector<double> finals;
  double mean_best = 0.0;
  const MctsResult* champion = &results.front();
  for (const MctsResult& r : results) {
    finals.push_back(r.best_value);
    mean_best += r.best_value;
    if (r.best_value > champion->best_value) champion = &r;
  }
  mean_best /= static_cast<double>(results.size());
  std::cout << "molsearch " << cfg.property << " policy=" << policy.name()
            << " runs=" << cfg.runs << " trials=" << cfg.trials
            << ": mean r_max=" << format_double(mean_best);
  if (cfg.runs >= 2) {
    // Heavy-tailed targets (viscosity especially) are better summarized by
    // the median with a percentile-bootstrap interval.
    std::sort(finals.begin(), finals.end());
    const double median =
        finals.size() % 2 == 1
            ? finals[finals.size() / 2]
            : (finals[finals.size() / 2 - 1] + finals[finals.size() / 2]) / 2.0;
    const BootstrapInterval ci = bootstrap_percentile_ci(
        finals, BootstrapStatistic::Median, 1000, 0.95,
        Rng::derive_stream(cfg.seed, 0xB007u));
    std::cout << " median r_max=" << format_double(median) << " ci95=["
              << format_double(ci.lo) << "," << format_double(ci.hi) << "]";
  }
  std::cout << " best="
            << (champion->best_smiles.empty() ? "(none)" : champion->best_smiles)
            << " (" << format_double(champion->best_value) << ")\n";
  return 0;
}

int run_oracle_eval(const RunConfig& cfg) {
  const OracleKind kind = oracle_from_name(cfg.oracle_kind);
  const double value = oracle_value(kind, {cfg.mu, cfg.sigma}, cfg.r_max);
  std::cout << format_double(value) << "\n";
  return 0;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Stochastic bandit laboratory"};
  app.name("banditlab");
  build_app(app, cfg);
  try {
    const std::vector<std::string> expanded = maybe_expand_config(args);
    // CLI11 wants reversed argv without the program name.
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }
  return cfg;
}

std::string cli_help(const std::string& subcommand) {
  RunConfig cfg;
  CLI::App app{"Stochastic bandit laboratory"};
  app.name("banditlab");
  build_app(app, cfg);
  if (subcommand.empty()) return app.help();
  return app.get_subcommand(subcommand)->help();
}

int run_command(const RunConfig& config) {
  switch (config.command) {
    case RunConfig::Command::Synthetic: return run_synthetic(config);
    case RunConfig::Command::Molsearch: return run_molsearch(config);
    case RunConfig::Command::OracleEval: return run_oracle_eval(config);
  }
  return 1;
}

int cli_main(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Stochastic bandit laboratory"};
  app.name("banditlab");
  build_app(app, cfg);
  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    const std::vector<std::string> expanded = maybe_expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "banditlab: error: " << e.what() << "\n";
    return 1;
  }
  try {
    return run_command(cfg);
  } catch (const std::exception& e) {
    std::cerr << "banditlab: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace banditlab
