#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace banditlab {

// Parsed command line of the banditlab tool.
struct RunConfig {
  enum class Command { Synthetic, Molsearch, OracleEval };
  Command command = Command::Synthetic;

  // synthetic
  std::string problem = "easy";
  std::string oracle = "ei";
  std::int64_t horizon = 10000;
  std::string summary_out;

  // shared
  std::string policy = "piucb2";
  int runs = 100;
  std::uint64_t seed = 0;
  std::string out = "runs.csv";
  int threads = 0;      // 0 = all cores
  int init_pulls = -1;  // -1 = policy default
  std::string config_file;

  // molsearch
  std::string property = "tb";
  int trials = 3000;
  int depth_cap = 6;
  double eta_temperature = 300.0;

  // oracle-eval
  std::string oracle_kind;
  double mu = 0.0;
  double sigma = 1.0;
  double r_max = 0.0;
};

// Parses a full argument vector (excluding argv[0]); throws
// std::invalid_argument with the usage message on bad input.
RunConfig parse_config(const std::vector<std::string>& args);

// Help text for the top-level app or one subcommand.
std::string cli_help(const std::string& subcommand = "");

// Executes a parsed command; returns the process exit code.
int run_command(const RunConfig& config);

// Full tool entry point: parse, dispatch, report errors.
int cli_main(int argc, const char* const* argv);

}  // namespace banditlab
