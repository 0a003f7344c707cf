#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "banditlab/bandit.hpp"
#include "banditlab/policies.hpp"

namespace banditlab {

// A synthetic bandit benchmark: hidden arms, horizon, and the oracle that
// decides which pull counts as a failure.
struct ProblemSpec {
  std::string name;
  std::vector<ArmSpec> arms;
  std::int64_t horizon;
  OracleKind failure_oracle = OracleKind::ExpectedImprovement;

  void validate(int init_pulls_per_arm) const;
};

// The three benchmark problems: easy (1,1)(0,2)(-1,3), difficult
// (-0.2,1.1)(0,1)(-0.8,1.2), unfavorable (1,1)(0,1)(-1,1).
ProblemSpec make_problem(std::string_view name, std::int64_t horizon,
                         OracleKind failure_oracle);

struct Checkpoint {
  std::int64_t t;
  double r_max;
  std::int64_t failures;
};

struct RunSummary {
  int run_id;
  std::uint64_t seed;
  std::vector<Checkpoint> trajectory;
};

// Logarithmic grid of checkpoint rounds: at most 40 per decade, always
// including 1 and the horizon.
std::vector<std::int64_t> checkpoint_grid(std::int64_t horizon);

// Simulates one episode. Per round: evaluate the failure oracle from the
// true arms and the realized running maximum, let the policy pick, sample a
// reward, update statistics. Deterministic given the seed.
RunSummary run_episode(const ProblemSpec& problem, const PolicyConfig& policy,
                       std::uint64_t seed, int run_id = 0);

// Independent replications with per-run seeds derived from the master seed
// by a counter hash; executes on up to `threads` workers. Results come back
// ordered by run id regardless of scheduling.
std::vector<RunSummary> run_replications(const ProblemSpec& problem,
                                         const PolicyConfig& policy, int runs,
                                         std::uint64_t master_seed, int threads);

struct MetricSummary {
  std::vector<std::int64_t> t;
  std::vector<double> mean;
  std::vector<double> std_error;
};

struct AggregateSummary {
  MetricSummary r_max;
  MetricSummary failures;
};

// Per-checkpoint mean and standard error (sample std / sqrt(runs)) of both
// metrics. Requires >= 2 runs on identical checkpoint grids.
AggregateSummary aggregate(std::span<const RunSummary> runs);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

// Ordinary least squares of N against ln t. Needs >= 3 points, all t > 1.
// R^2 is 0 by convention when the N values are constant.
LinearFit fit_loglinear(std::span<const std::pair<double, double>> points);

// CSV schema: run_id,seed,t,r_max,failures (header row, one row per
// run x checkpoint).
void emit_runs_csv(std::span<const RunSummary> runs, std::ostream& out);
void emit_runs_csv(std::span<const RunSummary> runs,
                   const std::filesystem::path& path);

// Summary CSV schema: t,metric,mean,stderr with metric in {r_max, failures}.
void emit_summary_csv(const AggregateSummary& summary, std::ostream& out);
void emit_summary_csv(const AggregateSummary& summary,
                      const std::filesystem::path& path);

}  // namespace banditlab
