#include "banditlab/experiments.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "banditlab/csv.hpp"
#include "banditlab/parallel.hpp"

namespace banditlab {

void ProblemSpec::validate(int init_pulls_per_arm) const {
  if (arms.empty()) throw std::invalid_argument("problem '" + name + "': no arms");
  for (const ArmSpec& arm : arms) {
    if (!(arm.sigma > 0.0)) {
      throw std::invalid_argument("problem '" + name + "': sigma must be > 0");
    }
  }
  const auto min_horizon =
      static_cast<std::int64_t>(arms.size()) * init_pulls_per_arm;
  if (horizon < std::max<std::int64_t>(1, min_horizon)) {
    throw std::invalid_argument("problem '" + name +
                                "': horizon too short for initialization");
  }
}

ProblemSpec make_problem(std::string_view name, std::int64_t horizon,
                         OracleKind failure_oracle) {
  ProblemSpec p;
  p.name = std::string(name);
  p.horizon = horizon;
  p.failure_oracle = failure_oracle;
  if (name == "easy") {
    p.arms = {{1.0, 1.0}, {0.0, 2.0}, {-1.0, 3.0}};
  } else if (name == "difficult") {
    p.arms = {{-0.2, 1.1}, {0.0, 1.0}, {-0.8, 1.2}};
  } else if (name == "unfavorable") {
    p.arms = {{1.0, 1.0}, {0.0, 1.0}, {-1.0, 1.0}};
  } else {
    throw std::invalid_argument("unknown problem '" + std::string(name) +
                                "' (expected easy, difficult, or unfavorable)");
  }
  return p;
}

std::vector<std::int64_t> checkpoint_grid(std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("checkpoint_grid: horizon < 1");
  std::vector<std::int64_t> grid;
  const double decades = std::log10(static_cast<double>(horizon));
  const int steps = static_cast<int>(std::ceil(decades * 40.0));
  std::int64_t prev = 0;
  for (int i = 0; i <= steps; ++i) {
    auto t = static_cast<std::int64_t>(
        std::llround(std::pow(10.0, static_cast<double>(i) / 40.0)));
    t = std::min(t, horizon);
    if (t > prev) {
      grid.push_back(t);
      prev = t;
    }
  }
  if (grid.empty() || grid.back() != horizon) grid.push_back(horizon);
  return grid;
}

RunSummary run_episode(const ProblemSpec& problem, const PolicyConfig& policy,
                       std::uint64_t seed, int run_id) {
  policy.validate();
  problem.validate(policy.init_pulls_per_arm);

  Rng rng(seed);
  SufficientStats stats(problem.arms.size());
  const std::vector<std::int64_t> grid = checkpoint_grid(problem.horizon);

  RunSummary summary;
  summary.run_id = run_id;
  summary.seed = seed;
  summary.trajectory.reserve(grid.size());

  std::int64_t failures = 0;
  std::size_t next_checkpoint = 0;
  for (std::int64_t t = 1; t <= problem.horizon; ++t) {
    const std::size_t oracle_best =
        best_arm(problem.failure_oracle, problem.arms, stats.r_max());
    const IndexReport report = select_arm(policy, stats, rng);
    const double reward = sample_reward(problem.arms[report.chosen], rng);
    stats.update(report.chosen, reward);
    if (report.chosen != oracle_best) ++failures;
    if (t == grid[next_checkpoint]) {
      summary.trajectory.push_back({t, stats.r_max(), failures});
      ++next_checkpoint;
    }
  }
  return summary;
}

std::vector<RunSummary> run_replications(const ProblemSpec& problem,
                                         const PolicyConfig& policy, int runs,
                                         std::uint64_t master_seed, int threads) {
  if (runs < 1) throw std::invalid_argument("run_replications: runs must be >= 1");
  std::vector<RunSummary> results(static_cast<std::size_t>(runs));
  parallel_for_runs(runs, threads, [&](int run_id) {
    const std::uint64_t seed =
        Rng::derive_stream(master_seed, static_cast<std::uint64_t>(run_id));
    results[static_cast<std::size_t>(run_id)] =
        run_episode(problem, policy, seed, run_id);
  });
  return results;
}

AggregateSummary aggregate(std::span<const RunSummary> runs) {
  if (runs.size() < 2) {
    throw std::domain_error("aggregate: need at least two runs");
  }
  const std::size_t points = runs.front().trajectory.size();
  for (const RunSummary& run : runs) {
    if (run.trajectory.size() != points) {
      throw std::domain_error("aggregate: mismatched checkpoint grids");
    }
    for (std::size_t i = 0; i < points; ++i) {
      if (run.trajectory[i].t != runs.front().trajectory[i].t) {
        throw std::domain_error("aggregate: mismatched checkpoint grids");
      }
    }
  }

  AggregateSummary out;
  const double r = static_cast<double>(runs.size());
  for (std::size_t i = 0; i < points; ++i) {
    const std::int64_t t = runs.front().trajectory[i].t;
    double sum_m = 0.0, sum_f = 0.0;
    for (const RunSummary& run : runs) {
      sum_m += run.trajectory[i].r_max;
      sum_f += static_cast<double>(run.trajectory[i].failures);
    }
    const double mean_m = sum_m / r;
    const double mean_f = sum_f / r;
    double ss_m = 0.0, ss_f = 0.0;
    for (const RunSummary& run : runs) {
      const double dm = run.trajectory[i].r_max - mean_m;
      const double df = static_cast<double>(run.trajectory[i].failures) - mean_f;
      ss_m += dm * dm;
      ss_f += df * df;
    }
    out.r_max.t.push_back(t);
    out.r_max.mean.push_back(mean_m);
    out.r_max.std_error.push_back(std::sqrt(ss_m / (r - 1.0) / r));
    out.failures.t.push_back(t);
    out.failures.mean.push_back(mean_f);
    out.failures.std_error.push_back(std::sqrt(ss_f / (r - 1.0) / r));
  }
  return out;
}

LinearFit fit_loglinear(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw std::domain_error("fit_loglinear: need at least three points");
  }
  for (const auto& [t, n] : points) {
    if (!(t > 1.0)) throw std::domain_error("fit_loglinear: rounds must be > 1");
  }
  const double m = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [t, n] : points) {
    sx += std::log(t);
    sy += n;
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [t, n] : points) {
    const double dx = std::log(t) - mx;
    const double dy = n - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw std::domain_error("fit_loglinear: rounds are not distinct");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  LinearFit fit{slope, intercept, 0.0};
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (const auto& [t, n] : points) {
      const double resid = n - (intercept + slope * std::log(t));
      ss_res += resid * resid;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

void emit_runs_csv(std::span<const RunSummary> runs, std::ostream& out) {
  out << "run_id,seed,t,r_max,failures\n";
  for (const RunSummary& run : runs) {
    for (const Checkpoint& cp : run.trajectory) {
      out << run.run_id << ',' << run.seed << ',' << cp.t << ','
          << format_double(cp.r_max) << ',' << cp.failures << '\n';
    }
  }
}

namespace {

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void emit_runs_csv(std::span<const RunSummary> runs,
                   const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { emit_runs_csv(runs, out); });
}

void emit_summary_csv(const AggregateSummary& summary, std::ostream& out) {
  out << "t,metric,mean,stderr\n";
  const auto emit_metric = [&out](const char* name, const MetricSummary& m) {
    for (std::size_t i = 0; i < m.t.size(); ++i) {
      out << m.t[i] << ',' << name << ',' << format_double(m.mean[i]) << ','
          << format_double(m.std_error[i]) << '\n';
    }
  };
  emit_metric("r_max", summary.r_max);
  emit_metric("failures", summary.failures);
}

void emit_summary_csv(const AggregateSummary& summary,
                      const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { emit_summary_csv(summary, out); });
}

}  // namespace banditlab
