#include "banditlab/bandit.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "banditlab/special_math.hpp"

namespace banditlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

OracleKind oracle_from_name(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "mean") return OracleKind::Mean;
  if (lower == "ei") return OracleKind::ExpectedImprovement;
  if (lower == "pi") return OracleKind::ProbabilityOfImprovement;
  throw std::invalid_argument("unknown oracle '" + std::string(name) +
                              "' (expected mean, ei, or pi)");
}

const char* oracle_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::Mean: return "mean";
    case OracleKind::ExpectedImprovement: return "ei";
    case OracleKind::ProbabilityOfImprovement: return "pi";
  }
  return "?";
}

double sample_reward(const ArmSpec& arm, Rng& rng) {
  if (!(arm.sigma > 0.0)) {
    throw std::invalid_argument("sample_reward: sigma must be > 0");
  }
  return rng.next_gaussian(arm.mu, arm.sigma);
}

double oracle_value(OracleKind kind, const ArmSpec& arm, double r_max) {
  if (!(arm.sigma > 0.0)) {
    throw std::invalid_argument("oracle_value: sigma must be > 0");
  }
  if (kind == OracleKind::Mean) return arm.mu;
  if (r_max == -kInf) {
    // No reward observed yet: improvement over -inf is certain.
    return kind == OracleKind::ExpectedImprovement ? kInf : 1.0;
  }
  const double zeta = (r_max - arm.mu) / (std::numbers::sqrt2 * arm.sigma);
  if (kind == OracleKind::ExpectedImprovement) {
    return arm.sigma * ierfc(zeta) / std::numbers::sqrt2;
  }
  return erfc(zeta) / 2.0;
}

std::size_t best_arm(OracleKind kind, std::span<const ArmSpec> arms, double r_max) {
  if (arms.empty()) throw std::domain_error("best_arm: no arms");
  std::size_t best = 0;
  double best_value = oracle_value(kind, arms[0], r_max);
  for (std::size_t k = 1; k < arms.size(); ++k) {
    const double v = oracle_value(kind, arms[k], r_max);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  return best;
}

std::vector<std::int64_t> count_failures(std::span<const PullRecord> history) {
  std::vector<std::int64_t> cumulative;
  cumulative.reserve(history.size());
  std::int64_t failures = 0;
  std::int64_t prev_round = std::numeric_limits<std::int64_t>::min();
  for (const PullRecord& rec : history) {
    if (rec.round <= prev_round) {
      throw std::domain_error("count_failures: rounds out of order");
    }
    prev_round = rec.round;
    if (rec.arm != rec.oracle_best) ++failures;
    cumulative.push_back(failures);
  }
  return cumulative;
}

SufficientStats::SufficientStats(std::size_t num_arms)
    : arms_(num_arms), r_max_(-kInf) {
  if (num_arms == 0) throw std::invalid_argument("SufficientStats: no arms");
}

const SufficientStats::Welford& SufficientStats::at(std::size_t arm) const {
  if (arm >= arms_.size()) throw std::out_of_range("SufficientStats: bad arm index");
  return arms_[arm];
}

void SufficientStats::update(std::size_t arm, double reward) {
  if (arm >= arms_.size()) throw std::out_of_range("SufficientStats: bad arm index");
  Welford& w = arms_[arm];
  ++w.n;
  const double delta = reward - w.mean;
  w.mean += delta / static_cast<double>(w.n);
  w.m2 += delta * (reward - w.mean);
  r_max_ = std::max(r_max_, reward);
  ++total_pulls_;
}

std::int64_t SufficientStats::count(std::size_t arm) const { return at(arm).n; }

double SufficientStats::mean(std::size_t arm) const {
  const Welford& w = at(arm);
  if (w.n < 1) throw std::domain_error("SufficientStats: mean of unpulled arm");
  return w.mean;
}

double SufficientStats::variance(std::size_t arm) const {
  const Welford& w = at(arm);
  if (w.n < 2) throw std::domain_error("SufficientStats: variance needs two pulls");
  return w.m2 / static_cast<double>(w.n - 1);
}

}  // namespace banditlab
