#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "banditlab/rng.hpp"

namespace banditlab {

// Hidden Gaussian parameters of one arm's reward distribution.
struct ArmSpec {
  double mu;
  double sigma;  // > 0
};

// Which per-arm quantity defines the "correct" arm at a given round.
enum class OracleKind { Mean, ExpectedImprovement, ProbabilityOfImprovement };

OracleKind oracle_from_name(std::string_view name);  // mean | ei | pi
const char* oracle_name(OracleKind kind);

// One Gaussian draw; consumes exactly one uniform from the generator.
double sample_reward(const ArmSpec& arm, Rng& rng);

// Value of the oracle quantity for one arm given the running maximum reward.
//   Mean                      -> mu (ignores r_max)
//   ExpectedImprovement       -> sigma * ierfc(zeta) / sqrt(2)
//   ProbabilityOfImprovement  -> erfc(zeta) / 2
// with zeta = (r_max - mu) / (sqrt(2) * sigma). With r_max = -inf (no reward
// observed yet) EI is +inf and PI is 1 for every arm.
double oracle_value(OracleKind kind, const ArmSpec& arm, double r_max);

// Index of the arm maximizing the oracle value; ties go to the lowest index.
std::size_t best_arm(OracleKind kind, std::span<const ArmSpec> arms, double r_max);

// One simulated round: what was pulled vs. what the oracle preferred.
struct PullRecord {
  std::int64_t round;
  std::size_t arm;
  double reward;
  std::size_t oracle_best;
  bool failure;  // arm != oracle_best
};

// Cumulative failure counts N(t), one entry per record. Rounds must be
// strictly increasing.
std::vector<std::int64_t> count_failures(std::span<const PullRecord> history);

// Per-arm pull counts with running mean/variance (Welford) plus the global
// running maximum reward and the current round index t = 1 + total pulls.
class SufficientStats {
 public:
  explicit SufficientStats(std::size_t num_arms);

  void update(std::size_t arm, double reward);

  std::size_t num_arms() const { return arms_.size(); }
  std::int64_t count(std::size_t arm) const;
  double mean(std::size_t arm) const;      // requires count >= 1
  double variance(std::size_t arm) const;  // unbiased; requires count >= 2
  double r_max() const { return r_max_; }  // -inf before the first reward
  std::int64_t round() const { return total_pulls_ + 1; }
  std::int64_t total_pulls() const { return total_pulls_; }

 private:
  struct Welford {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  const Welford& at(std::size_t arm) const;

  std::vector<Welford> arms_;
  double r_max_;
  std::int64_t total_pulls_ = 0;
};

}  // namespace banditlab
