#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "banditlab/bandit.hpp"
#include "banditlab/rng.hpp"

namespace banditlab {

enum class PolicyKind { ClassicalUcb, MaxSearchGaussian, Piucb, UniformRandom };

// Selection policy plus its exploration constants. Built via parse() from
// the CLI spellings: ucb[:c], maxsearch[:c_mu,c_sigma], piucb:c_mu,c_sigma,
// piucb1 (= piucb:sqrt2,sqrt2), piucb2 (= piucb:0.5,sqrt2), random.
// parse() applies per-policy defaults: ucb c = sqrt2, maxsearch
// (c_mu, c_sigma) = (0.5, sqrt2).
struct PolicyConfig {
  PolicyKind kind = PolicyKind::ClassicalUcb;
  double c = 1.4142135623730951;        // classical UCB exploration constant
  double c_mu = 1.4142135623730951;     // mean-bound schedule exponent
  double c_sigma = 1.4142135623730951;  // variance-bound schedule exponent
  int init_pulls_per_arm = 1;

  static PolicyConfig parse(std::string_view spec);
  std::string name() const;

  // Pulls an arm needs before its index is defined (else +inf forces it).
  int min_pulls_for_index() const;
  void validate() const;
};

// Upper confidence bounds for a Gaussian arm's mean and standard deviation,
// from Student t and chi-square quantiles at levels derived from
// alpha_mu(t) = t^(-c_mu^2/2) and alpha_sigma(t) = t^(-c_sigma^2/2), both
// clamped to [1e-12, 0.5].
struct GaussianBounds {
  double mu_plus;
  double sigma_plus;
};

// Low-level index formulas on raw statistics. `round` is the current round t.
double classical_ucb_index(double sample_mean, std::int64_t pulls, double round,
                           double c);
std::optional<GaussianBounds> confidence_bounds_gaussian(double sample_mean,
                                                         double sample_variance,
                                                         std::int64_t pulls,
                                                         double round, double c_mu,
                                                         double c_sigma);
// Reduced improvement-probability index (mu_plus - r_max) / sigma_plus.
double piucb_index(const GaussianBounds& bounds, double r_max);
// Expected-improvement upper bound sigma_plus * ierfc(zeta_plus) / sqrt(2).
double maxsearch_index(const GaussianBounds& bounds, double r_max);

// Wrappers reading one arm out of a SufficientStats. All of them return
// +inf when the arm has too few pulls for the formula ("force exploration"),
// and the improvement-based ones also return +inf while r_max is -inf.
double classical_ucb_index(const SufficientStats& stats, std::size_t arm, double c);
std::optional<GaussianBounds> confidence_bounds_gaussian(const SufficientStats& stats,
                                                         std::size_t arm,
                                                         double c_mu, double c_sigma);
double piucb_index(const SufficientStats& stats, std::size_t arm, double c_mu,
                   double c_sigma);
double maxsearch_index(const SufficientStats& stats, std::size_t arm, double c_mu,
                       double c_sigma);

// Snapshot of one arm for callers that keep their own statistics (the tree
// search does). `variance` is ignored unless count >= 2.
struct ArmSnapshot {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
};

// Index of one arm under the configured policy; UniformRandom is a constant
// 0 so that tie-breaking yields a uniform choice.
double policy_index(const PolicyConfig& policy, const ArmSnapshot& arm,
                    double round, double r_max);
double policy_index(const PolicyConfig& policy, const SufficientStats& stats,
                    std::size_t arm);

// Argmax with exact ties broken uniformly at random.
std::size_t pick_argmax(std::span<const double> index, Rng& rng,
                        bool* tie_broken = nullptr);

struct IndexReport {
  std::vector<double> index;
  std::size_t chosen;
  bool tie_broken;
};

// One selection step: forced round-robin initialization while any arm has
// fewer than init_pulls_per_arm pulls, then argmax of the policy index.
IndexReport select_arm(const PolicyConfig& policy, const SufficientStats& stats,
                       Rng& rng);

}  // namespace banditlab
