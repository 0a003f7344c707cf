#include "banditlab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "banditlab/special_math.hpp"

namespace banditlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAlphaFloor = 1e-12;

double clamp_alpha(double round, double c) {
  return std::clamp(std::pow(round, -c * c / 2.0), kAlphaFloor, 0.5);
}

// "name:1.5,2" -> {1.5, 2}; missing parameter list keeps the defaults.
std::vector<double> parse_params(std::string_view text, std::size_t expected,
                                 std::string_view what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token(text.substr(pos, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - pos));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.empty() || !(value > 0.0)) {
      throw std::invalid_argument("invalid parameter '" + token + "' for " +
                                  std::string(what));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) +
                                " parameter(s) for " + std::string(what));
  }
  return out;
}

}  // namespace

PolicyConfig PolicyConfig::parse(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view params =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_params = colon != std::string_view::npos;

  PolicyConfig cfg;
  if (head == "ucb") {
    cfg.kind = PolicyKind::ClassicalUcb;
    cfg.init_pulls_per_arm = 1;
    if (has_params) cfg.c = parse_params(params, 1, head)[0];
    return cfg;
  }
  if (head == "maxsearch" || head == "piucb") {
    cfg.kind = head == "maxsearch" ? PolicyKind::MaxSearchGaussian : PolicyKind::Piucb;
    cfg.init_pulls_per_arm = 2;
    if (head == "maxsearch") cfg.c_mu = 0.5;
    if (head == "piucb" && !has_params) {
      throw std::invalid_argument("piucb requires parameters (or use piucb1/piucb2)");
    }
    if (has_params) {
      const auto v = parse_params(params, 2, head);
      cfg.c_mu = v[0];
      cfg.c_sigma = v[1];
    }
    return cfg;
  }
  if (head == "piucb1" || head == "piucb2") {
    if (has_params) throw std::invalid_argument(std::string(head) + " takes no parameters");
    cfg.kind = PolicyKind::Piucb;
    cfg.init_pulls_per_arm = 2;
    cfg.c_mu = head == "piucb1" ? std::numbers::sqrt2 : 0.5;
    cfg.c_sigma = std::numbers::sqrt2;
    return cfg;
  }
  if (head == "random") {
    if (has_params) throw std::invalid_argument("random takes no parameters");
    cfg.kind = PolicyKind::UniformRandom;
    cfg.init_pulls_per_arm = 0;
    return cfg;
  }
  throw std::invalid_argument("unknown policy '" + std::string(spec) + "'");
}

std::string PolicyConfig::name() const {
  switch (kind) {
    case PolicyKind::ClassicalUcb: return "ucb:" + std::to_string(c);
    case PolicyKind::MaxSearchGaussian:
      return "maxsearch:" + std::to_string(c_mu) + "," + std::to_string(c_sigma);
    case PolicyKind::Piucb:
      return "piucb:" + std::to_string(c_mu) + "," + std::to_string(c_sigma);
    case PolicyKind::UniformRandom: return "random";
  }
  return "?";
}

int PolicyConfig::min_pulls_for_index() const {
  switch (kind) {
    case PolicyKind::ClassicalUcb: return 1;
    case PolicyKind::MaxSearchGaussian:
    case PolicyKind::Piucb: return 2;
    case PolicyKind::UniformRandom: return 0;
  }
  return 0;
}

void PolicyConfig::validate() const {
  if (kind == PolicyKind::ClassicalUcb && !(c > 0.0)) {
    throw std::invalid_argument("ucb: c must be > 0");
  }
  if ((kind == PolicyKind::MaxSearchGaussian || kind == PolicyKind::Piucb) &&
      (!(c_mu > 0.0) || !(c_sigma > 0.0))) {
    throw std::invalid_argument("maxsearch/piucb: c_mu and c_sigma must be > 0");
  }
  if (init_pulls_per_arm < min_pulls_for_index()) {
    throw std::invalid_argument("init pulls per arm too small for policy '" +
                                name() + "' (needs at least " +
                                std::to_string(min_pulls_for_index()) + ")");
  }
}

double classical_ucb_index(double sample_mean, std::int64_t pulls, double round,
                           double c) {
  if (pulls < 1) return kInf;
  return sample_mean + c * std::sqrt(std::log(round) / static_cast<double>(pulls));
}

std::optional<GaussianBounds> confidence_bounds_gaussian(double sample_mean,
                                                         double sample_variance,
                                                         std::int64_t pulls,
                                                         double round, double c_mu,
                                                         double c_sigma) {
  if (pulls < 2) return std::nullopt;
  const double alpha_mu = clamp_alpha(round, c_mu);
  const double alpha_sigma = clamp_alpha(round, c_sigma);
  const int dof = static_cast<int>(pulls - 1);
  const double sd = std::sqrt(sample_variance);
  const double tq = student_t_quantile({1.0 - alpha_mu / 2.0, dof});
  const double mu_plus =
      sample_mean + sd * tq / std::sqrt(static_cast<double>(pulls));
  const double chi = chi_square_quantile({alpha_sigma / 2.0, dof});
  const double sigma_plus =
      std::sqrt(static_cast<double>(dof) * sample_variance / chi);
  return GaussianBounds{mu_plus, sigma_plus};
}

double piucb_index(const GaussianBounds& bounds, double r_max) {
  if (r_max == -kInf) return kInf;
  const double gap = bounds.mu_plus - r_max;
  if (!(bounds.sigma_plus > 0.0)) {
    return gap > 0.0 ? kInf : (gap < 0.0 ? -kInf : 0.0);
  }
  return gap / bounds.sigma_plus;
}

double maxsearch_index(const GaussianBounds& bounds, double r_max) {
  if (r_max == -kInf) return kInf;
  const double gap = bounds.mu_plus - r_max;
  if (!(bounds.sigma_plus > 0.0)) return std::max(gap, 0.0);
  const double zeta = -gap / (std::numbers::sqrt2 * bounds.sigma_plus);
  return bounds.sigma_plus * ierfc(zeta) / std::numbers::sqrt2;
}

double classical_ucb_index(const SufficientStats& stats, std::size_t arm, double c) {
  const std::int64_t n = stats.count(arm);
  if (n < 1) return kInf;
  return classical_ucb_index(stats.mean(arm), n,
                             static_cast<double>(stats.round()), c);
}

std::optional<GaussianBounds> confidence_bounds_gaussian(const SufficientStats& stats,
                                                         std::size_t arm,
                                                         double c_mu, double c_sigma) {
  const std::int64_t n = stats.count(arm);
  if (n < 2) return std::nullopt;
  return confidence_bounds_gaussian(stats.mean(arm), stats.variance(arm), n,
                                    static_cast<double>(stats.round()), c_mu,
                                    c_sigma);
}

double piucb_index(const SufficientStats& stats, std::size_t arm, double c_mu,
                   double c_sigma) {
  const auto bounds = confidence_bounds_gaussian(stats, arm, c_mu, c_sigma);
  if (!bounds) return kInf;
  return piucb_index(*bounds, stats.r_max());
}

double maxsearch_index(const SufficientStats& stats, std::size_t arm, double c_mu,
                       double c_sigma) {
  const auto bounds = confidence_bounds_gaussian(stats, arm, c_mu, c_sigma);
  if (!bounds) return kInf;
  return maxsearch_index(*bounds, stats.r_max());
}

double policy_index(const PolicyConfig& policy, const ArmSnapshot& arm,
                    double round, double r_max) {
  switch (policy.kind) {
    case PolicyKind::UniformRandom:
      return 0.0;
    case PolicyKind::ClassicalUcb:
      return classical_ucb_index(arm.mean, arm.count, round, policy.c);
    case PolicyKind::MaxSearchGaussian:
    case PolicyKind::Piucb: {
      const auto bounds = confidence_bounds_gaussian(
          arm.mean, arm.variance, arm.count, round, policy.c_mu, policy.c_sigma);
      if (!bounds) return kInf;
      return policy.kind == PolicyKind::Piucb ? piucb_index(*bounds, r_max)
                                              : maxsearch_index(*bounds, r_max);
    }
  }
  return 0.0;
}

double policy_index(const PolicyConfig& policy, const SufficientStats& stats,
                    std::size_t arm) {
  const std::int64_t n = stats.count(arm);
  ArmSnapshot snap{n, n >= 1 ? stats.mean(arm) : 0.0,
                   n >= 2 ? stats.variance(arm) : 0.0};
  return policy_index(policy, snap, static_cast<double>(stats.round()),
                      stats.r_max());
}

std::size_t pick_argmax(std::span<const double> index, Rng& rng, bool* tie_broken) {
  if (index.empty()) throw std::domain_error("pick_argmax: empty index vector");
  double best = -kInf;
  bool seen = false;
  for (const double v : index) {
    if (std::isnan(v)) continue;
    if (!seen || v > best) {
      best = v;
      seen = true;
    }
  }
  if (!seen) throw std::domain_error("pick_argmax: all indices are NaN");
  std::vector<std::size_t> ties;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] == best) ties.push_back(k);
  }
  if (tie_broken) *tie_broken = ties.size() > 1;
  if (ties.size() == 1) return ties.front();
  return ties[rng.next_below(ties.size())];
}

IndexReport select_arm(const PolicyConfig& policy, const SufficientStats& stats,
                       Rng& rng) {
  const std::size_t num_arms = stats.num_arms();
  IndexReport report;
  report.index.resize(num_arms);
  report.tie_broken = false;

  // Forced initialization: round-robin over under-initialized arms (fewest
  // pulls first, lowest index among those).
  if (policy.init_pulls_per_arm > 0) {
    std::size_t pick = num_arms;
    for (std::size_t k = 0; k < num_arms; ++k) {
      if (stats.count(k) < policy.init_pulls_per_arm &&
          (pick == num_arms || stats.count(k) < stats.count(pick))) {
        pick = k;
      }
    }
    if (pick != num_arms) {
      for (std::size_t k = 0; k < num_arms; ++k) {
        report.index[k] = stats.count(k) < policy.init_pulls_per_arm
                              ? kInf
                              : policy_index(policy, stats, k);
      }
      report.chosen = pick;
      return report;
    }
  }

  for (std::size_t k = 0; k < num_arms; ++k) {
    report.index[k] = policy_index(policy, stats, k);
  }
  report.chosen = pick_argmax(report.index, rng, &report.tie_broken);
  return report;
}

}  // namespace banditlab
