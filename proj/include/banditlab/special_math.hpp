#pragma once

#include <cstdint>
#include <span>

namespace banditlab {

// Quantile lookup parameters shared by the Student t and chi-square inverses.
struct QuantileRequest {
  double level;            // probability in (0,1)
  int degrees_of_freedom;  // >= 1
};

// Complementary error function. Rejects non-finite input.
double erfc(double x);

// Integral of erfc over [x, inf): exp(-x^2)/sqrt(pi) - x*erfc(x).
// Nonnegative and strictly decreasing. Rejects non-finite input.
double ierfc(double x);

// Inverse standard normal CDF, accurate to ~1e-15 (Acklam's rational
// approximation followed by one Halley refinement against erfc).
double normal_quantile(double p);

double student_t_cdf(double x, int degrees_of_freedom);
double chi_square_cdf(double x, int degrees_of_freedom);

// Monotone numerical inversions of the CDFs above (safeguarded Newton
// within a verified bracket, absolute tolerance well below 1e-9).
double student_t_quantile(const QuantileRequest& req);
double chi_square_quantile(const QuantileRequest& req);

// Regularized incomplete beta / lower gamma, exposed for the CDFs and
// cross-checks.
double regularized_incomplete_beta(double x, double a, double b);
double regularized_lower_gamma(double a, double x);

enum class BootstrapStatistic { Median };

struct BootstrapInterval {
  double lo;
  double hi;
};

// Percentile bootstrap interval of the statistic, deterministic given seed.
BootstrapInterval bootstrap_percentile_ci(std::span<const double> samples,
                                          BootstrapStatistic statistic,
                                          int resamples, double confidence,
                                          std::uint64_t seed);

}  // namespace banditlab
