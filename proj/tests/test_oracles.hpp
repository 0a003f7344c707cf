// Independent numerical oracles used only by the test suites: adaptive
// quadrature of the defining integrals, CDFs assembled from those, and
// bracketed bisection inverses. None of this shares code with the library's
// closed-form / continued-fraction implementations.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double eps, int depth = 40) {
  const double m = 0.5 * (a + b);
  const double whole = simpson(f, a, b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, eps / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, eps / 2.0, depth - 1);
}

// erfc by quadrature of its defining integral 2/sqrt(pi) * int_x^inf e^{-u^2}.
inline double erfc_quadrature(double x) {
  constexpr double two_over_sqrt_pi = 1.1283791670955126;
  const double upper = std::max(x, 0.0) + 30.0;
  if (x >= upper) return 0.0;
  const double tail = adaptive_simpson(
      [](double u) { return std::exp(-u * u); }, x, upper, 1e-14);
  return two_over_sqrt_pi * tail;
}

// ierfc by quadrature of erfc over [x, inf) -- a different route than the
// closed form exp(-x^2)/sqrt(pi) - x erfc(x) used by the library.
inline double ierfc_quadrature(double x) {
  const double upper = std::max(x, 0.0) + 30.0;
  if (x >= upper) return 0.0;
  return adaptive_simpson([](double u) { return std::erfc(u); }, x, upper, 1e-13);
}

// Student t CDF by quadrature of the density. The half-infinite tail is
// mapped onto [0,1) via u = x + t/(1-t) so heavy tails lose no mass.
inline double student_t_cdf_quadrature(double x, int dof) {
  const double v = dof;
  const double norm =
      std::exp(std::lgamma((v + 1.0) / 2.0) - std::lgamma(v / 2.0)) /
      std::sqrt(v * 3.14159265358979323846);
  const auto pdf = [v, norm](double u) {
    return norm * std::pow(1.0 + u * u / v, -(v + 1.0) / 2.0);
  };
  const double from = std::fabs(x);
  const auto mapped = [&](double t) {
    if (t >= 1.0) return dof == 1 ? norm : 0.0;
    const double u = from + t / (1.0 - t);
    return pdf(u) / ((1.0 - t) * (1.0 - t));
  };
  const double tail = adaptive_simpson(mapped, 0.0, 1.0, 1e-13);
  return x >= 0.0 ? 1.0 - tail : tail;
}

// Chi-square CDF by quadrature of the density.
inline double chi_square_cdf_quadrature(double x, int dof) {
  if (x <= 0.0) return 0.0;
  const double a = dof / 2.0;
  const double log_norm = -a * std::log(2.0) - std::lgamma(a);
  const auto pdf = [a, log_norm](double u) {
    return u <= 0.0 ? 0.0 : std::exp(log_norm + (a - 1.0) * std::log(u) - u / 2.0);
  };
  return adaptive_simpson(pdf, 0.0, x, 1e-13);
}

// Bracketed bisection of a monotone CDF.
inline double invert_by_bisection(const std::function<double(double)>& cdf,
                                  double level, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < level) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

// Critical value of the two-sample KS test at significance alpha.
inline double ks_critical(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) /
                       (static_cast<double>(n) * static_cast<double>(m)));
}

}  // namespace oracles
