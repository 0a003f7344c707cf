#include "banditlab/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "banditlab/rng.hpp"

namespace banditlab {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double lgamma_safe(double x) {
#if defined(__unix__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(fn) + ": non-finite argument");
  }
}

void require_quantile_args(const QuantileRequest& req, const char* fn) {
  if (!(req.level > 0.0 && req.level < 1.0)) {
    throw std::domain_error(std::string(fn) + ": level must lie in (0,1)");
  }
  if (req.degrees_of_freedom < 1) {
    throw std::domain_error(std::string(fn) + ": degrees of freedom must be >= 1");
  }
}

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_continued_fraction(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

// Lower regularized gamma by series expansion, valid for x < a + 1.
double gamma_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 100000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - lgamma_safe(a));
}

// Upper regularized gamma by continued fraction, valid for x >= a + 1.
double gamma_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - lgamma_safe(a));
}

double student_t_pdf(double x, int dof) {
  const double v = dof;
  return std::exp(lgamma_safe((v + 1.0) / 2.0) - lgamma_safe(v / 2.0) -
                  0.5 * std::log(v * std::numbers::pi) -
                  (v + 1.0) / 2.0 * std::log1p(x * x / v));
}

double chi_square_pdf(double x, int dof) {
  if (x <= 0.0) return 0.0;
  const double a = dof / 2.0;
  return std::exp((a - 1.0) * std::log(x) - x / 2.0 - a * std::numbers::ln2 -
                  lgamma_safe(a));
}

// Safeguarded Newton inside a bracket [lo, hi] with f(lo) < 0 < f(hi),
// where f(q) = cdf(q) - level. Falls back to bisection whenever a Newton
// step leaves the bracket or the derivative underflows.
template <typename Cdf, typename Pdf>
double invert_cdf(Cdf cdf, Pdf pdf, double level, double lo, double hi,
                  double guess) {
  double x = std::clamp(guess, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double f = cdf(x) - level;
    if (f == 0.0) return x;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double width = hi - lo;
    if (width < 1e-13 * (1.0 + std::fabs(lo) + std::fabs(hi))) break;
    const double slope = pdf(x);
    double next = x - f / slope;
    if (!(slope > 0.0) || !(next > lo) || !(next < hi)) {
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  return 0.5 * (lo + hi);
}

// Acklam's rational approximation to the inverse normal CDF.
double normal_quantile_approx(double p) {
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double erfc(double x) {
  require_finite(x, "erfc");
  return std::erfc(x);
}

double ierfc(double x) {
  require_finite(x, "ierfc");
  const double v = std::exp(-x * x) / kSqrtPi - x * std::erfc(x);
  return std::max(v, 0.0);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0,1)");
  }
  double x = normal_quantile_approx(p);
  // One Halley step against the erfc-based CDF.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0) || !(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("regularized_incomplete_beta: invalid arguments");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = a * std::log(x) + b * std::log1p(-x) -
                          (lgamma_safe(a) + lgamma_safe(b) - lgamma_safe(a + b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(ln_front) * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - std::exp(ln_front) * beta_continued_fraction(1.0 - x, b, a) / b;
}

double regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw std::domain_error("regularized_lower_gamma: invalid arguments");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double student_t_cdf(double x, int dof) {
  if (dof < 1) throw std::domain_error("student_t_cdf: dof must be >= 1");
  require_finite(x, "student_t_cdf");
  const double v = dof;
  const double ib = regularized_incomplete_beta(v / (v + x * x), v / 2.0, 0.5);
  return x >= 0.0 ? 1.0 - ib / 2.0 : ib / 2.0;
}

double chi_square_cdf(double x, int dof) {
  if (dof < 1) throw std::domain_error("chi_square_cdf: dof must be >= 1");
  require_finite(x, "chi_square_cdf");
  if (x <= 0.0) return 0.0;
  return regularized_lower_gamma(dof / 2.0, x / 2.0);
}

double student_t_quantile(const QuantileRequest& req) {
  require_quantile_args(req, "student_t_quantile");
  const double p = req.level;
  const int n = req.degrees_of_freedom;
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile({1.0 - p, n});
  // Closed forms for the heavy-tailed low orders.
  if (n == 1) return std::tan(std::numbers::pi * (p - 0.5));
  if (n == 2) {
    const double a = 2.0 * p - 1.0;
    return a * std::sqrt(2.0 / (1.0 - a * a));
  }
  // Cornish-Fisher expansion around the normal quantile as the seed.
  const double z = normal_quantile(p);
  const double z3 = z * z * z;
  const double z5 = z3 * z * z;
  const double z7 = z5 * z * z;
  double guess = z + (z3 + z) / (4.0 * n) + (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * n * n) +
                 (3.0 * z7 + 19.0 * z5 + 17.0 * z3 - 15.0 * z) / (384.0 * n * n * n);
  double hi = std::max(guess, 1.0);
  while (student_t_cdf(hi, n) < p) hi *= 2.0;
  return invert_cdf([n](double q) { return student_t_cdf(q, n); },
                    [n](double q) { return student_t_pdf(q, n); }, p, 0.0, hi,
                    guess);
}

double chi_square_quantile(const QuantileRequest& req) {
  require_quantile_args(req, "chi_square_quantile");
  const double p = req.level;
  const int n = req.degrees_of_freedom;
  if (n == 1) {
    const double z = normal_quantile((1.0 + p) / 2.0);
    return z * z;
  }
  if (n == 2) return -2.0 * std::log1p(-p);
  // Wilson-Hilferty starting point.
  const double z = normal_quantile(p);
  const double h = 2.0 / (9.0 * n);
  const double wh = 1.0 - h + z * std::sqrt(h);
  double guess = n * wh * wh * wh;
  if (!(guess > 0.0)) guess = 1e-8;
  double hi = std::max(2.0 * guess, 1e-3);
  while (chi_square_cdf(hi, n) < p) hi *= 2.0;
  return invert_cdf([n](double q) { return chi_square_cdf(q, n); },
                    [n](double q) { return chi_square_pdf(q, n); }, p, 0.0, hi,
                    guess);
}

BootstrapInterval bootstrap_percentile_ci(std::span<const double> samples,
                                          BootstrapStatistic statistic,
                                          int resamples, double confidence,
                                          std::uint64_t seed) {
  if (samples.empty()) {
    throw std::domain_error("bootstrap_percentile_ci: empty sample");
  }
  if (resamples < 1) {
    throw std::domain_error("bootstrap_percentile_ci: resamples must be >= 1");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("bootstrap_percentile_ci: confidence must lie in (0,1)");
  }
  (void)statistic;  // only the median is supported

  const std::size_t n = samples.size();
  Rng rng(seed);
  std::vector<double> draw(n);
  std::vector<double> stats(static_cast<std::size_t>(resamples));
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t i = 0; i < n; ++i) draw[i] = samples[rng.next_below(n)];
    auto mid = draw.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(draw.begin(), mid, draw.end());
    double med = *mid;
    if (n % 2 == 0) {
      std::nth_element(draw.begin(), mid - 1, mid);
      med = (med + *(mid - 1)) / 2.0;
    }
    stats[static_cast<std::size_t>(r)] = med;
  }
  std::sort(stats.begin(), stats.end());

  // Linearly interpolated percentile of the sorted bootstrap statistics.
  const auto percentile = [&stats](double q) {
    const double h = q * (static_cast<double>(stats.size()) - 1.0);
    const auto i = static_cast<std::size_t>(h);
    if (i + 1 >= stats.size()) return stats.back();
    const double frac = h - static_cast<double>(i);
    return stats[i] + frac * (stats[i + 1] - stats[i]);
  };
  const double tail = (1.0 - confidence) / 2.0;
  return {percentile(tail), percentile(1.0 - tail)};
}

}  // namespace banditlab
