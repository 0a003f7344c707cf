#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <limits>
#include <vector>

#include "banditlab/rng.hpp"
#include "banditlab/special_math.hpp"
#include "test_oracles.hpp"

using namespace banditlab;

TEST_CASE("erfc matches the defining integral") {
  CHECK(banditlab::erfc(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(banditlab::erfc(10.0) < 1e-40);
  CHECK(std::fabs(banditlab::erfc(0.35355) - 0.61708) < 1e-5);

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double x = -4.0 + 8.0 * rng.next_double();
    CHECK(std::fabs(banditlab::erfc(x) - oracles::erfc_quadrature(x)) < 1e-12);
  }
  // Strictly decreasing and symmetric around (0, 1).
  double prev = banditlab::erfc(-6.0);
  for (double x = -5.75; x <= 6.0; x += 0.25) {
    const double v = banditlab::erfc(x);
    CHECK(v < prev);
    prev = v;
    CHECK(banditlab::erfc(-x) == doctest::Approx(2.0 - v).epsilon(1e-13));
  }
  CHECK_THROWS_AS(banditlab::erfc(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(banditlab::erfc(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("ierfc matches quadrature of erfc and its closed form") {
  CHECK(banditlab::ierfc(0.0) == doctest::Approx(0.5641895835477563).epsilon(1e-13));
  CHECK(banditlab::ierfc(8.0) < 1e-25);
  CHECK(std::fabs(banditlab::ierfc(0.35355) - 0.27965) < 1e-4);

  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double x = -4.0 + 8.0 * rng.next_double();
    CHECK(std::fabs(banditlab::ierfc(x) - oracles::ierfc_quadrature(x)) < 1e-10);
  }
  // Internal consistency of the closed form on 1000 random points.
  for (int i = 0; i < 1000; ++i) {
    const double x = -4.0 + 8.0 * rng.next_double();
    const double closed = std::exp(-x * x) / std::sqrt(std::numbers::pi) - x * std::erfc(x);
    CHECK(std::fabs(banditlab::ierfc(x) - closed) < 1e-12);
    CHECK(banditlab::ierfc(x) >= 0.0);
  }
  double prev = banditlab::ierfc(-6.0);
  for (double x = -5.5; x <= 6.0; x += 0.5) {
    CHECK(banditlab::ierfc(x) < prev);
    prev = banditlab::ierfc(x);
  }
  CHECK_THROWS_AS(banditlab::ierfc(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("student t quantile") {
  CHECK(student_t_quantile({0.5, 7}) == doctest::Approx(0.0).epsilon(1e-12));

  // Bisection against the quadrature CDF oracle.
  const double q975_10 = oracles::invert_by_bisection(
      [](double x) { return oracles::student_t_cdf_quadrature(x, 10); }, 0.975,
      0.0, 100.0);
  CHECK(std::fabs(q975_10 - 2.2281) < 1e-3);
  CHECK(student_t_quantile({0.975, 10}) == doctest::Approx(q975_10).epsilon(1e-8));

  // Closed-form Cauchy quantile.
  CHECK(student_t_quantile({0.95, 1}) ==
        doctest::Approx(std::tan(std::numbers::pi * 0.45)).epsilon(1e-12));
  CHECK(std::fabs(student_t_quantile({0.95, 1}) - 6.3138) < 1e-3);

  CHECK_THROWS_AS(student_t_quantile({0.0, 5}), std::domain_error);
  CHECK_THROWS_AS(student_t_quantile({1.0, 5}), std::domain_error);
  CHECK_THROWS_AS(student_t_quantile({0.5, 0}), std::domain_error);
}

TEST_CASE("chi-square quantile") {
  CHECK(chi_square_quantile({0.5, 2}) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

  const double q025_10 = oracles::invert_by_bisection(
      [](double x) { return oracles::chi_square_cdf_quadrature(x, 10); }, 0.025,
      0.0, 100.0);
  CHECK(std::fabs(q025_10 - 3.2470) < 1e-3);
  CHECK(chi_square_quantile({0.025, 10}) == doctest::Approx(q025_10).epsilon(1e-8));

  // dof 1 reduces to a squared normal quantile.
  const double q05_1 = chi_square_quantile({0.05, 1});
  CHECK(std::fabs(q05_1 - 0.003932) < 1e-5);
  const double z = normal_quantile(0.525);
  CHECK(q05_1 == doctest::Approx(z * z).epsilon(1e-12));

  CHECK_THROWS_AS(chi_square_quantile({-0.1, 3}), std::domain_error);
  CHECK_THROWS_AS(chi_square_quantile({0.5, -1}), std::domain_error);
}

TEST_CASE("quantile/CDF round trip and monotonicity") {
  for (int n : {1, 2, 3, 5, 10, 25, 50}) {
    double prev_t = -std::numeric_limits<double>::infinity();
    double prev_c = 0.0;
    for (int i = 1; i <= 99; ++i) {
      const double p = i / 100.0;
      const double tq = student_t_quantile({p, n});
      CHECK(std::fabs(student_t_cdf(tq, n) - p) < 1e-6);
      CHECK(tq > prev_t);
      prev_t = tq;
      const double cq = chi_square_quantile({p, n});
      CHECK(std::fabs(chi_square_cdf(cq, n) - p) < 1e-6);
      CHECK(cq > prev_c);
      prev_c = cq;
      CHECK(cq > 0.0);
    }
  }
}

TEST_CASE("normal quantile hits the erfc-based CDF") {
  for (double p : {0.001, 0.025, 0.3, 0.5, 0.525, 0.9, 0.975, 0.999, 1e-9}) {
    const double z = normal_quantile(p);
    const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
    CHECK(std::fabs(cdf - p) <= 1e-14 + 1e-9 * p);
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("bootstrap percentile interval") {
  const std::vector<double> constant{5.0, 5.0, 5.0, 5.0};
  const auto ci = bootstrap_percentile_ci(constant, BootstrapStatistic::Median,
                                          1000, 0.95, 123);
  CHECK(ci.lo == 5.0);
  CHECK(ci.hi == 5.0);

  std::vector<double> ramp(100);
  for (int i = 0; i < 100; ++i) ramp[static_cast<std::size_t>(i)] = i + 1.0;
  const auto ci95 =
      bootstrap_percentile_ci(ramp, BootstrapStatistic::Median, 1000, 0.95, 1);
  CHECK(ci95.lo <= 50.5);
  CHECK(ci95.hi >= 50.5);
  CHECK(ci95.lo > 30.0);
  CHECK(ci95.hi < 70.0);

  // Nesting on the same seed stream.
  const auto ci99 =
      bootstrap_percentile_ci(ramp, BootstrapStatistic::Median, 1000, 0.99, 1);
  CHECK(ci99.lo <= ci95.lo);
  CHECK(ci99.hi >= ci95.hi);

  // Deterministic given the seed.
  const auto again =
      bootstrap_percentile_ci(ramp, BootstrapStatistic::Median, 1000, 0.95, 1);
  CHECK(again.lo == ci95.lo);
  CHECK(again.hi == ci95.hi);

  CHECK_THROWS_AS(bootstrap_percentile_ci({}, BootstrapStatistic::Median, 10, 0.95, 1),
                  std::domain_error);
  CHECK_THROWS_AS(
      bootstrap_percentile_ci(constant, BootstrapStatistic::Median, 0, 0.95, 1),
      std::domain_error);
}
