#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "semifore/decompose.hpp"
#include "semifore/errors.hpp"
#include "semifore/optim.hpp"
#include "semifore/rng.hpp"

using namespace semifore;

TEST_CASE("nelder-mead finds the minimum of a separable quadratic") {
  auto f = [](const std::vector<double>& x) {
    return (x[0] - 3.0) * (x[0] - 3.0) + (x[1] + 1.0) * (x[1] + 1.0);
  };
  const auto r = optim::nelder_mead(f, {0.0, 0.0}, {0.5, 0.5});
  CHECK(r.x[0] == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(r.x[1] == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(r.value < 1e-6);
}

TEST_CASE("nelder-mead handles the rosenbrock valley") {
  auto f = [](const std::vector<double>& x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
  };
  optim::NelderMeadOptions opts;
  opts.max_evals = 4000;
  const auto r = optim::nelder_mead(f, {-1.2, 1.0}, {0.5, 0.5}, opts);
  CHECK(r.value < 1e-4);
}

TEST_CASE("nelder-mead treats infinite values as walls") {
  auto f = [](const std::vector<double>& x) {
    if (x[0] < 0.0 || x[0] > 1.0) {
      return std::numeric_limits<double>::infinity();
    }
    return (x[0] - 0.8) * (x[0] - 0.8);
  };
  const auto r = optim::nelder_mead(f, {0.5}, {0.2});
  CHECK(r.x[0] == doctest::Approx(0.8).epsilon(1e-3));
}

TEST_CASE("nelder-mead input validation") {
  auto f = [](const std::vector<double>&) { return 0.0; };
  CHECK_THROWS_AS(optim::nelder_mead(f, {}, {}), ValidationError);
  CHECK_THROWS_AS(optim::nelder_mead(f, {1.0}, {0.1, 0.1}), ValidationError);
  CHECK_THROWS_AS(optim::nelder_mead(f, {1.0}, {0.0}), ValidationError);
}

TEST_CASE("classical decomposition recovers additive seasonality on a line") {
  const std::vector<double> idx = {2.0, -1.0, -3.0, 2.0};
  std::vector<double> y;
  for (int t = 0; t < 24; ++t) y.push_back(10.0 + 0.5 * t + idx[t % 4]);

  const auto d = decompose::classical(y, 4, false);
  // A centered moving average reproduces a linear trend exactly, so the
  // detrended values are exactly the indices.
  for (int k = 0; k < 4; ++k) {
    CHECK(d.indices[k] == doctest::Approx(idx[k]).epsilon(1e-9));
  }
  CHECK(std::isnan(d.trend[0]));
  CHECK(std::isnan(d.trend[1]));
  CHECK(!std::isnan(d.trend[2]));
  CHECK(std::isnan(d.trend[23]));
  for (int t = 2; t < 22; ++t) {
    CHECK(d.remainder[t] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d.trend[t] == doctest::Approx(10.0 + 0.5 * t).epsilon(1e-9));
  }
}

TEST_CASE("classical decomposition multiplicative mode on a flat level") {
  const std::vector<double> factor = {1.2, 0.8, 0.9, 1.1};
  std::vector<double> y;
  for (int t = 0; t < 16; ++t) y.push_back(10.0 * factor[t % 4]);

  const auto d = decompose::classical(y, 4, true);
  for (int k = 0; k < 4; ++k) {
    CHECK(d.indices[k] == doctest::Approx(factor[k]).epsilon(1e-12));
  }
  for (int t = 2; t < 14; ++t) {
    CHECK(d.remainder[t] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("classical decomposition preconditions") {
  std::vector<double> y(10, 1.0);
  CHECK_THROWS_AS(decompose::classical(y, 12, false), ValidationError);
  CHECK_THROWS_AS(decompose::classical(y, 1, false), ValidationError);
  std::vector<double> with_zero(24, 1.0);
  with_zero[3] = 0.0;
  CHECK_THROWS_AS(decompose::classical(with_zero, 12, true), ValidationError);
  CHECK_NOTHROW(decompose::classical(with_zero, 12, false));
}

TEST_CASE("seasonal strength separates seasonal from non-seasonal") {
  std::vector<double> seasonal, trendy, noisy;
  auto stream = rng::split_stream(2024, 0);
  for (int t = 0; t < 120; ++t) {
    const double wave = 15.0 * std::sin(2.0 * M_PI * (t % 12) / 12.0);
    seasonal.push_back(100.0 + wave + 0.5 * stream.next_normal());
    trendy.push_back(50.0 + 2.0 * t);
    noisy.push_back(100.0 + 5.0 * stream.next_normal());
  }
  CHECK(decompose::seasonal_strength(seasonal, 12) > 0.9);
  // Pure trend detrends to nothing; the degenerate case scores 0.
  CHECK(decompose::seasonal_strength(trendy, 12) == 0.0);
  CHECK(decompose::seasonal_strength(noisy, 12) < 0.5);
  CHECK(decompose::seasonal_strength({1.0, 2.0, 3.0}, 12) == 0.0);
}

TEST_CASE("kpss statistic flags nonstationary series") {
  auto stream = rng::split_stream(7, 1);
  std::vector<double> noise, walk;
  double acc = 0.0;
  for (int t = 0; t < 200; ++t) {
    const double e = stream.next_normal();
    noise.push_back(e);
    acc += e;
    walk.push_back(acc);
  }
  CHECK(decompose::kpss_level_stat(noise) < 0.463);
  CHECK(decompose::kpss_level_stat(walk) > 0.463);
  CHECK(decompose::kpss_level_stat(std::vector<double>(50, 3.0)) == 0.0);
}

TEST_CASE("difference order selection") {
  auto stream = rng::split_stream(7, 2);
  std::vector<double> noise, walk, walk2;
  double acc = 0.0, acc2 = 0.0;
  for (int t = 0; t < 250; ++t) {
    const double e = stream.next_normal();
    noise.push_back(e);
    acc += e;
    walk.push_back(acc);
    acc2 += acc;
    walk2.push_back(acc2);
  }
  CHECK(decompose::choose_diff_order(noise) == 0);
  CHECK(decompose::choose_diff_order(walk) == 1);
  CHECK(decompose::choose_diff_order(walk2) == 2);

  std::vector<double> line;
  for (int t = 0; t < 150; ++t) line.push_back(2.0 + 0.5 * t);
  // One difference turns a deterministic line into a constant, whose
  // degenerate long-run variance reads as stationary.
  CHECK(decompose::choose_diff_order(line) == 1);
}
