#include "semifore/boxcox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semifore/errors.hpp"

namespace semifore::transform {
namespace {

void check_lambda(const BoxCoxParams& params) {
  if (!std::isfinite(params.lambda) ||
      params.lambda < BoxCoxParams::kLambdaMin ||
      params.lambda > BoxCoxParams::kLambdaMax) {
    throw FitError("Box-Cox lambda outside [-1, 2]: " +
                   std::to_string(params.lambda));
  }
}

}  // namespace

double boxcox(double x, const BoxCoxParams& params) {
  check_lambda(params);
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw FitError("Box-Cox input must be strictly positive, got " +
                   std::to_string(x));
  }
  if (params.lambda == 0.0) return std::log(x);
  return (std::pow(x, params.lambda) - 1.0) / params.lambda;
}

double inv_boxcox(double y, const BoxCoxParams& params) {
  check_lambda(params);
  if (!std::isfinite(y)) throw FitError("Box-Cox inverse input not finite");
  if (params.lambda == 0.0) return std::exp(y);
  const double base = params.lambda * y + 1.0;
  if (!(base > 0.0)) {
    throw FitError("Box-Cox inverse domain violation: lambda*y + 1 = " +
                   std::to_string(base));
  }
  return std::pow(base, 1.0 / params.lambda);
}

std::vector<double> boxcox(const std::vector<double>& xs,
                           const BoxCoxParams& params) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(boxcox(x, params));
  return out;
}

std::vector<double> inv_boxcox(const std::vector<double>& ys,
                               const BoxCoxParams& params) {
  std::vector<double> out;
  out.reserve(ys.size());
  for (double y : ys) out.push_back(inv_boxcox(y, params));
  return out;
}

double guerrero_cv(const std::vector<double>& train, int season,
                   double lambda) {
  const int blocks = static_cast<int>(train.size()) / season;
  // Ratio r_i = sd_i / mean_i^(1-λ) per complete season block; the objective
  // is the coefficient of variation of the r_i.
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(blocks));
  for (int b = 0; b < blocks; ++b) {
    double sum = 0.0;
    for (int j = 0; j < season; ++j) {
      sum += train[static_cast<std::size_t>(b * season + j)];
    }
    const double mean = sum / season;
    double ss = 0.0;
    for (int j = 0; j < season; ++j) {
      const double d = train[static_cast<std::size_t>(b * season + j)] - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / (season - 1));
    ratios.push_back(sd / std::pow(mean, 1.0 - lambda));
  }
  double rmean = 0.0;
  for (double r : ratios) rmean += r;
  rmean /= static_cast<double>(ratios.size());
  if (!(rmean > 0.0) || !std::isfinite(rmean)) {
    return std::numeric_limits<double>::infinity();
  }
  double rss = 0.0;
  for (double r : ratios) {
    const double d = r - rmean;
    rss += d * d;
  }
  const double rsd = std::sqrt(rss / (static_cast<double>(ratios.size()) - 1.0));
  return rsd / rmean;
}

BoxCoxParams estimate_lambda(const std::vector<double>& train, int season) {
  if (season < 2) throw ValidationError("estimate_lambda: season must be >= 2");
  if (static_cast<int>(train.size()) < 2 * season) {
    throw ValidationError("estimate_lambda: window shorter than two seasons");
  }
  for (double x : train) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw FitError("estimate_lambda: window must be strictly positive");
    }
  }

  bool constant = true;
  for (double x : train) {
    if (x != train.front()) {
      constant = false;
      break;
    }
  }
  if (constant) return BoxCoxParams{1.0};

  // Dense scan at 0.01 resolution over the clamp interval, then one level of
  // local ternary refinement. The objective is cheap and can be multimodal
  // on short windows, so a global scan is safer than a single descent.
  constexpr double kLo = BoxCoxParams::kLambdaMin;
  constexpr double kHi = BoxCoxParams::kLambdaMax;
  constexpr int kSteps = 300;
  double best_lambda = 1.0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSteps; ++i) {
    const double lam = kLo + (kHi - kLo) * i / kSteps;
    const double value = guerrero_cv(train, season, lam);
    if (value < best_value) {
      best_value = value;
      best_lambda = lam;
    }
  }
  if (!std::isfinite(best_value)) return BoxCoxParams{1.0};

  double lo = std::max(kLo, best_lambda - (kHi - kLo) / kSteps);
  double hi = std::min(kHi, best_lambda + (kHi - kLo) / kSteps);
  for (int iter = 0; iter < 60; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (guerrero_cv(train, season, m1) <= guerrero_cv(train, season, m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double refined = 0.5 * (lo + hi);
  if (guerrero_cv(train, season, refined) <= best_value) {
    best_lambda = refined;
  }
  return BoxCoxParams{std::clamp(best_lambda, kLo, kHi)};
}

}  // namespace semifore::transform
