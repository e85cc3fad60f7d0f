#include "semifore/decompose.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "semifore/errors.hpp"

namespace semifore::decompose {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean =
      std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / (static_cast<double>(xs.size()) - 1.0);
}

}  // namespace

Decomposition classical(const std::vector<double>& y, int period,
                        bool multiplicative) {
  const int n = static_cast<int>(y.size());
  if (period < 2) throw ValidationError("classical: period must be at least 2");
  if (n < 2 * period) {
    throw ValidationError("classical: need at least two full periods");
  }
  if (multiplicative) {
    for (double v : y) {
      if (!(v > 0.0)) {
        throw ValidationError(
            "classical: multiplicative mode needs positive values");
      }
    }
  }

  Decomposition out;
  out.trend.assign(y.size(), kNan);
  out.seasonal.assign(y.size(), kNan);
  out.remainder.assign(y.size(), kNan);

  // Centered moving average: for even periods the window spans period+1
  // points with half weight at both ends.
  const int half = period / 2;
  const bool even = period % 2 == 0;
  for (int t = half; t < n - half; ++t) {
    double acc = 0.0;
    if (even) {
      acc += 0.5 * y[t - half] + 0.5 * y[t + half];
      for (int j = -half + 1; j <= half - 1; ++j) acc += y[t + j];
      out.trend[t] = acc / static_cast<double>(period);
    } else {
      for (int j = -half; j <= half; ++j) acc += y[t + j];
      out.trend[t] = acc / static_cast<double>(period);
    }
  }

  // Raw per-offset index: mean of the detrended values at that offset.
  std::vector<double> sums(period, 0.0);
  std::vector<int> counts(period, 0);
  for (int t = 0; t < n; ++t) {
    if (std::isnan(out.trend[t])) continue;
    const double detrended =
        multiplicative ? y[t] / out.trend[t] : y[t] - out.trend[t];
    sums[t % period] += detrended;
    ++counts[t % period];
  }
  out.indices.assign(period, multiplicative ? 1.0 : 0.0);
  for (int k = 0; k < period; ++k) {
    if (counts[k] > 0) out.indices[k] = sums[k] / counts[k];
  }
  if (multiplicative) {
    const double mean =
        std::accumulate(out.indices.begin(), out.indices.end(), 0.0) / period;
    if (mean > 0.0) {
      for (double& v : out.indices) v /= mean;
    }
  } else {
    const double mean =
        std::accumulate(out.indices.begin(), out.indices.end(), 0.0) / period;
    for (double& v : out.indices) v -= mean;
  }

  for (int t = 0; t < n; ++t) {
    out.seasonal[t] = out.indices[t % period];
    if (std::isnan(out.trend[t])) continue;
    out.remainder[t] = multiplicative
                           ? y[t] / (out.trend[t] * out.seasonal[t])
                           : y[t] - out.trend[t] - out.seasonal[t];
  }
  return out;
}

double seasonal_strength(const std::vector<double>& y, int period) {
  if (static_cast<int>(y.size()) < 2 * period) return 0.0;
  const Decomposition d = classical(y, period, /*multiplicative=*/false);
  std::vector<double> remainder;
  std::vector<double> detrended;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (std::isnan(d.remainder[t])) continue;
    remainder.push_back(d.remainder[t]);
    detrended.push_back(d.seasonal[t] + d.remainder[t]);
  }
  const double var_detrended = sample_variance(detrended);
  if (!(var_detrended > 0.0) || !std::isfinite(var_detrended)) return 0.0;
  const double ratio = sample_variance(remainder) / var_detrended;
  return std::max(0.0, 1.0 - ratio);
}

double kpss_level_stat(const std::vector<double>& y) {
  const int n = static_cast<int>(y.size());
  if (n < 2) return 0.0;
  const double mean =
      std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  std::vector<double> e(y.size());
  for (int t = 0; t < n; ++t) e[t] = y[t] - mean;

  double eta = 0.0;
  double run = 0.0;
  for (int t = 0; t < n; ++t) {
    run += e[t];
    eta += run * run;
  }
  eta /= static_cast<double>(n) * n;

  const int bandwidth =
      static_cast<int>(std::trunc(4.0 * std::pow(n / 100.0, 0.25)));
  double lrv = 0.0;
  for (int t = 0; t < n; ++t) lrv += e[t] * e[t];
  lrv /= n;
  for (int lag = 1; lag <= bandwidth && lag < n; ++lag) {
    double gamma = 0.0;
    for (int t = lag; t < n; ++t) gamma += e[t] * e[t - lag];
    gamma /= n;
    lrv += 2.0 * (1.0 - lag / (bandwidth + 1.0)) * gamma;
  }
  if (!(lrv > 1e-300)) return 0.0;
  return eta / lrv;
}

int choose_diff_order(std::vector<double> y, int max_d) {
  constexpr double kCritical5Pct = 0.463;
  int d = 0;
  while (d < max_d && static_cast<int>(y.size()) >= 8 &&
         kpss_level_stat(y) > kCritical5Pct) {
    std::vector<double> diffed(y.size() - 1);
    for (std::size_t t = 1; t < y.size(); ++t) diffed[t - 1] = y[t] - y[t - 1];
    y = std::move(diffed);
    ++d;
  }
  return d;
}

}  // namespace semifore::decompose
