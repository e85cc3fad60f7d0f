#include "semifore/lagmatrix.hpp"

#include <cmath>

#include "semifore/errors.hpp"

namespace semifore::models {

LagMatrix build_lag_matrix(const std::vector<double>& x, int lags) {
  const int n = static_cast<int>(x.size());
  if (lags < 1) throw ValidationError("build_lag_matrix: lags must be >= 1");
  if (n <= lags) {
    throw ValidationError("build_lag_matrix: series shorter than lag depth");
  }
  LagMatrix m;
  m.lags = lags;
  for (int t = lags; t < n; ++t) {
    std::vector<double> row(static_cast<std::size_t>(lags));
    for (int j = 0; j < lags; ++j) row[j] = x[t - 1 - j];
    m.features.push_back(std::move(row));
    m.targets.push_back(x[t]);
  }
  return m;
}

ScalingStats fit_scaling(const std::vector<std::vector<double>>& features) {
  if (features.empty()) throw ValidationError("fit_scaling: no rows");
  const std::size_t cols = features.front().size();
  ScalingStats stats;
  stats.mean.assign(cols, 0.0);
  stats.sd.assign(cols, 1.0);
  const double n = static_cast<double>(features.size());
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (const auto& row : features) sum += row[c];
    stats.mean[c] = sum / n;
  }
  if (features.size() > 1) {
    for (std::size_t c = 0; c < cols; ++c) {
      double ss = 0.0;
      for (const auto& row : features) {
        const double d = row[c] - stats.mean[c];
        ss += d * d;
      }
      const double sd = std::sqrt(ss / (n - 1.0));
      if (sd > 0.0) stats.sd[c] = sd;
    }
  }
  return stats;
}

std::vector<double> apply_scaling(const ScalingStats& stats,
                                  const std::vector<double>& row) {
  if (row.size() != stats.mean.size()) {
    throw ValidationError("apply_scaling: column mismatch");
  }
  std::vector<double> out(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) {
    out[c] = (row[c] - stats.mean[c]) / stats.sd[c];
  }
  return out;
}

std::vector<double> recursive_forecast(
    const std::vector<double>& history, int lags, int horizon,
    const std::function<double(const std::vector<double>&)>& predict) {
  if (horizon < 1) {
    throw ValidationError("recursive_forecast: horizon must be >= 1");
  }
  if (static_cast<int>(history.size()) < lags) {
    throw ValidationError("recursive_forecast: history shorter than lags");
  }
  std::vector<double> window(history.end() - lags, history.end());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (int h = 0; h < horizon; ++h) {
    std::vector<double> row(static_cast<std::size_t>(lags));
    for (int j = 0; j < lags; ++j) row[j] = window[window.size() - 1 - j];
    const double value = predict(row);
    out.push_back(value);
    window.push_back(value);
  }
  return out;
}

}  // namespace semifore::models
