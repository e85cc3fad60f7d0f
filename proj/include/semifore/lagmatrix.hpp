#pragma once

#include <functional>
#include <vector>

namespace semifore::models {

// Supervised view of a series: the row for target x_t carries features
// (x_{t-1}, ..., x_{t-L}), most recent first.
struct LagMatrix {
  std::vector<std::vector<double>> features;
  std::vector<double> targets;
  int lags = 0;
};

// Rows for t = L .. n-1; requires n > L so at least one row exists.
LagMatrix build_lag_matrix(const std::vector<double>& x, int lags);

// Per-column mean and sample standard deviation; a zero sd column scales by
// 1 so constants pass through unchanged.
struct ScalingStats {
  std::vector<double> mean;
  std::vector<double> sd;
};

ScalingStats fit_scaling(const std::vector<std::vector<double>>& features);
std::vector<double> apply_scaling(const ScalingStats& stats,
                                  const std::vector<double>& row);

// Multi-step forecast by feeding predictions back as lagged inputs. The
// callable receives raw-scale feature rows in the layout above.
std::vector<double> recursive_forecast(
    const std::vector<double>& history, int lags, int horizon,
    const std::function<double(const std::vector<double>&)>& predict);

}  // namespace semifore::models
