#pragma once

#include <vector>

namespace semifore::models {

struct SesFit {
  double alpha = 0.0;
  double init_level = 0.0;
  // Smoothed level after the last observation; the flat forecast.
  double final_level = 0.0;
  double sse = 0.0;
};

// Flat exponential smoothing. Alpha is searched on the grid {0, 0.001, ...,
// 1}; for each alpha the optimal initial level has a closed form because
// every one-step prediction is affine in it. Ties resolve to the smallest
// alpha. Needs at least two observations.
SesFit fit_ses(const std::vector<double>& y);

// All horizons share the final level.
std::vector<double> forecast_ses(const SesFit& fit, int horizon);

}  // namespace semifore::models
