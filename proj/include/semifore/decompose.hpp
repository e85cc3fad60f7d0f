#pragma once

#include <vector>

namespace semifore::decompose {

// Classical moving-average decomposition of a monthly series. Trend is the
// centered 2x(period) moving average, so the first and last period/2
// positions have no trend value (NaN there, and in seasonal/remainder).
// `indices` holds one normalized seasonal index per position offset from the
// start of the input: additive indices sum to zero, multiplicative indices
// average to one.
struct Decomposition {
  std::vector<double> trend;
  std::vector<double> seasonal;
  std::vector<double> remainder;
  std::vector<double> indices;
};

// Requires at least two full periods of data; multiplicative mode requires
// strictly positive values.
Decomposition classical(const std::vector<double>& y, int period,
                        bool multiplicative = false);

// Variance-explained measure of seasonality on the additive decomposition:
// max(0, 1 - Var(remainder) / Var(seasonal + remainder)), computed over the
// positions where the trend is defined. Degenerate (constant) detrended
// data scores 0.
double seasonal_strength(const std::vector<double>& y, int period);

// KPSS level-stationarity statistic: demeaned partial sums scaled by the
// Bartlett long-run variance with bandwidth trunc(4*(n/100)^0.25). A
// degenerate long-run variance (constant series) scores 0.
double kpss_level_stat(const std::vector<double>& y);

// Successive differencing until the KPSS statistic drops to or below the 5%
// critical value 0.463, capped at max_d and halted if the series becomes
// too short to test.
int choose_diff_order(std::vector<double> y, int max_d = 2);

}  // namespace semifore::decompose
