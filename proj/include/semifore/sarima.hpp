#pragma once

#include <vector>

namespace semifore::models {

struct SarimaOrder {
  int p = 0, d = 0, q = 0;
  int sp = 0, sd = 0, sq = 0;  // seasonal counterparts
};

struct SarimaFit {
  SarimaOrder order;
  bool with_constant = false;
  double mu = 0.0;
  std::vector<double> ar, ma, sar, sma;
  double sigma2 = 0.0;
  // Criterion from the conditional-sum-of-squares search, which is what the
  // order selection compared.
  double aicc = 0.0;
  bool ml_refined = false;
  int period = 12;

  // Differenced series plus every intermediate level, kept for forecasting:
  // chain[0] is the original input, each later entry one more difference
  // (seasonal first), chain.back() is the series the ARMA part models.
  std::vector<std::vector<double>> chain;
  std::vector<int> chain_lags;  // lag removed at each step (12 or 1)
};

struct SarimaOptions {
  int period = 12;
  // Stepwise neighborhood search by default; the exhaustive mode sweeps the
  // full (small) order grid and exists for cross-checking the search.
  bool stepwise = true;
  int max_models = 94;
  bool refine_ml = true;
};

// Seasonal ARIMA with automatic differencing: one seasonal difference when
// the seasonal component explains enough detrended variance, then regular
// differences by repeated KPSS tests. Orders are selected by AICc over
// conditional-sum-of-squares fits that share one conditioning origin, so
// every candidate scores on the same effective sample. The selected model
// is polished by exact maximum likelihood (Kalman filter) when the state
// dimension stays moderate. A constant is included only while d + D <= 1.
// Needs at least 16 observations.
SarimaFit fit_sarima(const std::vector<double>& y,
                     const SarimaOptions& options = {});

// Mean path: ARMA recursion on the differenced scale with future shocks at
// zero, then integration back through the difference chain.
std::vector<double> forecast_sarima(const SarimaFit& fit, int horizon);

}  // namespace semifore::models
