#pragma once

#include <string>
#include <vector>

namespace semifore::models {

enum class EtsError { kAdditive, kMultiplicative };
enum class EtsTrend { kNone, kAdditive, kDamped };
enum class EtsSeason { kNone, kAdditive, kMultiplicative };

struct EtsSpecKind {
  EtsError error = EtsError::kAdditive;
  EtsTrend trend = EtsTrend::kNone;
  EtsSeason season = EtsSeason::kNone;

  // "AAdM" style short code.
  std::string code() const;
};

struct EtsFit {
  EtsSpecKind kind;
  double alpha = 0.0;
  double beta = 0.0;   // only meaningful with a trend component
  double gamma = 0.0;  // only meaningful with a seasonal component
  double phi = 1.0;    // damping; 1 for undamped or no trend
  // State after filtering the full sample.
  double level = 0.0;
  double trend_state = 0.0;
  std::vector<double> season_state;  // rotated so index 0 applies next
  double aicc = 0.0;
  double sse = 0.0;
  int period = 12;
};

struct EtsOptions {
  int period = 12;
  int max_evals_per_candidate = 600;
};

// Fits every admissible combination of error {A,M}, trend {N,A,Ad} and
// season {N,A,M} (the additive-error/multiplicative-season pairings are
// excluded as numerically fragile, and multiplicative components require
// strictly positive data; seasonal candidates require two full periods) and
// keeps the lowest-AICc model. Smoothing parameters and the level/trend
// initial states are optimized by Nelder-Mead on the one-step innovation
// likelihood; seasonal initial states are fixed at classical-decomposition
// indices. If every candidate fails, falls back to additive-error simple
// smoothing. Needs at least 8 observations.
EtsFit fit_ets(const std::vector<double>& y, const EtsOptions& options = {});

// Zero-innovation continuation of the fitted recursion.
std::vector<double> forecast_ets(const EtsFit& fit, int horizon);

}  // namespace semifore::models
