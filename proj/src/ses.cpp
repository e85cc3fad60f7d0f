#include "semifore/ses.hpp"

#include <cmath>
#include <limits>

#include "semifore/errors.hpp"

namespace semifore::models {

namespace {

// One-step predictions p_t obey p_1 = l0, p_t = (1-a) p_{t-1} + a y_{t-1},
// which makes every p_t affine in l0. Solving the scalar least-squares
// problem for l0 and accumulating the SSE costs one pass.
struct AlphaScore {
  double init_level = 0.0;
  double sse = 0.0;
};

AlphaScore score_alpha(const std::vector<double>& y, double alpha) {
  const std::size_t n = y.size();
  std::vector<double> slope(n), intercept(n);
  slope[0] = 1.0;
  intercept[0] = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    slope[t] = (1.0 - alpha) * slope[t - 1];
    intercept[t] = (1.0 - alpha) * intercept[t - 1] + alpha * y[t - 1];
  }
  double sum_s2 = 0.0;
  double sum_sr = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    sum_s2 += slope[t] * slope[t];
    sum_sr += slope[t] * (y[t] - intercept[t]);
  }
  // slope[0] == 1, so the denominator never degenerates.
  AlphaScore score;
  score.init_level = sum_sr / sum_s2;
  for (std::size_t t = 0; t < n; ++t) {
    const double e = y[t] - (slope[t] * score.init_level + intercept[t]);
    score.sse += e * e;
  }
  return score;
}

}  // namespace

SesFit fit_ses(const std::vector<double>& y) {
  if (y.size() < 2) throw ValidationError("fit_ses: need at least 2 points");

  SesFit best;
  best.sse = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    const double alpha = i / 1000.0;
    const AlphaScore score = score_alpha(y, alpha);
    if (score.sse < best.sse) {
      best.alpha = alpha;
      best.init_level = score.init_level;
      best.sse = score.sse;
    }
  }

  double level = best.init_level;
  for (double v : y) level = (1.0 - best.alpha) * level + best.alpha * v;
  best.final_level = level;
  return best;
}

std::vector<double> forecast_ses(const SesFit& fit, int horizon) {
  if (horizon < 1) throw ValidationError("forecast_ses: horizon must be >= 1");
  return std::vector<double>(static_cast<std::size_t>(horizon),
                             fit.final_level);
}

}  // namespace semifore::models
