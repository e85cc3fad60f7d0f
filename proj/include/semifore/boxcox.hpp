#pragma once

#include <vector>

namespace semifore::transform {

struct BoxCoxParams {
  double lambda = 1.0;

  static constexpr double kLambdaMin = -1.0;
  static constexpr double kLambdaMax = 2.0;
};

// (x^λ − 1)/λ for λ ≠ 0, ln x at λ = 0. Strictly increasing in x for every
// λ; x must be strictly positive.
double boxcox(double x, const BoxCoxParams& params);

// Exact functional inverse; λ ≠ 0 requires λ·y + 1 > 0 (the transform's
// range), otherwise FitError. No bias adjustment on purpose: forecasts are
// mapped back through the plain inverse.
double inv_boxcox(double y, const BoxCoxParams& params);

std::vector<double> boxcox(const std::vector<double>& xs,
                           const BoxCoxParams& params);
std::vector<double> inv_boxcox(const std::vector<double>& ys,
                               const BoxCoxParams& params);

// Automatic λ for one training window: minimizes the coefficient of
// variation of per-season-block scale ratios sd_i / mean_i^(1−λ) over
// consecutive blocks of `season` months (Guerrero's objective), searched on
// [−1, 2]. A window with no variation (or fewer than two complete blocks of
// spread) degenerates to λ = 1.
BoxCoxParams estimate_lambda(const std::vector<double>& train, int season = 12);

// The Guerrero objective itself; exposed so an independent grid scan can
// check the minimizer.
double guerrero_cv(const std::vector<double>& train, int season, double lambda);

}  // namespace semifore::transform
