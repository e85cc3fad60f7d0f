#pragma once

#include <functional>
#include <vector>

namespace semifore::optim {

struct NelderMeadOptions {
  int max_evals = 500;
  // Converged when the simplex value spread falls below
  // tol * (|f_best| + tol) AND every vertex is within the coordinate
  // tolerance of the best vertex. The second condition guards against the
  // classic premature stop on a simplex straddling the minimum
  // symmetrically.
  double value_tol = 1e-8;
  double x_tol = 1e-6;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
};

// Derivative-free simplex minimizer. Infinite objective values are legal and
// used by callers to encode bounds; a vertex at +inf is simply the worst
// point and gets contracted away. The initial simplex is start plus one
// per-dimension displacement, so `steps` must be nonzero in every
// coordinate. Fully deterministic: no randomness, stable tie handling.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const std::vector<double>& steps,
    const NelderMeadOptions& options = {});

}  // namespace semifore::optim
