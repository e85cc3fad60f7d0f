#include "semifore/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "semifore/errors.hpp"

namespace semifore::optim {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const std::vector<double>& steps,
    const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0) throw ValidationError("nelder_mead: empty start point");
  if (steps.size() != dim) {
    throw ValidationError("nelder_mead: steps size mismatch");
  }
  for (double s : steps) {
    if (s == 0.0 || !std::isfinite(s)) {
      throw ValidationError("nelder_mead: steps must be finite and nonzero");
    }
  }

  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = objective(x);
    // NaN would poison the ordering below; treat it as infeasible.
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(dim + 1, start);
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += steps[i];
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values[a] < values[b];
    });
  };
  sort_order();

  while (evals < options.max_evals) {
    const std::size_t best = order[0];
    const std::size_t worst = order[dim];
    const std::size_t second_worst = order[dim - 1];

    if (std::isfinite(values[best]) && std::isfinite(values[worst]) &&
        values[worst] - values[best] <=
            options.value_tol * (std::fabs(values[best]) + options.value_tol)) {
      bool tight = true;
      for (std::size_t i = 0; i <= dim && tight; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
          if (std::fabs(simplex[i][d] - simplex[best][d]) >
              options.x_tol * (1.0 + std::fabs(simplex[best][d]))) {
            tight = false;
            break;
          }
        }
      }
      if (tight) break;
    }

    // Centroid of all vertices except the worst.
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto along = [&](double coef) {
      std::vector<double> x(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        x[d] = centroid[d] + coef * (centroid[d] - simplex[worst][d]);
      }
      return x;
    };

    std::vector<double> reflected = along(kReflect);
    const double fr = eval(reflected);

    if (fr < values[order[0]]) {
      std::vector<double> expanded = along(kExpand);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = fr;
      }
    } else if (fr < values[second_worst]) {
      simplex[worst] = std::move(reflected);
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      std::vector<double> contracted = along(outside ? kContract : -kContract);
      const double fc = eval(contracted);
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = std::move(contracted);
        values[worst] = fc;
      } else {
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == order[0]) continue;
          for (std::size_t d = 0; d < dim; ++d) {
            simplex[i][d] = simplex[order[0]][d] +
                            kShrink * (simplex[i][d] - simplex[order[0]][d]);
          }
          values[i] = eval(simplex[i]);
        }
      }
    }
    sort_order();
  }

  sort_order();
  NelderMeadResult result;
  result.x = simplex[order[0]];
  result.value = values[order[0]];
  result.evals = evals;
  return result;
}

}  // namespace semifore::optim
