#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace semifore::oracles {

MetricsResult metrics_direct(const std::vector<double>& actuals,
                             const std::vector<double>& forecasts) {
  if (actuals.size() != forecasts.size() || actuals.empty()) {
    throw std::invalid_argument("metrics_direct: bad lengths");
  }
  long double mse = 0.0L;
  long double mape = 0.0L;
  long double mae = 0.0L;
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    const long double diff =
        static_cast<long double>(forecasts[i]) - actuals[i];
    mse += diff * diff;
    mape += fabsl(diff) / actuals[i];
    mae += fabsl(diff);
  }
  const long double n = static_cast<long double>(actuals.size());
  return MetricsResult{static_cast<double>(mse / n),
                       static_cast<double>(mape / n),
                       static_cast<double>(mae / n)};
}

double median_by_sort(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

// One-step predictions of the flat recursion x̂_t = (1−α)x̂_{t−1} + α x_{t−1}
// are affine in the initial level: x̂_t = (1−α)^(t-1)·init + c_t. The best
// init for fixed α therefore solves a scalar least-squares problem.
double ses_sse_best_init(const std::vector<double>& series, double alpha) {
  const std::size_t n = series.size();
  std::vector<double> coef(n), offset(n);
  coef[0] = 1.0;
  offset[0] = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    coef[t] = (1.0 - alpha) * coef[t - 1];
    offset[t] = (1.0 - alpha) * offset[t - 1] + alpha * series[t - 1];
  }
  double a2 = 0.0, ab = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    a2 += coef[t] * coef[t];
    ab += coef[t] * (series[t] - offset[t]);
  }
  const double init = a2 > 0.0 ? ab / a2 : 0.0;
  double sse = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double e = series[t] - (coef[t] * init + offset[t]);
    sse += e * e;
  }
  return sse;
}

}  // namespace

double ses_alpha_grid(const std::vector<double>& series) {
  double best_alpha = 0.0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 100; ++i) {
    const double alpha = i / 100.0;
    const double sse = ses_sse_best_init(series, alpha);
    if (sse < best_sse) {
      best_sse = sse;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

double lambda_grid_scan(const std::vector<double>& train, int season) {
  const int blocks = static_cast<int>(train.size()) / season;
  if (blocks < 2) throw std::invalid_argument("lambda_grid_scan: too short");
  double best_lambda = 1.0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= 30; ++step) {
    const double lambda = -1.0 + 0.1 * step;
    std::vector<double> ratios;
    for (int b = 0; b < blocks; ++b) {
      long double sum = 0.0L;
      for (int j = 0; j < season; ++j) sum += train[b * season + j];
      const long double mean = sum / season;
      long double ss = 0.0L;
      for (int j = 0; j < season; ++j) {
        const long double d = train[b * season + j] - mean;
        ss += d * d;
      }
      const long double sd = sqrtl(ss / (season - 1));
      ratios.push_back(static_cast<double>(
          sd / powl(mean, static_cast<long double>(1.0 - lambda))));
    }
    double mean_r = std::accumulate(ratios.begin(), ratios.end(), 0.0) /
                    static_cast<double>(ratios.size());
    if (!(mean_r > 0.0)) continue;
    double ss = 0.0;
    for (double r : ratios) ss += (r - mean_r) * (r - mean_r);
    const double cv =
        std::sqrt(ss / (static_cast<double>(ratios.size()) - 1.0)) / mean_r;
    if (cv < best_value) {
      best_value = cv;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

double gpr_dense_predict(const std::vector<std::vector<double>>& features,
                         const std::vector<double>& targets,
                         const std::vector<double>& query, double bandwidth,
                         double noise_var) {
  const std::size_t n = features.size();
  if (n == 0 || targets.size() != n) {
    throw std::invalid_argument("gpr_dense_predict: bad sizes");
  }
  auto kernel = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      d2 += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::exp(-d2 / (2.0 * bandwidth * bandwidth));
  };
  // Dense system (K + noise I) w = y, solved by Gaussian elimination with
  // partial pivoting — deliberately not a Cholesky path.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = kernel(features[i], features[j]) + (i == j ? noise_var : 0.0);
    }
    a[i][n] = targets[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0) throw std::runtime_error("singular system");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> w(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double rhs = a[i][n];
    for (std::size_t j = i + 1; j < n; ++j) rhs -= a[i][j] * w[j];
    w[i] = rhs / a[i][i];
  }
  double pred = 0.0;
  for (std::size_t i = 0; i < n; ++i) pred += kernel(query, features[i]) * w[i];
  return pred;
}

double knn_exhaustive(const std::vector<std::vector<double>>& features,
                      const std::vector<double>& targets,
                      const std::vector<double>& query, int k, int p) {
  const std::size_t n = features.size();
  if (k <= 0 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("knn_exhaustive: bad k");
  }
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) {
      acc += std::pow(std::fabs(features[i][j] - query[j]),
                      static_cast<double>(p));
    }
    dist.emplace_back(std::pow(acc, 1.0 / p), i);
  }
  // Selection with the engine's tie rule: smaller distance first, earlier
  // row first at equal distance.
  std::sort(dist.begin(), dist.end());
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += targets[dist[static_cast<std::size_t>(i)].second];
  return sum / k;
}

namespace {

std::vector<std::vector<double>> svr_kernel_matrix(
    const std::vector<std::vector<double>>& features, double sigma) {
  const std::size_t n = features.size();
  std::vector<std::vector<double>> k(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < features[i].size(); ++c) {
        const double d = features[i][c] - features[j][c];
        d2 += d * d;
      }
      k[i][j] = std::exp(-sigma * d2);
    }
  }
  return k;
}

// Projection of beta onto {sum(beta)=0, |beta_i| <= C} by bisection on the
// shift multiplier.
void project_box_hyperplane(std::vector<double>& beta, double cost) {
  auto shifted_sum = [&](double tau) {
    double s = 0.0;
    for (double b : beta) s += std::clamp(b - tau, -cost, cost);
    return s;
  };
  double lo = -2.0 * cost, hi = 2.0 * cost;
  for (double b : beta) {
    lo = std::min(lo, b - cost);
    hi = std::max(hi, b + cost);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (shifted_sum(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double tau = 0.5 * (lo + hi);
  for (double& b : beta) b = std::clamp(b - tau, -cost, cost);
}

}  // namespace

double svr_objective_of(const std::vector<std::vector<double>>& features,
                        const std::vector<double>& targets, double sigma,
                        double epsilon, const std::vector<double>& beta) {
  const auto k = svr_kernel_matrix(features, sigma);
  const std::size_t n = features.size();
  double quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) quad += beta[i] * k[i][j] * beta[j];
  }
  double lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lin += epsilon * std::fabs(beta[i]) - targets[i] * beta[i];
  }
  return 0.5 * quad + lin;
}

double svr_qp_objective(const std::vector<std::vector<double>>& features,
                        const std::vector<double>& targets, double sigma,
                        double cost, double epsilon, int iterations) {
  const auto k = svr_kernel_matrix(features, sigma);
  const std::size_t n = features.size();
  // Lipschitz bound by Gershgorin row sums.
  double lip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(k[i][j]);
    lip = std::max(lip, row);
  }
  const double step = 1.0 / (lip + 1.0);
  std::vector<double> beta(n, 0.0);
  std::vector<double> grad(n, 0.0);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double g = -targets[i];
      for (std::size_t j = 0; j < n; ++j) g += k[i][j] * beta[j];
      // Subgradient of epsilon*|beta_i|: sign where nonzero, the shrinking
      // direction at zero.
      if (beta[i] > 0.0) {
        g += epsilon;
      } else if (beta[i] < 0.0) {
        g -= epsilon;
      } else {
        if (g > epsilon) g -= epsilon;
        else if (g < -epsilon) g += epsilon;
        else g = 0.0;
      }
      grad[i] = g;
    }
    for (std::size_t i = 0; i < n; ++i) beta[i] -= step * grad[i];
    project_box_hyperplane(beta, cost);
  }
  return svr_objective_of(features, targets, sigma, epsilon, beta);
}

std::vector<double> ranks_by_pair_counts(const std::vector<double>& errors) {
  const std::size_t m = errors.size();
  std::vector<double> ranks(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    int below = 0;
    int equal = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (errors[j] < errors[i]) ++below;
      if (errors[j] == errors[i]) ++equal;
    }
    // below strictly smaller values, then the tied block occupies the next
    // `equal` positions; the midrank is their average.
    ranks[i] = below + (equal + 1) / 2.0;
  }
  return ranks;
}

}  // namespace semifore::oracles
