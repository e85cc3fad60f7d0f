#include "semifore/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "semifore/errors.hpp"

namespace semifore::models {

namespace {

constexpr double kStopTol = 1e-3;
constexpr int kMaxPairUpdates = 100000;
constexpr double kQuadFloor = 1e-12;

}  // namespace

SvrProblem svr_prepare(const LagMatrix& data) {
  const std::size_t n = data.targets.size();
  if (n == 0) throw ValidationError("svr_prepare: empty training set");

  SvrProblem prob;
  prob.feature_stats = fit_scaling(data.features);
  prob.scaled_features.reserve(n);
  for (const auto& row : data.features) {
    prob.scaled_features.push_back(apply_scaling(prob.feature_stats, row));
  }

  prob.target_mean =
      std::accumulate(data.targets.begin(), data.targets.end(), 0.0) /
      static_cast<double>(n);
  double ss = 0.0;
  for (double t : data.targets) {
    const double d = t - prob.target_mean;
    ss += d * d;
  }
  const double sd = n > 1 ? std::sqrt(ss / (static_cast<double>(n) - 1.0)) : 0.0;
  if (sd > 0.0) {
    prob.target_sd = sd;
  } else {
    prob.degenerate_targets = true;
  }
  prob.scaled_targets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    prob.scaled_targets[i] = (data.targets[i] - prob.target_mean) / prob.target_sd;
  }

  prob.dist2.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < prob.scaled_features[i].size(); ++c) {
        const double d = prob.scaled_features[i][c] - prob.scaled_features[j][c];
        d2 += d * d;
      }
      prob.dist2[i * n + j] = d2;
      prob.dist2[j * n + i] = d2;
    }
  }
  return prob;
}

SvrModel SvrModel::fit(const SvrProblem& problem, double sigma, double cost,
                       double epsilon) {
  if (!(sigma > 0.0) || !(cost > 0.0) || !(epsilon >= 0.0)) {
    throw ValidationError("SvrModel: sigma and cost must be positive");
  }
  const int n = static_cast<int>(problem.scaled_targets.size());

  SvrModel model;
  model.stats_ = problem.feature_stats;
  model.support_ = problem.scaled_features;
  model.sigma_ = sigma;
  model.target_mean_ = problem.target_mean;
  model.target_sd_ = problem.target_sd;
  model.degenerate_ = problem.degenerate_targets;
  model.beta_.assign(n, 0.0);
  if (model.degenerate_) return model;

  std::vector<double> kernel(problem.dist2.size());
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    kernel[i] = std::exp(-sigma * problem.dist2[i]);
  }
  const auto& y = problem.scaled_targets;

  // Doubled formulation: variables z_k in [0, cost] with sign +1 below n
  // (the alpha block) and -1 above (the alpha* block), equality constraint
  // sum(s_k z_k) = 0.
  const int nn = 2 * n;
  auto sign_of = [&](int k) { return k < n ? 1.0 : -1.0; };
  std::vector<double> z(nn, 0.0);
  std::vector<double> grad(nn);
  for (int k = 0; k < nn; ++k) {
    grad[k] = epsilon - sign_of(k) * y[k % n];
  }

  double top = 0.0, bottom = 0.0;
  auto select_pair = [&](int& i_out, int& j_out) {
    top = -std::numeric_limits<double>::infinity();
    bottom = std::numeric_limits<double>::infinity();
    i_out = -1;
    j_out = -1;
    for (int k = 0; k < nn; ++k) {
      const double s = sign_of(k);
      const bool in_up = s > 0.0 ? z[k] < cost : z[k] > 0.0;
      const bool in_low = s > 0.0 ? z[k] > 0.0 : z[k] < cost;
      const double value = -s * grad[k];
      if (in_up && value > top) {
        top = value;
        i_out = k;
      }
      if (in_low && value < bottom) {
        bottom = value;
        j_out = k;
      }
    }
  };

  int updates = 0;
  while (true) {
    int i, j;
    select_pair(i, j);
    if (i < 0 || j < 0 || top - bottom <= kStopTol) break;
    if (++updates > kMaxPairUpdates) {
      throw FitError("SvrModel: optimizer hit the update cap with gap " +
                     std::to_string(top - bottom));
    }

    const double* row_i = &kernel[(i % n) * static_cast<std::size_t>(n)];
    const double* row_j = &kernel[(j % n) * static_cast<std::size_t>(n)];
    const double s_i = sign_of(i);
    const double s_j = sign_of(j);
    const double k_ij = row_i[j % n];
    const double quad = std::max(2.0 - 2.0 * k_ij, kQuadFloor);

    double delta_i, delta_j;
    if (s_i == s_j) {
      // z_i moves by delta, z_j by -delta.
      double delta = -(grad[i] - grad[j]) / quad;
      delta = std::min(delta, std::min(cost - z[i], z[j]));
      delta = std::max(delta, std::max(-z[i], z[j] - cost));
      delta_i = delta;
      delta_j = -delta;
    } else {
      // Both move together.
      double delta = -(grad[i] + grad[j]) / quad;
      delta = std::min(delta, std::min(cost - z[i], cost - z[j]));
      delta = std::max(delta, std::max(-z[i], -z[j]));
      delta_i = delta;
      delta_j = delta;
    }
    if (delta_i == 0.0 && delta_j == 0.0) break;
    z[i] += delta_i;
    z[j] += delta_j;
    for (int k = 0; k < nn; ++k) {
      const double s_k = sign_of(k);
      grad[k] += s_k * (s_i * row_i[k % n] * delta_i +
                        s_j * row_j[k % n] * delta_j);
    }
  }

  // Bias sits between the final violating-pair bounds; at convergence the
  // midpoint is within the stopping tolerance of every KKT-consistent value.
  {
    int i, j;
    select_pair(i, j);
    if (i >= 0 && j >= 0) {
      model.bias_ = 0.5 * (top + bottom);
    }
  }

  for (int l = 0; l < n; ++l) model.beta_[l] = z[l] - z[n + l];

  double quad_term = 0.0;
  double lin_term = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      quad_term += model.beta_[a] * kernel[a * static_cast<std::size_t>(n) + b] *
                   model.beta_[b];
    }
    lin_term += epsilon * std::fabs(model.beta_[a]) - y[a] * model.beta_[a];
  }
  model.objective_ = 0.5 * quad_term + lin_term;
  return model;
}

double SvrModel::predict(const std::vector<double>& raw_features) const {
  if (degenerate_) return target_mean_;
  const std::vector<double> query = apply_scaling(stats_, raw_features);
  double acc = bias_;
  for (std::size_t l = 0; l < support_.size(); ++l) {
    if (beta_[l] == 0.0) continue;
    double d2 = 0.0;
    for (std::size_t c = 0; c < query.size(); ++c) {
      const double d = query[c] - support_[l][c];
      d2 += d * d;
    }
    acc += beta_[l] * std::exp(-sigma_ * d2);
  }
  return acc * target_sd_ + target_mean_;
}

}  // namespace semifore::models
