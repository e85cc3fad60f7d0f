#include "semifore/gpr.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "semifore/errors.hpp"

namespace semifore::models {

namespace {

double squared_distance(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double d2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    d2 += d * d;
  }
  return d2;
}

// Median pairwise distance between rows, by partial selection rather than a
// full sort. Fewer than two rows (or all-coincident rows) fall back to 1.
double median_pairwise_distance(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n < 2) return 1.0;
  std::vector<double> dist;
  dist.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist.push_back(std::sqrt(squared_distance(rows[i], rows[j])));
    }
  }
  const std::size_t mid = dist.size() / 2;
  std::nth_element(dist.begin(), dist.begin() + mid, dist.end());
  double median = dist[mid];
  if (dist.size() % 2 == 0) {
    const double below =
        *std::max_element(dist.begin(), dist.begin() + mid);
    median = 0.5 * (below + median);
  }
  return median > 0.0 ? median : 1.0;
}

}  // namespace

GprModel GprModel::fit(const LagMatrix& data) {
  const std::size_t n = data.targets.size();
  if (n == 0) throw ValidationError("GprModel: empty training set");

  GprModel model;
  model.stats_ = fit_scaling(data.features);
  model.scaled_.reserve(n);
  for (const auto& row : data.features) {
    model.scaled_.push_back(apply_scaling(model.stats_, row));
  }
  model.target_mean_ =
      std::accumulate(data.targets.begin(), data.targets.end(), 0.0) /
      static_cast<double>(n);

  model.bandwidth_ = median_pairwise_distance(model.scaled_);

  double target_var = 0.0;
  if (n > 1) {
    for (double t : data.targets) {
      const double d = t - model.target_mean_;
      target_var += d * d;
    }
    target_var /= static_cast<double>(n - 1);
  }
  model.noise_var_ = target_var > 0.0 ? 1e-3 * target_var : 1e-8;

  Eigen::MatrixXd gram(n, n);
  const double denom = 2.0 * model.bandwidth_ * model.bandwidth_;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double k =
          std::exp(-squared_distance(model.scaled_[i], model.scaled_[j]) /
                   denom);
      gram(i, j) = k;
      gram(j, i) = k;
    }
    gram(i, i) += model.noise_var_;
  }
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) y(i) = data.targets[i] - model.target_mean_;

  double jitter = 1e-8 * gram.trace() / static_cast<double>(n);
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd w = llt.solve(y);
      model.weights_.assign(w.data(), w.data() + n);
      return model;
    }
    if (attempt == 3) break;
    gram.diagonal().array() += jitter;
    jitter *= 10.0;
  }
  throw FitError("GprModel: kernel matrix not positive definite");
}

double GprModel::predict(const std::vector<double>& raw_features) const {
  const std::vector<double> query = apply_scaling(stats_, raw_features);
  const double denom = 2.0 * bandwidth_ * bandwidth_;
  double acc = 0.0;
  for (std::size_t i = 0; i < scaled_.size(); ++i) {
    acc += std::exp(-squared_distance(query, scaled_[i]) / denom) *
           weights_[i];
  }
  return acc + target_mean_;
}

}  // namespace semifore::models
