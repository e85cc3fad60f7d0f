#include "semifore/knn.hpp"

#include <algorithm>
#include <cmath>

#include "semifore/errors.hpp"

namespace semifore::models {

KnnModel::KnnModel(const LagMatrix& data, int k, int p) : k_(k), p_(p) {
  if (k < 1 || static_cast<std::size_t>(k) > data.targets.size()) {
    throw ValidationError("KnnModel: k out of range");
  }
  if (p < 1 || p > 3) throw ValidationError("KnnModel: p must be 1, 2 or 3");
  stats_ = fit_scaling(data.features);
  scaled_.reserve(data.features.size());
  for (const auto& row : data.features) {
    scaled_.push_back(apply_scaling(stats_, row));
  }
  targets_ = data.targets;
}

double KnnModel::predict(const std::vector<double>& raw_features) const {
  const std::vector<double> query = apply_scaling(stats_, raw_features);
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(scaled_.size());
  for (std::size_t i = 0; i < scaled_.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) {
      acc += std::pow(std::fabs(scaled_[i][j] - query[j]),
                      static_cast<double>(p_));
    }
    order.emplace_back(std::pow(acc, 1.0 / p_), i);
  }
  // Pair ordering: distance first, original row index on ties.
  std::partial_sort(order.begin(), order.begin() + k_, order.end());
  double sum = 0.0;
  for (int i = 0; i < k_; ++i) sum += targets_[order[i].second];
  return sum / k_;
}

}  // namespace semifore::models
