#pragma once

#include "semifore/lagmatrix.hpp"

namespace semifore::models {

// Shared preprocessing for one support-vector tuning sweep: standardized
// features and targets plus the pairwise squared distances, which every
// kernel width reuses.
struct SvrProblem {
  ScalingStats feature_stats;
  double target_mean = 0.0;
  double target_sd = 1.0;
  bool degenerate_targets = false;  // zero target spread
  std::vector<std::vector<double>> scaled_features;
  std::vector<double> scaled_targets;
  std::vector<double> dist2;  // row-major n*n
};

SvrProblem svr_prepare(const LagMatrix& data);

// Epsilon-insensitive support vector regression with kernel
// exp(-sigma * ||a-b||^2), solved by sequential minimal optimization with
// maximal-violating-pair selection. Training runs in standardized target
// space with the given epsilon; predictions are mapped back.
class SvrModel {
 public:
  static SvrModel fit(const SvrProblem& problem, double sigma, double cost,
                      double epsilon = 0.1);

  double predict(const std::vector<double>& raw_features) const;

  // Dual objective 0.5 b'Kb + sum(eps|b_i| - y_i b_i) of the returned
  // coefficients, in standardized space; exposed for optimality checks.
  double objective() const { return objective_; }
  const std::vector<double>& beta() const { return beta_; }
  double bias() const { return bias_; }

 private:
  ScalingStats stats_;
  std::vector<std::vector<double>> support_;
  std::vector<double> beta_;
  double bias_ = 0.0;
  double sigma_ = 1.0;
  double target_mean_ = 0.0;
  double target_sd_ = 1.0;
  bool degenerate_ = false;
  double objective_ = 0.0;
};

}  // namespace semifore::models
