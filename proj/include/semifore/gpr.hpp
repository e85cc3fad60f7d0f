#pragma once

#include "semifore/lagmatrix.hpp"

namespace semifore::models {

// Gaussian process regression with a radial basis kernel
// exp(-||a-b||^2 / (2 bw^2)) on standardized features and centered targets.
// The bandwidth is the median pairwise distance between training rows, the
// noise floor a small fraction of the target variance; both degenerate to
// safe constants on constant inputs. The kernel system is solved by
// Cholesky with an escalating jitter; if it stays indefinite the fit fails.
class GprModel {
 public:
  static GprModel fit(const LagMatrix& data);

  double predict(const std::vector<double>& raw_features) const;

  double bandwidth() const { return bandwidth_; }
  double noise_var() const { return noise_var_; }

 private:
  std::vector<std::vector<double>> scaled_;
  std::vector<double> weights_;
  ScalingStats stats_;
  double target_mean_ = 0.0;
  double bandwidth_ = 1.0;
  double noise_var_ = 1e-8;
};

}  // namespace semifore::models
