#pragma once

#include "semifore/lagmatrix.hpp"

namespace semifore::models {

// Nearest-neighbor regression on standardized features with a Minkowski
// distance of order p in {1, 2, 3}. Distance ties break toward the earlier
// training row; the prediction is the unweighted mean of the k neighbor
// targets.
class KnnModel {
 public:
  KnnModel(const LagMatrix& data, int k, int p);

  double predict(const std::vector<double>& raw_features) const;

  int k() const { return k_; }
  int p() const { return p_; }

 private:
  std::vector<std::vector<double>> scaled_;
  std::vector<double> targets_;
  ScalingStats stats_;
  int k_ = 1;
  int p_ = 2;
};

}  // namespace semifore::models
