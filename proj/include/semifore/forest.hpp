#pragma once

#include <cstdint>

#include "semifore/lagmatrix.hpp"

namespace semifore::models {

struct ForestOptions {
  int num_trees = 500;
  int mtry = 5;
  int min_node_size = 5;
  // Split rule: exhaustive variance scan, or one uniform random cut per
  // tried feature.
  bool extratrees_split = false;
  // Bagging: multinomial resampling of the rows, carried as weights.
  bool bootstrap = true;
  std::uint64_t seed = 0;
};

// Regression forest over lagged features. Fully deterministic for a given
// (data, options): every tree owns a counter-based random stream derived
// from the seed and its index, and node construction is depth-first.
class ForestModel {
 public:
  static ForestModel fit(const LagMatrix& data, const ForestOptions& options);

  double predict(const std::vector<double>& raw_features) const;

  int num_trees() const { return static_cast<int>(trees_.size()); }

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
  };
  std::vector<std::vector<Node>> trees_;

  friend class TreeBuilder;
};

}  // namespace semifore::models
