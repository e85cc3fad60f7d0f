#include "semifore/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "semifore/errors.hpp"
#include "semifore/rng.hpp"

namespace semifore::models {

namespace {

struct SplitChoice {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double score = -std::numeric_limits<double>::infinity();
};

}  // namespace

class TreeBuilder {
 public:
  TreeBuilder(const LagMatrix& data, const ForestOptions& options,
              const std::vector<std::vector<int>>& presorted)
      : data_(data), options_(options), presorted_(presorted),
        num_features_(data.lags) {}

  std::vector<ForestModel::Node> build(std::uint64_t tree_seed) {
    rng_ = std::make_unique<rng::CounterRng>(tree_seed);
    const int n = static_cast<int>(data_.targets.size());

    counts_.assign(n, 0);
    if (options_.bootstrap) {
      for (int i = 0; i < n; ++i) {
        ++counts_[static_cast<std::size_t>(
            rng_->next_below(static_cast<std::uint64_t>(n)))];
      }
    } else {
      std::fill(counts_.begin(), counts_.end(), 1);
    }

    nodes_.clear();
    scratch_.assign(n, 0);
    if (options_.extratrees_split) {
      rows_.clear();
      for (int i = 0; i < n; ++i) {
        if (counts_[i] > 0) rows_.push_back(i);
      }
      grow_random_cut(0, static_cast<int>(rows_.size()));
    } else {
      arrays_.assign(num_features_, {});
      for (int f = 0; f < num_features_; ++f) {
        for (int row : presorted_[f]) {
          if (counts_[row] > 0) arrays_[f].push_back(row);
        }
      }
      grow_variance(0, static_cast<int>(arrays_[0].size()));
    }
    return std::move(nodes_);
  }

 private:
  double weight_of(int lo, int hi, const std::vector<int>& rows,
                   double* sum_out) const {
    double w = 0.0, s = 0.0;
    for (int i = lo; i < hi; ++i) {
      const int row = rows[i];
      w += counts_[row];
      s += counts_[row] * data_.targets[row];
    }
    *sum_out = s;
    return w;
  }

  int make_leaf(double weight, double sum) {
    ForestModel::Node node;
    node.value = sum / weight;
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Exhaustive scan over sorted feature columns: maximize
  // S_L^2/W_L + S_R^2/W_R, which orders splits identically to the weighted
  // variance reduction.
  int grow_variance(int lo, int hi) {
    double sum = 0.0;
    const double weight = weight_of(lo, hi, arrays_[0], &sum);
    if (weight < 2.0 * options_.min_node_size) return make_leaf(weight, sum);

    const std::vector<int> tried = rng::sample_without_replacement(
        *rng_, num_features_, std::min(options_.mtry, num_features_));
    SplitChoice best;
    for (int f : tried) {
      const auto& order = arrays_[f];
      double wl = 0.0, sl = 0.0;
      for (int i = lo; i < hi - 1; ++i) {
        const int row = order[i];
        wl += counts_[row];
        sl += counts_[row] * data_.targets[row];
        const double here = data_.features[row][f];
        const double next = data_.features[order[i + 1]][f];
        if (!(here < next)) continue;
        const double wr = weight - wl;
        if (wl < options_.min_node_size || wr < options_.min_node_size) {
          continue;
        }
        const double score = sl * sl / wl + (sum - sl) * (sum - sl) / wr;
        if (score > best.score) {
          best.found = true;
          best.feature = f;
          best.threshold = 0.5 * (here + next);
          best.score = score;
        }
      }
    }
    if (!best.found) return make_leaf(weight, sum);

    const int node_index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[node_index].feature = best.feature;
    nodes_[node_index].threshold = best.threshold;

    int mid = lo;
    for (int f = 0; f < num_features_; ++f) {
      mid = partition_stable(arrays_[f], lo, hi, best.feature, best.threshold);
    }
    const int left = grow_variance(lo, mid);
    const int right = grow_variance(mid, hi);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
  }

  // One uniform cut per tried feature; the best cut by the same score wins.
  int grow_random_cut(int lo, int hi) {
    double sum = 0.0;
    const double weight = weight_of(lo, hi, rows_, &sum);
    if (weight < 2.0 * options_.min_node_size) return make_leaf(weight, sum);

    const std::vector<int> tried = rng::sample_without_replacement(
        *rng_, num_features_, std::min(options_.mtry, num_features_));
    SplitChoice best;
    for (int f : tried) {
      double fmin = std::numeric_limits<double>::infinity();
      double fmax = -std::numeric_limits<double>::infinity();
      for (int i = lo; i < hi; ++i) {
        const double v = data_.features[rows_[i]][f];
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
      }
      if (!(fmax > fmin)) continue;
      const double cut = rng_->next_range(fmin, fmax);
      double wl = 0.0, sl = 0.0;
      for (int i = lo; i < hi; ++i) {
        const int row = rows_[i];
        if (data_.features[row][f] <= cut) {
          wl += counts_[row];
          sl += counts_[row] * data_.targets[row];
        }
      }
      const double wr = weight - wl;
      if (wl < options_.min_node_size || wr < options_.min_node_size) continue;
      const double score = sl * sl / wl + (sum - sl) * (sum - sl) / wr;
      if (score > best.score) {
        best.found = true;
        best.feature = f;
        best.threshold = cut;
        best.score = score;
      }
    }
    if (!best.found) return make_leaf(weight, sum);

    const int node_index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[node_index].feature = best.feature;
    nodes_[node_index].threshold = best.threshold;

    const int mid = partition_stable(rows_, lo, hi, best.feature,
                                     best.threshold);
    const int left = grow_random_cut(lo, mid);
    const int right = grow_random_cut(mid, hi);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
  }

  // Stable two-way partition of rows[lo, hi) on feature <= threshold, via
  // the scratch buffer; returns the boundary. Stability keeps the
  // per-feature orderings sorted in both children.
  int partition_stable(std::vector<int>& rows, int lo, int hi, int feature,
                       double threshold) {
    int n_left = 0;
    int n_right = 0;
    for (int i = lo; i < hi; ++i) {
      const int row = rows[i];
      if (data_.features[row][feature] <= threshold) {
        rows[lo + n_left++] = row;
      } else {
        scratch_[n_right++] = row;
      }
    }
    std::copy(scratch_.begin(), scratch_.begin() + n_right,
              rows.begin() + lo + n_left);
    return lo + n_left;
  }

  const LagMatrix& data_;
  const ForestOptions& options_;
  const std::vector<std::vector<int>>& presorted_;
  const int num_features_;
  std::unique_ptr<rng::CounterRng> rng_;
  std::vector<int> counts_;
  std::vector<std::vector<int>> arrays_;
  std::vector<int> rows_;
  std::vector<int> scratch_;
  std::vector<ForestModel::Node> nodes_;
};

ForestModel ForestModel::fit(const LagMatrix& data,
                             const ForestOptions& options) {
  const int n = static_cast<int>(data.targets.size());
  if (n == 0) throw ValidationError("ForestModel: empty training set");
  if (options.num_trees < 1) {
    throw ValidationError("ForestModel: need at least one tree");
  }
  if (options.mtry < 1 || options.mtry > data.lags) {
    throw ValidationError("ForestModel: mtry out of range");
  }
  if (options.min_node_size < 1) {
    throw ValidationError("ForestModel: min_node_size must be >= 1");
  }

  // Sorted row orders are shared by all trees; each tree filters them down
  // to its bootstrap support.
  std::vector<std::vector<int>> presorted;
  if (!options.extratrees_split) {
    presorted.assign(data.lags, {});
    for (int f = 0; f < data.lags; ++f) {
      auto& order = presorted[f];
      order.resize(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return data.features[a][f] < data.features[b][f];
      });
    }
  }

  ForestModel model;
  model.trees_.reserve(static_cast<std::size_t>(options.num_trees));
  TreeBuilder builder(data, options, presorted);
  for (int t = 0; t < options.num_trees; ++t) {
    model.trees_.push_back(builder.build(
        rng::split_stream(options.seed, static_cast<std::uint64_t>(t))
            .seed()));
  }
  return model;
}

double ForestModel::predict(const std::vector<double>& raw_features) const {
  double acc = 0.0;
  for (const auto& tree : trees_) {
    int node = 0;
    while (tree[node].feature >= 0) {
      node = raw_features[tree[node].feature] <= tree[node].threshold
                 ? tree[node].left
                 : tree[node].right;
    }
    acc += tree[node].value;
  }
  return acc / static_cast<double>(trees_.size());
}

}  // namespace semifore::models
