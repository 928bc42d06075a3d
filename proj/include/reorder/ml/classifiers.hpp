#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "reorder/orderings.hpp"
#include "reorder/rng.hpp"

namespace reorder::ml {

constexpr std::size_t kNumClasses = 4;  // one per OrderingLabel

enum class Algorithm { decision_tree, random_forest, knn, naive_bayes };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

/// String-keyed hyperparameters; unknown keys are a ConfigError so grid
/// typos fail loudly.
using Hyperparams = std::map<std::string, std::string>;

struct TreeParams {
  int max_depth = 0;          // 0 = unlimited
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  int max_features = 0;       // 0 = all features at every split
};

/// CART classification tree, gini criterion, midpoint thresholds. Ties in
/// impurity break toward the lower feature index, then the lower threshold.
class DecisionTree {
 public:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::array<std::int64_t, kNumClasses> counts{};
  };

  void fit(std::span<const double> X, std::size_t n_cols,
           std::span<const OrderingLabel> y,
           std::span<const std::size_t> sample_indices, const TreeParams& params,
           SplitMix64* feature_rng);
  std::size_t predict_class(std::span<const double> row) const;

  std::vector<Node> nodes;

  bool operator==(const DecisionTree&) const = default;
};

class RandomForest {
 public:
  struct Params {
    int n_estimators = 100;
    bool bootstrap = true;
    TreeParams tree;
  };

  void fit(std::span<const double> X, std::size_t n_cols,
           std::span<const OrderingLabel> y, const Params& params,
           std::uint64_t seed, int n_threads);
  std::size_t predict_class(std::span<const double> row) const;

  std::vector<DecisionTree> trees;

  bool operator==(const RandomForest&) const = default;
};

/// k nearest neighbours over the stored (scaled) training set, Euclidean
/// distance, majority vote. Distance ties prefer the lower training index.
class Knn {
 public:
  int k = 5;
  std::size_t n_cols = 0;
  std::vector<double> train_X;
  std::vector<std::uint8_t> train_y;

  void fit(std::span<const double> X, std::size_t n_cols_,
           std::span<const OrderingLabel> y, int k_);
  std::size_t predict_class(std::span<const double> row) const;

  bool operator==(const Knn&) const = default;
};

/// Gaussian naive Bayes; variances get a smoothing floor so constant
/// features stay usable.
class GaussianNB {
 public:
  double var_smoothing = 1e-9;
  std::array<double, kNumClasses> log_prior{};
  std::array<char, kNumClasses> present{};
  std::vector<double> mean;  // class-major, n_cols per class
  std::vector<double> var;
  std::size_t n_cols = 0;

  void fit(std::span<const double> X, std::size_t n_cols_,
           std::span<const OrderingLabel> y, double smoothing);
  std::size_t predict_class(std::span<const double> row) const;

  bool operator==(const GaussianNB&) const = default;
};

}  // namespace reorder::ml
