#include <algorithm>
#include <cmath>

#include "reorder/ml/classifiers.hpp"

namespace reorder::ml {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::decision_tree:
      return "decision_tree";
    case Algorithm::random_forest:
      return "random_forest";
    case Algorithm::knn:
      return "knn";
    case Algorithm::naive_bayes:
      return "naive_bayes";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "decision_tree") return Algorithm::decision_tree;
  if (s == "random_forest") return Algorithm::random_forest;
  if (s == "knn") return Algorithm::knn;
  if (s == "naive_bayes") return Algorithm::naive_bayes;
  throw ConfigError("unknown algorithm '" + s +
                    "' (decision_tree, random_forest, knn, naive_bayes)");
}

namespace {

double gini(const std::array<std::int64_t, kNumClasses>& counts, std::int64_t total) {
  if (total == 0) return 0.0;
  double sum_sq = 0.0;
  for (std::int64_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

struct BestSplit {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;  // weighted child gini, lower is better
};

}  // namespace

void DecisionTree::fit(std::span<const double> X, std::size_t n_cols,
                       std::span<const OrderingLabel> y,
                       std::span<const std::size_t> sample_indices,
                       const TreeParams& params, SplitMix64* feature_rng) {
  nodes.clear();

  struct Work {
    std::vector<std::size_t> indices;
    std::int32_t node;
    int depth;
  };

  std::vector<Work> stack;
  nodes.emplace_back();
  stack.push_back({{sample_indices.begin(), sample_indices.end()}, 0, 0});

  std::vector<int> feature_order(n_cols);
  std::vector<std::size_t> sorted;

  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();

    std::array<std::int64_t, kNumClasses> counts{};
    for (std::size_t i : w.indices) counts[static_cast<std::size_t>(y[i])]++;
    nodes[w.node].counts = counts;

    const std::int64_t total = static_cast<std::int64_t>(w.indices.size());
    const double node_gini = gini(counts, total);
    const bool pure = node_gini == 0.0;
    const bool depth_capped = params.max_depth > 0 && w.depth >= params.max_depth;
    if (pure || depth_capped ||
        total < static_cast<std::int64_t>(params.min_samples_split))
      continue;  // leaf; counts already recorded

    // candidate features: all, or a seeded sample of max_features of them
    for (std::size_t f = 0; f < n_cols; ++f) feature_order[f] = static_cast<int>(f);
    std::size_t n_candidates = n_cols;
    if (params.max_features > 0 &&
        static_cast<std::size_t>(params.max_features) < n_cols && feature_rng) {
      for (std::size_t i = 0; i < static_cast<std::size_t>(params.max_features); ++i) {
        const std::size_t j = i + feature_rng->next_below(n_cols - i);
        std::swap(feature_order[i], feature_order[j]);
      }
      n_candidates = static_cast<std::size_t>(params.max_features);
      std::sort(feature_order.begin(), feature_order.begin() + n_candidates);
    }

    BestSplit best;
    for (std::size_t fi = 0; fi < n_candidates; ++fi) {
      const int f = feature_order[fi];
      sorted.assign(w.indices.begin(), w.indices.end());
      std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        return X[a * n_cols + f] < X[b * n_cols + f];
      });

      std::array<std::int64_t, kNumClasses> left{};
      std::array<std::int64_t, kNumClasses> right = counts;
      for (std::size_t pos = 0; pos + 1 < sorted.size(); ++pos) {
        const std::size_t cls = static_cast<std::size_t>(y[sorted[pos]]);
        left[cls]++;
        right[cls]--;
        const double a = X[sorted[pos] * n_cols + f];
        const double b = X[sorted[pos + 1] * n_cols + f];
        if (a == b) continue;  // split only between distinct values
        const std::int64_t n_left = static_cast<std::int64_t>(pos) + 1;
        const std::int64_t n_right = total - n_left;
        if (n_left < params.min_samples_leaf || n_right < params.min_samples_leaf)
          continue;
        const double score =
            (static_cast<double>(n_left) * gini(left, n_left) +
             static_cast<double>(n_right) * gini(right, n_right)) /
            static_cast<double>(total);
        const double threshold = a + (b - a) / 2.0;
        if (!best.found || score < best.score ||
            (score == best.score &&
             (f < best.feature || (f == best.feature && threshold < best.threshold)))) {
          best = {true, f, threshold, score};
        }
      }
    }

    if (!best.found) continue;  // no admissible split, e.g. all candidates constant

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : w.indices) {
      if (X[i * n_cols + best.feature] <= best.threshold)
        left_idx.push_back(i);
      else
        right_idx.push_back(i);
    }

    const std::int32_t left_node = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    const std::int32_t right_node = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    nodes[w.node].feature = best.feature;
    nodes[w.node].threshold = best.threshold;
    nodes[w.node].left = left_node;
    nodes[w.node].right = right_node;

    // right pushed first so the left subtree is laid out first (preorder)
    stack.push_back({std::move(right_idx), right_node, w.depth + 1});
    stack.push_back({std::move(left_idx), left_node, w.depth + 1});
  }
}

std::size_t DecisionTree::predict_class(std::span<const double> row) const {
  std::int32_t node = 0;
  while (nodes[node].feature >= 0) {
    node = row[static_cast<std::size_t>(nodes[node].feature)] <= nodes[node].threshold
               ? nodes[node].left
               : nodes[node].right;
  }
  const auto& counts = nodes[node].counts;
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c)
    if (counts[c] > counts[best]) best = c;  // ties keep the earlier label
  return best;
}

}  // namespace reorder::ml
