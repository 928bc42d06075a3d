#include <future>
#include <numeric>

#include "reorder/ml/classifiers.hpp"

namespace reorder::ml {

void RandomForest::fit(std::span<const double> X, std::size_t n_cols,
                       std::span<const OrderingLabel> y, const Params& params,
                       std::uint64_t seed, int n_threads) {
  const std::size_t n_rows = y.size();
  trees.assign(static_cast<std::size_t>(params.n_estimators), DecisionTree{});

  // Each tree gets its own seed stream, so the result is identical no matter
  // how the trees are scheduled across threads.
  auto build_tree = [&](std::size_t t) {
    SplitMix64 rng(derive_seed(seed, t));
    std::vector<std::size_t> sample(n_rows);
    if (params.bootstrap) {
      for (std::size_t i = 0; i < n_rows; ++i) sample[i] = rng.next_below(n_rows);
    } else {
      std::iota(sample.begin(), sample.end(), 0);
    }
    trees[t].fit(X, n_cols, y, sample, params.tree, &rng);
  };

  const std::size_t n_trees = trees.size();
  if (n_threads <= 1 || n_trees <= 1) {
    for (std::size_t t = 0; t < n_trees; ++t) build_tree(t);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(n_threads, n_trees);
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t t = w; t < n_trees; t += workers) build_tree(t);
    }));
  }
  for (std::future<void>& f : futures) f.get();
}

std::size_t RandomForest::predict_class(std::span<const double> row) const {
  std::array<std::int64_t, kNumClasses> votes{};
  for (const DecisionTree& tree : trees) votes[tree.predict_class(row)]++;
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c)
    if (votes[c] > votes[best]) best = c;  // ties keep the earlier label
  return best;
}

}  // namespace reorder::ml
