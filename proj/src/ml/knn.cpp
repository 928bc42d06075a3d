#include <algorithm>

#include "reorder/kernels.hpp"
#include "reorder/ml/classifiers.hpp"

namespace reorder::ml {

void Knn::fit(std::span<const double> X, std::size_t n_cols_,
              std::span<const OrderingLabel> y, int k_) {
  if (k_ < 1) throw ConfigError("n_neighbors must be >= 1");
  if (static_cast<std::size_t>(k_) > y.size())
    throw ConfigError("n_neighbors=" + std::to_string(k_) + " exceeds " +
                      std::to_string(y.size()) + " training rows");
  k = k_;
  n_cols = n_cols_;
  train_X.assign(X.begin(), X.end());
  train_y.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    train_y[i] = static_cast<std::uint8_t>(y[i]);
}

std::size_t Knn::predict_class(std::span<const double> row) const {
  const std::size_t n_rows = train_y.size();
  std::vector<double> dist(n_rows);
  kernels::squared_distances(train_X, n_cols, row, dist);

  std::vector<std::size_t> order(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) order[i] = i;
  const std::size_t kk = static_cast<std::size_t>(k);
  std::partial_sort(order.begin(), order.begin() + kk, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                    });

  std::array<std::int64_t, kNumClasses> votes{};
  for (std::size_t i = 0; i < kk; ++i) votes[train_y[order[i]]]++;
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c)
    if (votes[c] > votes[best]) best = c;
  return best;
}

}  // namespace reorder::ml
