#include <cmath>
#include <limits>

#include "reorder/ml/classifiers.hpp"

namespace reorder::ml {

void GaussianNB::fit(std::span<const double> X, std::size_t n_cols_,
                     std::span<const OrderingLabel> y, double smoothing) {
  if (smoothing < 0) throw ConfigError("var_smoothing must be >= 0");
  var_smoothing = smoothing;
  n_cols = n_cols_;
  mean.assign(kNumClasses * n_cols, 0.0);
  var.assign(kNumClasses * n_cols, 0.0);
  present.fill(0);
  log_prior.fill(-std::numeric_limits<double>::infinity());

  const std::size_t n_rows = y.size();
  std::array<std::int64_t, kNumClasses> counts{};
  for (std::size_t i = 0; i < n_rows; ++i) {
    const std::size_t cls = static_cast<std::size_t>(y[i]);
    counts[cls]++;
    for (std::size_t c = 0; c < n_cols; ++c)
      mean[cls * n_cols + c] += X[i * n_cols + c];
  }
  for (std::size_t cls = 0; cls < kNumClasses; ++cls) {
    if (counts[cls] == 0) continue;
    present[cls] = 1;
    log_prior[cls] = std::log(static_cast<double>(counts[cls]) /
                              static_cast<double>(n_rows));
    for (std::size_t c = 0; c < n_cols; ++c)
      mean[cls * n_cols + c] /= static_cast<double>(counts[cls]);
  }
  for (std::size_t i = 0; i < n_rows; ++i) {
    const std::size_t cls = static_cast<std::size_t>(y[i]);
    for (std::size_t c = 0; c < n_cols; ++c) {
      const double d = X[i * n_cols + c] - mean[cls * n_cols + c];
      var[cls * n_cols + c] += d * d;
    }
  }
  double max_var = 0.0;
  for (std::size_t cls = 0; cls < kNumClasses; ++cls) {
    if (!present[cls]) continue;
    for (std::size_t c = 0; c < n_cols; ++c) {
      var[cls * n_cols + c] /= static_cast<double>(counts[cls]);
      max_var = std::max(max_var, var[cls * n_cols + c]);
    }
  }
  // keep degenerate (constant) features usable
  const double floor = var_smoothing * std::max(max_var, 1.0);
  for (std::size_t cls = 0; cls < kNumClasses; ++cls) {
    if (!present[cls]) continue;
    for (std::size_t c = 0; c < n_cols; ++c)
      var[cls * n_cols + c] += floor;
  }
}

std::size_t GaussianNB::predict_class(std::span<const double> row) const {
  double best_score = -std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  bool have_best = false;
  for (std::size_t cls = 0; cls < kNumClasses; ++cls) {
    if (!present[cls]) continue;
    double score = log_prior[cls];
    for (std::size_t c = 0; c < n_cols; ++c) {
      const double v = var[cls * n_cols + c];
      const double d = row[c] - mean[cls * n_cols + c];
      score += -0.5 * std::log(2.0 * M_PI * v) - (d * d) / (2.0 * v);
    }
    if (!have_best || score > best_score) {  // ties keep the earlier label
      best_score = score;
      best = cls;
      have_best = true;
    }
  }
  return best;
}

}  // namespace reorder::ml
