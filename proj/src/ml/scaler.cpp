#include "reorder/ml/scaler.hpp"

#include <cmath>

#include "reorder/kernels.hpp"

namespace reorder::ml {

std::string to_string(ScalerKind kind) {
  return kind == ScalerKind::standardization ? "standardization" : "minmax";
}

ScalerKind scaler_from_string(const std::string& s) {
  if (s == "standardization" || s == "standard") return ScalerKind::standardization;
  if (s == "minmax" || s == "max-min") return ScalerKind::minmax;
  throw ConfigError("unknown scaler '" + s + "' (use standardization or minmax)");
}

ScalerParams ScalerParams::fit(std::span<const double> X, std::size_t n_cols,
                               ScalerKind kind) {
  if (X.empty()) throw EmptyDataset("cannot fit a scaler on an empty dataset");
  const std::size_t n_rows = X.size() / n_cols;

  ScalerParams p;
  p.kind = kind;
  p.shift.resize(n_cols);
  p.scale.resize(n_cols);
  p.constant.assign(n_cols, 0);

  for (std::size_t c = 0; c < n_cols; ++c) {
    double lo = X[c], hi = X[c], sum = 0.0;
    for (std::size_t r = 0; r < n_rows; ++r) {
      const double v = X[r * n_cols + c];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    if (kind == ScalerKind::minmax) {
      p.shift[c] = lo;
      if (hi > lo) {
        p.scale[c] = 1.0 / (hi - lo);
      } else {
        p.scale[c] = 0.0;
        p.constant[c] = 1;
      }
    } else {
      const double mean = sum / static_cast<double>(n_rows);
      double sq = 0.0;
      for (std::size_t r = 0; r < n_rows; ++r) {
        const double d = X[r * n_cols + c] - mean;
        sq += d * d;
      }
      const double std_dev = std::sqrt(sq / static_cast<double>(n_rows));
      p.shift[c] = mean;
      if (std_dev > 0.0) {
        p.scale[c] = 1.0 / std_dev;
      } else {
        p.scale[c] = 0.0;
        p.constant[c] = 1;
      }
    }
  }
  return p;
}

void ScalerParams::apply(std::span<double> X, std::size_t n_cols) const {
  if (n_cols != shift.size())
    throw SchemaError("scaler was fit on " + std::to_string(shift.size()) +
                      " columns, input has " + std::to_string(n_cols));
  kernels::scale_rows(X, n_cols, shift, scale);
}

}  // namespace reorder::ml
