#pragma once

#include <span>
#include <string>
#include <vector>

#include "reorder/errors.hpp"

namespace reorder::ml {

enum class ScalerKind { standardization, minmax };

std::string to_string(ScalerKind kind);
ScalerKind scaler_from_string(const std::string& s);

/// Per-column affine transform x' = (x - shift[c]) * scale[c].
/// Standardization uses mean / population std; minmax maps onto [0, 1].
/// Constant columns get scale 0 so they come out as exactly 0.
struct ScalerParams {
  ScalerKind kind = ScalerKind::standardization;
  std::vector<double> shift;
  std::vector<double> scale;
  std::vector<char> constant;

  static ScalerParams fit(std::span<const double> X, std::size_t n_cols,
                          ScalerKind kind);
  void apply(std::span<double> X, std::size_t n_cols) const;

  bool operator==(const ScalerParams&) const = default;
};

}  // namespace reorder::ml
