#pragma once

#include <array>
#include <string>

#include "reorder/csr.hpp"

namespace reorder {

constexpr std::size_t kFeatureCount = 12;

/// Structural features of a square sparse matrix, in the order they appear
/// in dataset files. Row statistics count stored entries; degree statistics
/// are taken on the symmetrized off-diagonal graph.
struct FeatureVector {
  double dimension = 0;    // N
  double nnz = 0;          // stored entries
  double nnz_ratio = 0;    // nnz / N^2
  double nnz_max = 0;      // max stored entries in a row
  double nnz_min = 0;
  double nnz_avg = 0;
  double nnz_std = 0;      // population standard deviation
  double degree_max = 0;
  double degree_min = 0;
  double degree_avg = 0;
  double bandwidth = 0;    // max |i - j|
  double profile = 0;      // sum of clamped distances from leftmost entry to diagonal

  std::array<double, kFeatureCount> to_row() const;
  static FeatureVector from_row(const std::array<double, kFeatureCount>& row);
  static const std::array<std::string, kFeatureCount>& names();
};

/// Max |i - j| over stored entries; 0 when no entry is off the diagonal.
offset_t bandwidth(const SparseMatrixCSR& m);

/// Sum over rows of (i - leftmost stored column), clamped at 0 per row.
offset_t profile(const SparseMatrixCSR& m);

FeatureVector extract_features(const SparseMatrixCSR& m);

}  // namespace reorder
