#include <algorithm>
#include <cmath>

#include "reorder/kernels.hpp"

namespace reorder::kernels {

double CountStats::mean(std::int64_t n) const {
  return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
}

double CountStats::population_std(std::int64_t n) const {
  if (n == 0) return 0.0;
  // n*sum_sq - sum^2 is the exact variance numerator; __int128 avoids overflow.
  __int128 num = static_cast<__int128>(n) * sum_sq -
                 static_cast<__int128>(sum) * sum;
  if (num < 0) num = 0;  // only possible through rounding of bad input
  double var = static_cast<double>(num) /
               (static_cast<double>(n) * static_cast<double>(n));
  return std::sqrt(var);
}

RowExtents row_extents_scalar(std::span<const offset_t> row_ptr,
                              std::span<const index_t> col_idx) {
  RowExtents r;
  const std::size_t n_rows = row_ptr.size() - 1;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const offset_t begin = row_ptr[i], end = row_ptr[i + 1];
    if (begin == end) continue;
    index_t band = 0;
    index_t min_col = col_idx[begin];
    const index_t row = static_cast<index_t>(i);
    for (offset_t k = begin; k < end; ++k) {
      const index_t j = col_idx[k];
      band = std::max(band, j > row ? j - row : row - j);
      min_col = std::min(min_col, j);
    }
    r.bandwidth = std::max<std::int64_t>(r.bandwidth, band);
    if (row > min_col) r.profile += row - min_col;
  }
  return r;
}

CountStats count_stats_scalar(std::span<const index_t> counts) {
  CountStats s;
  if (counts.empty()) return s;
  s.min = s.max = counts[0];
  for (index_t c : counts) {
    s.min = std::min<std::int64_t>(s.min, c);
    s.max = std::max<std::int64_t>(s.max, c);
    s.sum += c;
    s.sum_sq += static_cast<std::int64_t>(c) * c;
  }
  return s;
}

void scale_rows_scalar(std::span<double> data, std::size_t n_cols,
                       std::span<const double> shift,
                       std::span<const double> scale) {
  for (std::size_t k = 0; k < data.size(); ++k) {
    const std::size_t c = k % n_cols;
    data[k] = (data[k] - shift[c]) * scale[c];
  }
}

void squared_distances_scalar(std::span<const double> rows, std::size_t n_cols,
                              std::span<const double> query,
                              std::span<double> out) {
  const std::size_t n_rows = n_cols == 0 ? 0 : rows.size() / n_cols;
  for (std::size_t r = 0; r < n_rows; ++r) {
    const double* row = rows.data() + r * n_cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < n_cols; ++c) {
      const double d = row[c] - query[c];
      acc += d * d;
    }
    out[r] = acc;
  }
}

}  // namespace reorder::kernels
