#include "reorder/features.hpp"

#include "reorder/kernels.hpp"

namespace reorder {

namespace {

void require_square(const SparseMatrixCSR& m, const char* op) {
  if (!m.is_square())
    throw DimensionMismatch(std::string(op) + " requires a square matrix, got " +
                            std::to_string(m.n_rows) + "x" + std::to_string(m.n_cols));
}

std::vector<index_t> offsets_to_counts(std::span<const offset_t> ptr) {
  std::vector<index_t> counts(ptr.size() - 1);
  for (std::size_t i = 0; i + 1 < ptr.size(); ++i)
    counts[i] = static_cast<index_t>(ptr[i + 1] - ptr[i]);
  return counts;
}

}  // namespace

std::array<double, kFeatureCount> FeatureVector::to_row() const {
  return {dimension, nnz,        nnz_ratio,  nnz_max,    nnz_min,   nnz_avg,
          nnz_std,   degree_max, degree_min, degree_avg, bandwidth, profile};
}

FeatureVector FeatureVector::from_row(const std::array<double, kFeatureCount>& row) {
  FeatureVector f;
  f.dimension = row[0];
  f.nnz = row[1];
  f.nnz_ratio = row[2];
  f.nnz_max = row[3];
  f.nnz_min = row[4];
  f.nnz_avg = row[5];
  f.nnz_std = row[6];
  f.degree_max = row[7];
  f.degree_min = row[8];
  f.degree_avg = row[9];
  f.bandwidth = row[10];
  f.profile = row[11];
  return f;
}

const std::array<std::string, kFeatureCount>& FeatureVector::names() {
  static const std::array<std::string, kFeatureCount> n = {
      "dimension",  "nnz",        "nnz_ratio",  "nnz_max",
      "nnz_min",    "nnz_avg",    "nnz_std",    "degree_max",
      "degree_min", "degree_avg", "bandwidth",  "profile"};
  return n;
}

offset_t bandwidth(const SparseMatrixCSR& m) {
  require_square(m, "bandwidth");
  return kernels::row_extents(m.row_ptr, m.col_idx).bandwidth;
}

offset_t profile(const SparseMatrixCSR& m) {
  require_square(m, "profile");
  return kernels::row_extents(m.row_ptr, m.col_idx).profile;
}

FeatureVector extract_features(const SparseMatrixCSR& m) {
  require_square(m, "extract_features");
  const index_t n = m.n_rows;
  FeatureVector f;
  f.dimension = static_cast<double>(n);
  f.nnz = static_cast<double>(m.nnz());
  f.nnz_ratio = n == 0 ? 0.0
                       : static_cast<double>(m.nnz()) /
                             (static_cast<double>(n) * static_cast<double>(n));

  const std::vector<index_t> row_counts = offsets_to_counts(m.row_ptr);
  const kernels::CountStats rs = kernels::count_stats(row_counts);
  f.nnz_max = static_cast<double>(rs.max);
  f.nnz_min = static_cast<double>(rs.min);
  f.nnz_avg = rs.mean(n);
  f.nnz_std = rs.population_std(n);

  const AdjacencyGraph g = symmetrize(m);
  const std::vector<index_t> degrees = offsets_to_counts(g.xadj);
  const kernels::CountStats ds = kernels::count_stats(degrees);
  f.degree_max = static_cast<double>(ds.max);
  f.degree_min = static_cast<double>(ds.min);
  f.degree_avg = ds.mean(n);

  const kernels::RowExtents ext = kernels::row_extents(m.row_ptr, m.col_idx);
  f.bandwidth = static_cast<double>(ext.bandwidth);
  f.profile = static_cast<double>(ext.profile);
  return f;
}

}  // namespace reorder
