#pragma once

#include <cstdint>
#include <span>

#include "reorder/csr.hpp"

// Data-parallel inner loops used by feature extraction and the ML layer.
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant; the dispatched entry point picks one at load time from CPUID.
// Integer kernels are exact, so scalar and SIMD results are identical;
// floating-point kernels keep the same per-element formula and differ only
// in reduction order.

namespace reorder::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

/// Instruction set the dispatched entry points currently use.
Isa active_isa();

/// Overrides dispatch (tests, or REORDER_KERNELS=scalar in the environment).
/// Forcing an ISA the CPU lacks throws ConfigError.
void force_isa(Isa isa);

/// True when the running CPU can execute the given variant.
bool isa_supported(Isa isa);

/// Bandwidth and profile accumulators over a CSR pattern.
struct RowExtents {
  std::int64_t bandwidth = 0;  // max |i - j| over stored entries
  std::int64_t profile = 0;    // sum over rows of max(0, i - min column)
  bool operator==(const RowExtents&) const = default;
};

/// Exact integer moments of a count array (per-row nnz, vertex degrees).
struct CountStats {
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;

  double mean(std::int64_t n) const;
  /// Population standard deviation, computed from the exact integer moments.
  double population_std(std::int64_t n) const;
  bool operator==(const CountStats&) const = default;
};

RowExtents row_extents(std::span<const offset_t> row_ptr,
                       std::span<const index_t> col_idx);
RowExtents row_extents_scalar(std::span<const offset_t> row_ptr,
                              std::span<const index_t> col_idx);

CountStats count_stats(std::span<const index_t> counts);
CountStats count_stats_scalar(std::span<const index_t> counts);

/// In place, per element: x[r][c] = (x[r][c] - shift[c]) * scale[c].
void scale_rows(std::span<double> data, std::size_t n_cols,
                std::span<const double> shift, std::span<const double> scale);
void scale_rows_scalar(std::span<double> data, std::size_t n_cols,
                       std::span<const double> shift,
                       std::span<const double> scale);

/// Squared Euclidean distance from query to every row of a row-major matrix.
void squared_distances(std::span<const double> rows, std::size_t n_cols,
                       std::span<const double> query, std::span<double> out);
void squared_distances_scalar(std::span<const double> rows, std::size_t n_cols,
                              std::span<const double> query,
                              std::span<double> out);

#if defined(__x86_64__) || defined(_M_X64)
RowExtents row_extents_avx2(std::span<const offset_t> row_ptr,
                            std::span<const index_t> col_idx);
CountStats count_stats_avx2(std::span<const index_t> counts);
void scale_rows_avx2(std::span<double> data, std::size_t n_cols,
                     std::span<const double> shift,
                     std::span<const double> scale);
void squared_distances_avx2(std::span<const double> rows, std::size_t n_cols,
                            std::span<const double> query,
                            std::span<double> out);
#endif

}  // namespace reorder::kernels
