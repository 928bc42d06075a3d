// AVX2 kernel variants. This translation unit is the only one compiled with
// -mavx2/-mfma; dispatch.cpp guards it behind a runtime CPUID check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>

#include "reorder/kernels.hpp"

namespace reorder::kernels {

namespace {

inline std::int64_t hsum_epi64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

inline index_t hmax_epi32(__m256i v) {
  alignas(32) index_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  index_t m = lanes[0];
  for (int i = 1; i < 8; ++i) m = std::max(m, lanes[i]);
  return m;
}

inline index_t hmin_epi32(__m256i v) {
  alignas(32) index_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  index_t m = lanes[0];
  for (int i = 1; i < 8; ++i) m = std::min(m, lanes[i]);
  return m;
}

}  // namespace

RowExtents row_extents_avx2(std::span<const offset_t> row_ptr,
                            std::span<const index_t> col_idx) {
  RowExtents r;
  const std::size_t n_rows = row_ptr.size() - 1;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const offset_t begin = row_ptr[i], end = row_ptr[i + 1];
    if (begin == end) continue;
    const index_t row = static_cast<index_t>(i);
    index_t band = 0;
    index_t min_col = col_idx[begin];
    offset_t k = begin;
    if (end - k >= 8) {
      const __m256i row_v = _mm256_set1_epi32(row);
      __m256i band_v = _mm256_setzero_si256();
      __m256i min_v = _mm256_set1_epi32(min_col);
      for (; k + 8 <= end; k += 8) {
        const __m256i j =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(col_idx.data() + k));
        band_v = _mm256_max_epi32(band_v, _mm256_abs_epi32(_mm256_sub_epi32(j, row_v)));
        min_v = _mm256_min_epi32(min_v, j);
      }
      band = hmax_epi32(band_v);
      min_col = hmin_epi32(min_v);
    }
    for (; k < end; ++k) {
      const index_t j = col_idx[k];
      band = std::max(band, j > row ? j - row : row - j);
      min_col = std::min(min_col, j);
    }
    r.bandwidth = std::max<std::int64_t>(r.bandwidth, band);
    if (row > min_col) r.profile += row - min_col;
  }
  return r;
}

CountStats count_stats_avx2(std::span<const index_t> counts) {
  CountStats s;
  if (counts.empty()) return s;
  s.min = s.max = counts[0];

  std::size_t k = 0;
  if (counts.size() >= 8) {
    __m256i min_v = _mm256_set1_epi32(counts[0]);
    __m256i max_v = min_v;
    __m256i sum_v = _mm256_setzero_si256();
    __m256i sq_v = _mm256_setzero_si256();
    for (; k + 8 <= counts.size(); k += 8) {
      const __m256i v =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(counts.data() + k));
      min_v = _mm256_min_epi32(min_v, v);
      max_v = _mm256_max_epi32(max_v, v);
      const __m128i lo = _mm256_castsi256_si128(v);
      const __m128i hi = _mm256_extracti128_si256(v, 1);
      sum_v = _mm256_add_epi64(sum_v, _mm256_cvtepi32_epi64(lo));
      sum_v = _mm256_add_epi64(sum_v, _mm256_cvtepi32_epi64(hi));
      // squares of even lanes, then odd lanes shifted into the low halves
      sq_v = _mm256_add_epi64(sq_v, _mm256_mul_epi32(v, v));
      const __m256i odd = _mm256_srli_epi64(v, 32);
      sq_v = _mm256_add_epi64(sq_v, _mm256_mul_epi32(odd, odd));
    }
    s.min = hmin_epi32(min_v);
    s.max = hmax_epi32(max_v);
    s.sum = hsum_epi64(sum_v);
    s.sum_sq = hsum_epi64(sq_v);
  }
  for (; k < counts.size(); ++k) {
    const index_t c = counts[k];
    s.min = std::min<std::int64_t>(s.min, c);
    s.max = std::max<std::int64_t>(s.max, c);
    s.sum += c;
    s.sum_sq += static_cast<std::int64_t>(c) * c;
  }
  return s;
}

void scale_rows_avx2(std::span<double> data, std::size_t n_cols,
                     std::span<const double> shift,
                     std::span<const double> scale) {
  const std::size_t n_rows = n_cols == 0 ? 0 : data.size() / n_cols;
  for (std::size_t r = 0; r < n_rows; ++r) {
    double* row = data.data() + r * n_cols;
    std::size_t c = 0;
    for (; c + 4 <= n_cols; c += 4) {
      const __m256d x = _mm256_loadu_pd(row + c);
      const __m256d sh = _mm256_loadu_pd(shift.data() + c);
      const __m256d sc = _mm256_loadu_pd(scale.data() + c);
      _mm256_storeu_pd(row + c, _mm256_mul_pd(_mm256_sub_pd(x, sh), sc));
    }
    for (; c < n_cols; ++c) row[c] = (row[c] - shift[c]) * scale[c];
  }
}

void squared_distances_avx2(std::span<const double> rows, std::size_t n_cols,
                            std::span<const double> query,
                            std::span<double> out) {
  const std::size_t n_rows = n_cols == 0 ? 0 : rows.size() / n_cols;
  for (std::size_t r = 0; r < n_rows; ++r) {
    const double* row = rows.data() + r * n_cols;
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= n_cols; c += 4) {
      const __m256d d =
          _mm256_sub_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(query.data() + c));
      acc = _mm256_fmadd_pd(d, d, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; c < n_cols; ++c) {
      const double d = row[c] - query[c];
      total += d * d;
    }
    out[r] = total;
  }
}

}  // namespace reorder::kernels

#endif  // x86-64
