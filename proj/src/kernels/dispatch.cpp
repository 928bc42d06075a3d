#include <cstdlib>
#include <cstring>
#include <string>

#include "reorder/errors.hpp"
#include "reorder/kernels.hpp"

namespace reorder::kernels {

namespace {

struct KernelTable {
  RowExtents (*row_extents)(std::span<const offset_t>, std::span<const index_t>);
  CountStats (*count_stats)(std::span<const index_t>);
  void (*scale_rows)(std::span<double>, std::size_t, std::span<const double>,
                     std::span<const double>);
  void (*squared_distances)(std::span<const double>, std::size_t,
                            std::span<const double>, std::span<double>);
};

// TODO: add NEON variants once there is ARM hardware to equivalence-test on.
constexpr KernelTable kScalarTable{row_extents_scalar, count_stats_scalar,
                                   scale_rows_scalar, squared_distances_scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2Table{row_extents_avx2, count_stats_avx2,
                                 scale_rows_avx2, squared_distances_avx2};
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  Isa isa;
  const KernelTable* table;

  Dispatch() { select(detect()); }

  static Isa detect() {
    const char* env = std::getenv("REORDER_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  }

  void select(Isa which) {
    switch (which) {
      case Isa::scalar:
        table = &kScalarTable;
        break;
      case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        if (!cpu_has_avx2())
          throw ConfigError("this CPU does not support AVX2 kernels");
        table = &kAvx2Table;
        break;
#else
        throw ConfigError("AVX2 kernels are not built on this architecture");
#endif
    }
    isa = which;
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

Isa active_isa() { return dispatch().isa; }

void force_isa(Isa isa) { dispatch().select(isa); }

bool isa_supported(Isa isa) {
  return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

RowExtents row_extents(std::span<const offset_t> row_ptr,
                       std::span<const index_t> col_idx) {
  return dispatch().table->row_extents(row_ptr, col_idx);
}

CountStats count_stats(std::span<const index_t> counts) {
  return dispatch().table->count_stats(counts);
}

void scale_rows(std::span<double> data, std::size_t n_cols,
                std::span<const double> shift, std::span<const double> scale) {
  dispatch().table->scale_rows(data, n_cols, shift, scale);
}

void squared_distances(std::span<const double> rows, std::size_t n_cols,
                       std::span<const double> query, std::span<double> out) {
  dispatch().table->squared_distances(rows, n_cols, query, out);
}

}  // namespace reorder::kernels
