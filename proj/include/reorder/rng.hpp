#pragma once

#include <cstdint>
#include <vector>

namespace reorder {

/// SplitMix64: deterministic across platforms and standard libraries, unlike
/// std::shuffle / std::uniform_int_distribution. All seeded behaviour in the
/// ML layer goes through this so identical seeds give identical artifacts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    // multiply-shift; bias is negligible for the sizes used here
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[next_below(i)]);
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed (per tree, per fold, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 rng(master ^ (0xA0761D6478BD642FULL + stream * 0xE7037ED1A0B428DBULL));
  return rng.next();
}

}  // namespace reorder
