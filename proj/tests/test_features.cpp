#include <cmath>
#include <map>

#include "doctest.h"
#include "reorder/features.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace reorder;
using namespace testsupport;

TEST_CASE("bandwidth examples") {
  CHECK(bandwidth(SparseMatrixCSR::identity(4)) == 0);
  CHECK(bandwidth(matrix_from_graph(path_graph(8))) == 1);
  SplitMix64 rng(1);
  CHECK(bandwidth(random_pattern(rng, 5, 1.1)) == 4);  // dense 5x5
  CHECK_THROWS_AS(bandwidth(SparseMatrixCSR::from_triplets(2, 3, {})),
                  DimensionMismatch);
}

TEST_CASE("profile examples") {
  CHECK(profile(SparseMatrixCSR::identity(6)) == 0);
  CHECK(profile(matrix_from_graph(path_graph(3))) == 2);  // rows contribute 0,1,1
  // dense n x n: row i contributes i
  std::vector<Triplet> t;
  for (index_t i = 0; i < 6; ++i)
    for (index_t j = 0; j < 6; ++j) t.push_back({i, j, 1.0});
  CHECK(profile(SparseMatrixCSR::from_triplets(6, 6, std::move(t))) == 15);
}

TEST_CASE("tridiagonal feature vector matches the hand computation") {
  const FeatureVector f = extract_features(matrix_from_graph(path_graph(3)));
  CHECK(f.dimension == 3);
  CHECK(f.nnz == 7);
  CHECK(f.nnz_ratio == doctest::Approx(7.0 / 9.0));
  CHECK(f.nnz_max == 3);
  CHECK(f.nnz_min == 2);
  CHECK(f.nnz_avg == doctest::Approx(7.0 / 3.0));
  CHECK(f.nnz_std == doctest::Approx(std::sqrt(2.0 / 9.0)));
  CHECK(f.degree_max == 2);
  CHECK(f.degree_min == 1);
  CHECK(f.degree_avg == doctest::Approx(4.0 / 3.0));
  CHECK(f.bandwidth == 1);
  CHECK(f.profile == 2);
}

TEST_CASE("bandwidth and profile match the brute-force double loop") {
  SplitMix64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const index_t n = 1 + static_cast<index_t>(rng.next_below(60));
    const SparseMatrixCSR m = random_pattern(rng, n, 0.25 * rng.next_double());
    CHECK(bandwidth(m) == brute_bandwidth(m));
    CHECK(profile(m) == brute_profile(m));
  }
}

TEST_CASE("nnz_std matches an independent two-pass recomputation") {
  SplitMix64 rng(22);
  const SparseMatrixCSR m = random_pattern(rng, 50, 0.08);
  const FeatureVector f = extract_features(m);
  std::vector<double> counts(50);
  for (index_t i = 0; i < 50; ++i)
    counts[i] = static_cast<double>(m.row_ptr[i + 1] - m.row_ptr[i]);
  double mean = 0;
  for (double c : counts) mean += c;
  mean /= 50.0;
  double var = 0;
  for (double c : counts) var += (c - mean) * (c - mean);
  var /= 50.0;
  CHECK(f.nnz_std == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
  CHECK(f.nnz_avg == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("all features are invariant under the identity permutation") {
  SplitMix64 rng(23);
  const SparseMatrixCSR m = random_pattern(rng, 31, 0.1);
  const SparseMatrixCSR same = apply_permutation(m, Permutation::identity(31));
  CHECK(extract_features(m).to_row() == extract_features(same).to_row());
}

TEST_CASE("dimension, nnz and the degree multiset survive any permutation") {
  SplitMix64 rng(24);
  for (int t = 0; t < 20; ++t) {
    const index_t n = 2 + static_cast<index_t>(rng.next_below(40));
    const SparseMatrixCSR m = random_pattern(rng, n, 0.1);
    const SparseMatrixCSR p = apply_permutation(m, random_permutation(rng, n));
    const FeatureVector fm = extract_features(m), fp = extract_features(p);
    CHECK(fm.dimension == fp.dimension);
    CHECK(fm.nnz == fp.nnz);

    auto degree_multiset = [](const SparseMatrixCSR& mat) {
      const AdjacencyGraph g = symmetrize(mat);
      std::map<offset_t, int> ms;
      for (index_t v = 0; v < g.n; ++v) ms[g.degree(v)]++;
      return ms;
    };
    CHECK(degree_multiset(m) == degree_multiset(p));
  }
}

TEST_CASE("feature extraction on a 1x1 matrix") {
  const FeatureVector f = extract_features(SparseMatrixCSR::identity(1));
  CHECK(f.dimension == 1);
  CHECK(f.degree_max == 0);
  CHECK(f.bandwidth == 0);
  CHECK(f.nnz_ratio == 1.0);
}

TEST_CASE("feature schema order matches the dataset header") {
  const auto& names = FeatureVector::names();
  CHECK(names.front() == "dimension");
  CHECK(names[6] == "nnz_std");
  CHECK(names.back() == "profile");
  FeatureVector f;
  f.dimension = 1;
  f.profile = 12;
  const auto row = f.to_row();
  CHECK(row[0] == 1);
  CHECK(row[11] == 12);
  CHECK(FeatureVector::from_row(row).profile == 12);
}
