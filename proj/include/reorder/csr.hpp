#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reorder/errors.hpp"

namespace reorder {

using index_t = std::int32_t;
using offset_t = std::int64_t;

/// One (row, col, value) entry, used when assembling from unsorted input.
struct Triplet {
  index_t row;
  index_t col;
  double value;
};

/// Compressed sparse row storage. Column indices are strictly increasing
/// within each row and explicit zeros count as stored entries.
struct SparseMatrixCSR {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<offset_t> row_ptr{0};
  std::vector<index_t> col_idx;
  std::vector<double> values;

  offset_t nnz() const { return static_cast<offset_t>(col_idx.size()); }
  bool is_square() const { return n_rows == n_cols; }

  std::span<const index_t> row_cols(index_t i) const {
    return {col_idx.data() + row_ptr[i],
            static_cast<std::size_t>(row_ptr[i + 1] - row_ptr[i])};
  }
  std::span<const double> row_values(index_t i) const {
    return {values.data() + row_ptr[i],
            static_cast<std::size_t>(row_ptr[i + 1] - row_ptr[i])};
  }

  /// Throws InvalidMatrix if any structural invariant is broken.
  void check() const;

  /// Assembles from triplets: duplicates are summed, rows come out sorted.
  static SparseMatrixCSR from_triplets(index_t n_rows, index_t n_cols,
                                       std::vector<Triplet> entries);
  static SparseMatrixCSR identity(index_t n);

  bool operator==(const SparseMatrixCSR&) const = default;
};

/// Bijection on {0..size-1}; perm[old] = new.
struct Permutation {
  std::vector<index_t> perm;

  index_t size() const { return static_cast<index_t>(perm.size()); }
  index_t operator[](index_t old) const { return perm[old]; }

  static Permutation identity(index_t n);
  Permutation inverted() const;

  /// Throws InvalidMatrix unless perm is a bijection.
  void check() const;

  bool operator==(const Permutation&) const = default;
};

/// Undirected graph in adjacency-list (CSR) form: neighbor lists sorted,
/// symmetric, no self loops.
struct AdjacencyGraph {
  index_t n = 0;
  std::vector<offset_t> xadj{0};
  std::vector<index_t> adj;

  offset_t degree(index_t v) const { return xadj[v + 1] - xadj[v]; }
  std::span<const index_t> neighbors(index_t v) const {
    return {adj.data() + xadj[v],
            static_cast<std::size_t>(xadj[v + 1] - xadj[v])};
  }
  /// Number of undirected edges.
  offset_t edge_count() const { return static_cast<offset_t>(adj.size()) / 2; }

  /// Builds from an undirected edge list (duplicates and self loops dropped).
  static AdjacencyGraph from_edges(index_t n,
                                   std::span<const std::pair<index_t, index_t>> edges);

  void check() const;

  bool operator==(const AdjacencyGraph&) const = default;
};

/// Pattern of A + A^T with the diagonal discarded. Requires a square matrix.
AdjacencyGraph symmetrize(const SparseMatrixCSR& m);

/// Symmetric permutation PAP^T: result[p[i]][p[j]] = m[i][j].
SparseMatrixCSR apply_permutation(const SparseMatrixCSR& m, const Permutation& p);

/// Relabels vertices: vertex v becomes p[v].
AdjacencyGraph apply_permutation(const AdjacencyGraph& g, const Permutation& p);

}  // namespace reorder
