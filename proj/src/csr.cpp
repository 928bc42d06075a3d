#include "reorder/csr.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace reorder {

void SparseMatrixCSR::check() const {
  if (n_rows < 0 || n_cols < 0) throw InvalidMatrix("negative dimension");
  if (row_ptr.size() != static_cast<std::size_t>(n_rows) + 1)
    throw InvalidMatrix("row_ptr length must be n_rows+1");
  if (row_ptr.front() != 0) throw InvalidMatrix("row_ptr[0] must be 0");
  if (row_ptr.back() != nnz())
    throw InvalidMatrix("row_ptr[n_rows] must equal nnz");
  if (values.size() != col_idx.size())
    throw InvalidMatrix("values and col_idx lengths differ");
  for (index_t i = 0; i < n_rows; ++i) {
    if (row_ptr[i] > row_ptr[i + 1])
      throw InvalidMatrix("row_ptr must be non-decreasing");
    index_t prev = -1;
    for (offset_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col_idx[k] < 0 || col_idx[k] >= n_cols)
        throw InvalidMatrix("column index out of range");
      if (col_idx[k] <= prev)
        throw InvalidMatrix("column indices must be strictly increasing within a row");
      prev = col_idx[k];
    }
  }
}

SparseMatrixCSR SparseMatrixCSR::from_triplets(index_t n_rows, index_t n_cols,
                                               std::vector<Triplet> entries) {
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
      throw InvalidMatrix("triplet index out of range");
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrixCSR m;
  m.n_rows = n_rows;
  m.n_cols = n_cols;
  m.row_ptr.assign(static_cast<std::size_t>(n_rows) + 1, 0);
  m.col_idx.reserve(entries.size());
  m.values.reserve(entries.size());
  index_t last_row = -1, last_col = -1;
  for (const Triplet& t : entries) {
    if (t.row == last_row && t.col == last_col) {
      m.values.back() += t.value;  // duplicate coordinates sum
    } else {
      m.row_ptr[static_cast<std::size_t>(t.row) + 1]++;
      m.col_idx.push_back(t.col);
      m.values.push_back(t.value);
      last_row = t.row;
      last_col = t.col;
    }
  }
  for (index_t i = 0; i < n_rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

SparseMatrixCSR SparseMatrixCSR::identity(index_t n) {
  SparseMatrixCSR m;
  m.n_rows = m.n_cols = n;
  m.row_ptr.resize(static_cast<std::size_t>(n) + 1);
  m.col_idx.resize(static_cast<std::size_t>(n));
  m.values.assign(static_cast<std::size_t>(n), 1.0);
  for (index_t i = 0; i < n; ++i) {
    m.row_ptr[i] = i;
    m.col_idx[i] = i;
  }
  m.row_ptr[n] = n;
  return m;
}

Permutation Permutation::identity(index_t n) {
  Permutation p;
  p.perm.resize(static_cast<std::size_t>(n));
  std::iota(p.perm.begin(), p.perm.end(), 0);
  return p;
}

Permutation Permutation::inverted() const {
  Permutation inv;
  inv.perm.assign(perm.size(), -1);
  for (index_t old = 0; old < size(); ++old) inv.perm[perm[old]] = old;
  return inv;
}

void Permutation::check() const {
  std::vector<bool> seen(perm.size(), false);
  for (index_t v : perm) {
    if (v < 0 || v >= size() || seen[v])
      throw InvalidMatrix("permutation is not a bijection");
    seen[v] = true;
  }
}

AdjacencyGraph AdjacencyGraph::from_edges(
    index_t n, std::span<const std::pair<index_t, index_t>> edges) {
  std::vector<std::pair<index_t, index_t>> dir;
  dir.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidMatrix("edge endpoint out of range");
    dir.emplace_back(u, v);
    dir.emplace_back(v, u);
  }
  std::sort(dir.begin(), dir.end());
  dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

  AdjacencyGraph g;
  g.n = n;
  g.xadj.assign(static_cast<std::size_t>(n) + 1, 0);
  g.adj.reserve(dir.size());
  for (auto [u, v] : dir) {
    g.xadj[static_cast<std::size_t>(u) + 1]++;
    g.adj.push_back(v);
  }
  for (index_t i = 0; i < n; ++i) g.xadj[i + 1] += g.xadj[i];
  return g;
}

void AdjacencyGraph::check() const {
  if (xadj.size() != static_cast<std::size_t>(n) + 1)
    throw InvalidMatrix("xadj length must be n+1");
  if (xadj.front() != 0 || xadj.back() != static_cast<offset_t>(adj.size()))
    throw InvalidMatrix("xadj bounds are inconsistent");
  for (index_t v = 0; v < n; ++v) {
    index_t prev = -1;
    for (index_t u : neighbors(v)) {
      if (u < 0 || u >= n) throw InvalidMatrix("neighbor out of range");
      if (u == v) throw InvalidMatrix("self loop");
      if (u <= prev) throw InvalidMatrix("neighbor list not strictly increasing");
      prev = u;
      // symmetry: v must appear in u's list
      auto nb = neighbors(u);
      if (!std::binary_search(nb.begin(), nb.end(), v))
        throw InvalidMatrix("adjacency is not symmetric");
    }
  }
}

AdjacencyGraph symmetrize(const SparseMatrixCSR& m) {
  if (!m.is_square())
    throw DimensionMismatch("symmetrize requires a square matrix, got " +
                            std::to_string(m.n_rows) + "x" + std::to_string(m.n_cols));
  const index_t n = m.n_rows;

  // transpose pattern (rows come out sorted because we scan rows in order)
  std::vector<offset_t> tptr(static_cast<std::size_t>(n) + 1, 0);
  std::vector<index_t> tcol(static_cast<std::size_t>(m.nnz()));
  for (offset_t k = 0; k < m.nnz(); ++k) tptr[static_cast<std::size_t>(m.col_idx[k]) + 1]++;
  for (index_t i = 0; i < n; ++i) tptr[i + 1] += tptr[i];
  {
    std::vector<offset_t> next(tptr.begin(), tptr.end() - 1);
    for (index_t i = 0; i < n; ++i)
      for (index_t j : m.row_cols(i)) tcol[next[j]++] = i;
  }

  // merge row i of A with row i of A^T, dropping the diagonal
  AdjacencyGraph g;
  g.n = n;
  g.xadj.assign(static_cast<std::size_t>(n) + 1, 0);
  auto merge_row = [&](index_t i, auto&& emit) {
    std::span<const index_t> a = m.row_cols(i);
    std::span<const index_t> b{tcol.data() + tptr[i],
                               static_cast<std::size_t>(tptr[i + 1] - tptr[i])};
    std::size_t x = 0, y = 0;
    while (x < a.size() || y < b.size()) {
      index_t j;
      if (y == b.size() || (x < a.size() && a[x] < b[y])) {
        j = a[x++];
      } else if (x == a.size() || b[y] < a[x]) {
        j = b[y++];
      } else {
        j = a[x];
        ++x;
        ++y;
      }
      if (j != i) emit(j);
    }
  };
  for (index_t i = 0; i < n; ++i)
    merge_row(i, [&](index_t) { g.xadj[static_cast<std::size_t>(i) + 1]++; });
  for (index_t i = 0; i < n; ++i) g.xadj[i + 1] += g.xadj[i];
  g.adj.resize(static_cast<std::size_t>(g.xadj[n]));
  {
    std::vector<offset_t> next(g.xadj.begin(), g.xadj.end() - 1);
    for (index_t i = 0; i < n; ++i)
      merge_row(i, [&](index_t j) { g.adj[next[i]++] = j; });
  }
  return g;
}

SparseMatrixCSR apply_permutation(const SparseMatrixCSR& m, const Permutation& p) {
  if (!m.is_square() || p.size() != m.n_rows)
    throw DimensionMismatch("permutation size " + std::to_string(p.size()) +
                            " does not match matrix dimension " +
                            std::to_string(m.n_rows) + "x" + std::to_string(m.n_cols));
  const index_t n = m.n_rows;
  SparseMatrixCSR r;
  r.n_rows = r.n_cols = n;
  r.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  for (index_t i = 0; i < n; ++i)
    r.row_ptr[static_cast<std::size_t>(p[i]) + 1] = m.row_ptr[i + 1] - m.row_ptr[i];
  for (index_t i = 0; i < n; ++i) r.row_ptr[i + 1] += r.row_ptr[i];

  r.col_idx.resize(static_cast<std::size_t>(m.nnz()));
  r.values.resize(static_cast<std::size_t>(m.nnz()));
  std::vector<std::pair<index_t, double>> row;
  for (index_t i = 0; i < n; ++i) {
    row.clear();
    std::span<const index_t> cols = m.row_cols(i);
    std::span<const double> vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      row.emplace_back(p[cols[k]], vals[k]);
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    offset_t base = r.row_ptr[p[i]];
    for (std::size_t k = 0; k < row.size(); ++k) {
      r.col_idx[base + static_cast<offset_t>(k)] = row[k].first;
      r.values[base + static_cast<offset_t>(k)] = row[k].second;
    }
  }
  return r;
}

AdjacencyGraph apply_permutation(const AdjacencyGraph& g, const Permutation& p) {
  if (p.size() != g.n)
    throw DimensionMismatch("permutation size does not match vertex count");
  AdjacencyGraph r;
  r.n = g.n;
  r.xadj.assign(static_cast<std::size_t>(g.n) + 1, 0);
  for (index_t v = 0; v < g.n; ++v)
    r.xadj[static_cast<std::size_t>(p[v]) + 1] = g.degree(v);
  for (index_t i = 0; i < g.n; ++i) r.xadj[i + 1] += r.xadj[i];
  r.adj.resize(g.adj.size());
  std::vector<index_t> buf;
  for (index_t v = 0; v < g.n; ++v) {
    buf.clear();
    for (index_t u : g.neighbors(v)) buf.push_back(p[u]);
    std::sort(buf.begin(), buf.end());
    std::copy(buf.begin(), buf.end(), r.adj.begin() + r.xadj[p[v]]);
  }
  return r;
}

}  // namespace reorder
