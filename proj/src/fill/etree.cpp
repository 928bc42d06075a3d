#include <algorithm>

#include "reorder/fill.hpp"

namespace reorder {

namespace {

// Lower-triangular pattern of the permuted graph: lower[i] holds the
// below-diagonal column indices of row i, in the new numbering.
std::vector<std::vector<index_t>> permuted_lower(const AdjacencyGraph& g,
                                                 const Permutation& p) {
  std::vector<std::vector<index_t>> lower(g.n);
  for (index_t v = 0; v < g.n; ++v) {
    for (index_t u : g.neighbors(v)) {
      if (u < v) {
        const index_t i = std::max(p[u], p[v]);
        const index_t j = std::min(p[u], p[v]);
        lower[i].push_back(j);
      }
    }
  }
  for (std::vector<index_t>& row : lower) std::sort(row.begin(), row.end());
  return lower;
}

}  // namespace

EliminationTree build_elimination_tree(const AdjacencyGraph& g, const Permutation& p) {
  if (p.size() != g.n)
    throw DimensionMismatch("permutation size does not match vertex count");
  const index_t n = g.n;
  const std::vector<std::vector<index_t>> lower = permuted_lower(g, p);

  EliminationTree t;
  t.parent.assign(n, -1);
  std::vector<index_t> ancestor(n, -1);  // path-compressed virtual forest
  for (index_t i = 0; i < n; ++i) {
    for (index_t k : lower[i]) {
      index_t j = k;
      while (ancestor[j] != -1 && ancestor[j] != i) {
        const index_t next = ancestor[j];
        ancestor[j] = i;
        j = next;
      }
      if (ancestor[j] == -1) {
        ancestor[j] = i;
        t.parent[j] = i;
      }
    }
  }

  // postorder with children visited in ascending order
  std::vector<std::vector<index_t>> children(n);
  for (index_t v = 0; v < n; ++v)
    if (t.parent[v] != -1) children[t.parent[v]].push_back(v);
  t.postorder.reserve(n);
  std::vector<std::pair<index_t, std::size_t>> stack;
  for (index_t root = 0; root < n; ++root) {
    if (t.parent[root] != -1) continue;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, next_child] = stack.back();
      if (next_child < children[v].size()) {
        stack.emplace_back(children[v][next_child++], 0);
      } else {
        t.postorder.push_back(v);
        stack.pop_back();
      }
    }
  }
  return t;
}

CostReport etree_column_counts(const AdjacencyGraph& g, const Permutation& p) {
  if (p.size() != g.n)
    throw DimensionMismatch("permutation size does not match vertex count");
  const index_t n = g.n;
  const std::vector<std::vector<index_t>> lower = permuted_lower(g, p);
  const EliminationTree t = build_elimination_tree(g, p);

  // Row subtrees: row i contributes one entry to every column on the etree
  // path from each a(i,k) toward i; marks stop re-walking shared segments.
  std::vector<std::int64_t> below_diag(n, 0);
  std::vector<index_t> mark(n, -1);
  for (index_t i = 0; i < n; ++i) {
    for (index_t k : lower[i]) {
      index_t j = k;
      while (j != -1 && j < i && mark[j] != i) {
        ++below_diag[j];
        mark[j] = i;
        j = t.parent[j];
      }
    }
  }

  CostReport r;
  std::int64_t total_below = 0;
  for (index_t j = 0; j < n; ++j) {
    total_below += below_diag[j];
    const std::int64_t cj = below_diag[j] + 1;
    r.flops += cj * cj;
  }
  r.factor_nnz = n + total_below;
  r.fill_in = total_below - g.edge_count();
  return r;
}

}  // namespace reorder
