#include <algorithm>
#include <queue>

#include "reorder/orderings.hpp"

namespace reorder {

namespace detail {

LevelStructure bfs_levels(const AdjacencyGraph& g, index_t root,
                          std::vector<index_t>& marks, index_t stamp) {
  LevelStructure ls;
  ls.order.push_back(root);
  ls.level_ptr.push_back(0);
  marks[root] = stamp;
  std::size_t level_begin = 0;
  while (level_begin < ls.order.size()) {
    const std::size_t level_end = ls.order.size();
    ls.level_ptr.push_back(static_cast<offset_t>(level_end));
    for (std::size_t k = level_begin; k < level_end; ++k) {
      for (index_t u : g.neighbors(ls.order[k])) {
        if (marks[u] != stamp) {
          marks[u] = stamp;
          ls.order.push_back(u);
        }
      }
    }
    level_begin = level_end;
  }
  // each level's frontier was appended in ascending neighbor order already,
  // but different parents interleave; sort within levels for determinism
  for (std::size_t l = 0; l + 1 < ls.level_ptr.size(); ++l)
    std::sort(ls.order.begin() + ls.level_ptr[l], ls.order.begin() + ls.level_ptr[l + 1]);
  return ls;
}

index_t pseudo_peripheral_vertex(const AdjacencyGraph& g, index_t seed,
                                 std::vector<index_t>& marks, index_t& stamp) {
  index_t root = seed;
  LevelStructure ls = bfs_levels(g, root, marks, ++stamp);
  std::size_t ecc = ls.height();
  for (int sweep = 0; sweep < 10; ++sweep) {
    // farthest level, minimum degree vertex, ties by lower index
    const offset_t last_begin = ls.level_ptr[ls.level_ptr.size() - 2];
    const offset_t last_end = ls.level_ptr.back();
    index_t candidate = ls.order[last_begin];
    for (offset_t k = last_begin + 1; k < last_end; ++k) {
      const index_t v = ls.order[k];
      if (g.degree(v) < g.degree(candidate) ||
          (g.degree(v) == g.degree(candidate) && v < candidate))
        candidate = v;
    }
    LevelStructure cls = bfs_levels(g, candidate, marks, ++stamp);
    if (cls.height() <= ecc) break;
    root = candidate;
    ecc = cls.height();
    ls = std::move(cls);
  }
  return root;
}

}  // namespace detail

Permutation rcm_ordering(const AdjacencyGraph& g) {
  const index_t n = g.n;
  std::vector<index_t> marks(n, -1);
  index_t stamp = -1;

  std::vector<index_t> cm_order;
  cm_order.reserve(n);
  std::vector<char> numbered(n, 0);
  std::vector<index_t> frontier;

  for (index_t rep = 0; rep < n; ++rep) {
    if (numbered[rep]) continue;
    const index_t start = detail::pseudo_peripheral_vertex(g, rep, marks, stamp);

    // Cuthill-McKee: BFS appending unvisited neighbors in ascending
    // (degree, index) order.
    std::size_t head = cm_order.size();
    cm_order.push_back(start);
    numbered[start] = 1;
    while (head < cm_order.size()) {
      const index_t v = cm_order[head++];
      frontier.clear();
      for (index_t u : g.neighbors(v))
        if (!numbered[u]) frontier.push_back(u);
      std::sort(frontier.begin(), frontier.end(), [&](index_t a, index_t b) {
        return g.degree(a) != g.degree(b) ? g.degree(a) < g.degree(b) : a < b;
      });
      for (index_t u : frontier) {
        numbered[u] = 1;
        cm_order.push_back(u);
      }
    }
  }

  Permutation p;
  p.perm.assign(n, -1);
  for (index_t pos = 0; pos < n; ++pos)
    p.perm[cm_order[pos]] = n - 1 - pos;  // reverse of the CM numbering
  return p;
}

}  // namespace reorder
