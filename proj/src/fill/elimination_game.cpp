#include <algorithm>

#include "reorder/fill.hpp"

namespace reorder {

CostReport elimination_game_fill(const AdjacencyGraph& g, const Permutation& p) {
  if (p.size() != g.n)
    throw DimensionMismatch("permutation size does not match vertex count");
  const index_t n = g.n;

  // neighbor sets of the evolving elimination graph, sorted vectors
  std::vector<std::vector<index_t>> nbr(n);
  for (index_t v = 0; v < n; ++v)
    nbr[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());

  std::vector<index_t> elim_order(n);
  for (index_t v = 0; v < n; ++v) elim_order[p[v]] = v;

  std::vector<char> eliminated(n, 0);
  CostReport r;
  r.factor_nnz = n + g.edge_count();

  std::vector<index_t> alive;
  for (index_t k = 0; k < n; ++k) {
    const index_t v = elim_order[k];
    alive.clear();
    for (index_t u : nbr[v])
      if (!eliminated[u]) alive.push_back(u);

    const std::int64_t deg = static_cast<std::int64_t>(alive.size());
    r.flops += (1 + deg) * (1 + deg);

    // clique the uneliminated neighborhood
    for (std::size_t a = 0; a < alive.size(); ++a) {
      for (std::size_t b = a + 1; b < alive.size(); ++b) {
        const index_t x = alive[a], y = alive[b];
        auto it = std::lower_bound(nbr[x].begin(), nbr[x].end(), y);
        if (it == nbr[x].end() || *it != y) {
          nbr[x].insert(it, y);
          nbr[y].insert(std::lower_bound(nbr[y].begin(), nbr[y].end(), x), x);
          ++r.fill_in;
        }
      }
    }
    eliminated[v] = 1;
  }
  r.factor_nnz += r.fill_in;
  return r;
}

}  // namespace reorder
