#include <algorithm>
#include <set>

#include "reorder/orderings.hpp"

namespace reorder {

// Quotient-graph minimum degree. Eliminated pivots become elements; each
// surviving variable i tracks the original edges still incident to it
// (avars) and the elements it touches (elems). Degrees are Amestoy-style
// approximate external degrees, updated only for the pivot's neighborhood.
Permutation minimum_degree_ordering(const AdjacencyGraph& g) {
  const index_t n = g.n;
  Permutation result;
  result.perm.assign(n, -1);
  if (n == 0) return result;

  std::vector<std::vector<index_t>> avars(n);
  std::vector<std::vector<index_t>> elems(n);
  std::vector<std::vector<index_t>> members(n);  // L_e, keyed by pivot id
  std::vector<offset_t> degree(n);
  std::vector<char> dead_elem(n, 0);
  std::vector<char> eliminated(n, 0);

  std::set<std::pair<offset_t, index_t>> queue;
  for (index_t v = 0; v < n; ++v) {
    avars[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    degree[v] = g.degree(v);
    queue.emplace(degree[v], v);
  }

  std::vector<offset_t> w(n, -1);  // |L_e \ Lp| scratch
  std::vector<index_t> w_touched;
  std::vector<char> in_lp(n, 0);
  std::vector<index_t> lp;

  for (index_t k = 0; k < n; ++k) {
    const index_t p = queue.begin()->second;
    queue.erase(queue.begin());
    result.perm[p] = k;
    eliminated[p] = 1;

    // Lp: variables reachable from p through original edges or its elements.
    lp.clear();
    auto gather = [&](index_t u) {
      if (u != p && !in_lp[u]) {
        in_lp[u] = 1;
        lp.push_back(u);
      }
    };
    for (index_t u : avars[p]) gather(u);
    for (index_t e : elems[p]) {
      if (dead_elem[e]) continue;
      for (index_t u : members[e]) gather(u);
      dead_elem[e] = 1;  // absorbed into the new element p
      members[e].clear();
      members[e].shrink_to_fit();
    }
    std::sort(lp.begin(), lp.end());

    // First pass: w[e] = |L_e \ Lp| for every live element touching Lp.
    w_touched.clear();
    for (index_t i : lp) {
      for (index_t e : elems[i]) {
        if (e == p || dead_elem[e]) continue;
        if (w[e] < 0) {
          w[e] = static_cast<offset_t>(members[e].size());
          w_touched.push_back(e);
        }
        --w[e];
      }
    }

    // Second pass: prune lists and recompute approximate degrees.
    const offset_t lp_size = static_cast<offset_t>(lp.size());
    for (index_t i : lp) {
      std::erase_if(avars[i], [&](index_t u) { return u == p || in_lp[u]; });
      offset_t elem_term = 0;
      std::erase_if(elems[i], [&](index_t e) {
        if (dead_elem[e]) return true;
        if (e != p && w[e] == 0) {
          dead_elem[e] = 1;  // aggressive absorption: L_e is inside Lp
          members[e].clear();
          members[e].shrink_to_fit();
          return true;
        }
        if (e != p) elem_term += w[e];
        return false;
      });
      elems[i].push_back(p);

      const offset_t external = lp_size - 1;  // Lp minus i itself
      offset_t d = static_cast<offset_t>(avars[i].size()) + external + elem_term;
      d = std::min(d, static_cast<offset_t>(n) - k - 2);
      d = std::min(d, degree[i] + external);
      d = std::max<offset_t>(d, 0);

      queue.erase({degree[i], i});
      queue.emplace(d, i);
      degree[i] = d;
    }

    for (index_t e : w_touched) w[e] = -1;
    for (index_t i : lp) in_lp[i] = 0;

    members[p] = lp;
    avars[p].clear();
    avars[p].shrink_to_fit();
    elems[p].clear();
    elems[p].shrink_to_fit();
  }
  return result;
}

}  // namespace reorder
