#include <algorithm>

#include "reorder/orderings.hpp"

namespace reorder {

namespace {

struct Dissector {
  const NDConfig& cfg;
  std::vector<NDTraceNode>* trace;

  // Induced subgraph on `vertices` (global ids, any order) with local ids.
  static AdjacencyGraph induce(const AdjacencyGraph& g,
                               const std::vector<index_t>& vertices,
                               std::vector<index_t>& local_of) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      local_of[vertices[i]] = static_cast<index_t>(i);
    std::vector<std::pair<index_t, index_t>> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (index_t u : g.neighbors(vertices[i]))
        if (local_of[u] >= 0 && local_of[u] > static_cast<index_t>(i))
          edges.emplace_back(static_cast<index_t>(i), local_of[u]);
    AdjacencyGraph sub =
        AdjacencyGraph::from_edges(static_cast<index_t>(vertices.size()), edges);
    for (index_t v : vertices) local_of[v] = -1;
    return sub;
  }

  // Appends `vertices` to `out` in elimination order.
  void order_leaf(const AdjacencyGraph& g, std::vector<index_t> vertices,
                  std::vector<index_t>& local_of, std::vector<index_t>& out) {
    std::sort(vertices.begin(), vertices.end());
    if (cfg.leaf_ordering == LeafOrdering::natural) {
      out.insert(out.end(), vertices.begin(), vertices.end());
      return;
    }
    const AdjacencyGraph sub = induce(g, vertices, local_of);
    const Permutation p = minimum_degree_ordering(sub);
    std::vector<index_t> seq(vertices.size());
    for (index_t local = 0; local < p.size(); ++local)
      seq[p[local]] = vertices[local];
    out.insert(out.end(), seq.begin(), seq.end());
  }

  void dissect(const AdjacencyGraph& g, std::vector<index_t> vertices,
               std::vector<index_t>& marks, index_t& stamp,
               std::vector<index_t>& local_of, std::vector<index_t>& out) {
    if (static_cast<index_t>(vertices.size()) <= cfg.leaf_threshold) {
      order_leaf(g, std::move(vertices), local_of, out);
      return;
    }
    std::sort(vertices.begin(), vertices.end());

    // split off connected components; each is dissected independently
    ++stamp;
    for (index_t v : vertices) marks[v] = stamp;
    std::vector<std::vector<index_t>> comps;
    const index_t comp_stamp = stamp;
    for (index_t v : vertices) {
      if (marks[v] != comp_stamp) continue;  // already swept into a component
      std::vector<index_t> comp{v};
      marks[v] = comp_stamp - 1;
      for (std::size_t head = 0; head < comp.size(); ++head)
        for (index_t u : g.neighbors(comp[head]))
          if (marks[u] == comp_stamp) {
            marks[u] = comp_stamp - 1;
            comp.push_back(u);
          }
      comps.push_back(std::move(comp));
    }
    if (comps.size() > 1) {
      for (std::vector<index_t>& comp : comps)
        dissect(g, std::move(comp), marks, stamp, local_of, out);
      return;
    }

    // connected: BFS level structure from a pseudo-peripheral vertex,
    // median level is the separator
    std::vector<index_t>& comp = comps.front();
    std::sort(comp.begin(), comp.end());
    const AdjacencyGraph sub = induce(g, comp, local_of);
    std::vector<index_t> sub_marks(sub.n, -1);
    index_t sub_stamp = -1;
    const index_t start =
        detail::pseudo_peripheral_vertex(sub, 0, sub_marks, sub_stamp);
    const detail::LevelStructure ls =
        detail::bfs_levels(sub, start, sub_marks, ++sub_stamp);

    const std::size_t n_levels = ls.level_ptr.size() - 1;
    const std::size_t sep_level = (n_levels - 1) / 2;
    auto level_span = [&](std::size_t l) {
      return std::span<const index_t>(ls.order.data() + ls.level_ptr[l],
                                      static_cast<std::size_t>(ls.level_ptr[l + 1] -
                                                               ls.level_ptr[l]));
    };
    NDTraceNode node;
    for (std::size_t l = 0; l < n_levels; ++l) {
      for (index_t local : level_span(l)) {
        const index_t v = comp[local];
        if (l < sep_level)
          node.part_a.push_back(v);
        else if (l == sep_level)
          node.separator.push_back(v);
        else
          node.part_b.push_back(v);
      }
    }
    std::sort(node.separator.begin(), node.separator.end());

    std::vector<index_t> part_a = node.part_a;
    std::vector<index_t> part_b = node.part_b;
    std::vector<index_t> separator = node.separator;
    if (trace) trace->push_back(std::move(node));

    if (!part_a.empty()) dissect(g, std::move(part_a), marks, stamp, local_of, out);
    if (!part_b.empty()) dissect(g, std::move(part_b), marks, stamp, local_of, out);
    out.insert(out.end(), separator.begin(), separator.end());
  }
};

}  // namespace

Permutation nested_dissection_ordering(const AdjacencyGraph& g, const NDConfig& cfg,
                                       std::vector<NDTraceNode>* trace) {
  if (cfg.leaf_threshold < 2) throw ConfigError("leaf_threshold must be >= 2");
  const index_t n = g.n;
  std::vector<index_t> all(n);
  for (index_t v = 0; v < n; ++v) all[v] = v;

  std::vector<index_t> marks(n, -1);
  std::vector<index_t> local_of(n, -1);
  index_t stamp = 0;
  std::vector<index_t> sequence;
  sequence.reserve(n);

  Dissector d{cfg, trace};
  if (n > 0) d.dissect(g, std::move(all), marks, stamp, local_of, sequence);

  Permutation p;
  p.perm.assign(n, -1);
  for (index_t pos = 0; pos < n; ++pos) p.perm[sequence[pos]] = pos;
  return p;
}

Permutation hybrid_ordering(const AdjacencyGraph& g, const NDConfig& cfg) {
  NDConfig hybrid_cfg = cfg;
  hybrid_cfg.leaf_ordering = LeafOrdering::minimum_degree;
  return nested_dissection_ordering(g, hybrid_cfg);
}

}  // namespace reorder
