#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reorder/csr.hpp"

namespace reorder {

/// The four reordering categories the selector predicts.
enum class OrderingLabel { RCM, AMD, ND, HYBRID };

constexpr std::array<OrderingLabel, 4> kAllLabels = {
    OrderingLabel::RCM, OrderingLabel::AMD, OrderingLabel::ND,
    OrderingLabel::HYBRID};

std::string to_string(OrderingLabel label);
/// Accepts the canonical names plus "SCOTCH" as an alias for HYBRID.
OrderingLabel label_from_string(const std::string& s);

enum class LeafOrdering { natural, minimum_degree };

struct NDConfig {
  index_t leaf_threshold = 32;  // components at or below this size are not split
  LeafOrdering leaf_ordering = LeafOrdering::natural;
};

/// One dissection step: the separator is numbered after both parts.
struct NDTraceNode {
  std::vector<index_t> part_a;
  std::vector<index_t> part_b;
  std::vector<index_t> separator;
};

/// Reverse Cuthill-McKee from a pseudo-peripheral start per component.
Permutation rcm_ordering(const AdjacencyGraph& g);

/// Quotient-graph minimum degree with approximate external degree bounds.
Permutation minimum_degree_ordering(const AdjacencyGraph& g);

Permutation nested_dissection_ordering(const AdjacencyGraph& g,
                                       const NDConfig& cfg = {},
                                       std::vector<NDTraceNode>* trace = nullptr);

/// Nested dissection with minimum-degree leaf ordering.
Permutation hybrid_ordering(const AdjacencyGraph& g, const NDConfig& cfg = {});

/// Symmetrizes m and dispatches to the algorithm for the label.
Permutation order_by_label(const SparseMatrixCSR& m, OrderingLabel label);

namespace detail {

/// BFS level structure of one connected component.
struct LevelStructure {
  std::vector<index_t> order;      // component vertices, level by level
  std::vector<offset_t> level_ptr; // offsets into order, one per level
  std::size_t height() const { return level_ptr.size() - 2; }
};

/// marks must be n elements, reset to `unmarked` for the component's vertices.
LevelStructure bfs_levels(const AdjacencyGraph& g, index_t root,
                          std::vector<index_t>& marks, index_t stamp);

/// George-Liu heuristic: repeated BFS toward a farthest minimum-degree
/// vertex, capped at 10 sweeps.
index_t pseudo_peripheral_vertex(const AdjacencyGraph& g, index_t seed,
                                 std::vector<index_t>& marks, index_t& stamp);

}  // namespace detail

}  // namespace reorder
