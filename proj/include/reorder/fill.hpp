#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "reorder/csr.hpp"
#include "reorder/orderings.hpp"

namespace reorder {

/// Elimination tree of a permuted symmetric pattern. parent is indexed by
/// the new (permuted) numbering; roots hold -1 and parent[v] > v otherwise.
struct EliminationTree {
  std::vector<index_t> parent;
  std::vector<index_t> postorder;
};

/// Symbolic Cholesky cost of ordering p on pattern g.
struct CostReport {
  std::int64_t fill_in = 0;     // nnz(L) minus the permuted lower triangle
  std::int64_t factor_nnz = 0;  // nnz(L), diagonal included
  std::int64_t flops = 0;       // sum of squared column counts of L

  bool operator==(const CostReport&) const = default;
};

/// Brute-force oracle: simulates elimination, cliquing the uneliminated
/// neighborhood of each pivot. Quadratic; intended for n up to a few hundred.
CostReport elimination_game_fill(const AdjacencyGraph& g, const Permutation& p);

EliminationTree build_elimination_tree(const AdjacencyGraph& g, const Permutation& p);

/// Exact column counts of L via row-subtree traversal of the elimination
/// tree. Agrees with elimination_game_fill on every input.
CostReport etree_column_counts(const AdjacencyGraph& g, const Permutation& p);

/// Externally measured solve times for one matrix, seconds per label.
struct TimingRecord {
  std::string matrix_name;
  std::map<OrderingLabel, double> seconds;
};

/// Argmin flops over the four native orderings; ties broken
/// AMD > HYBRID > ND > RCM.
OrderingLabel proxy_label(const SparseMatrixCSR& m);

/// Same cost evaluation, returned per label (flops via etree_column_counts).
std::map<OrderingLabel, CostReport> cost_all_orderings(const SparseMatrixCSR& m);

/// Argmin of measured seconds; same tie precedence as proxy_label.
OrderingLabel label_from_timings(const TimingRecord& rec);

/// CSV with header `matrix,rcm,amd,nd,scotch`; scotch maps to HYBRID.
std::vector<TimingRecord> read_timings_csv(std::istream& in);
std::vector<TimingRecord> read_timings_csv_file(const std::string& path);

}  // namespace reorder
