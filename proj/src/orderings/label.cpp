#include "reorder/orderings.hpp"

namespace reorder {

std::string to_string(OrderingLabel label) {
  switch (label) {
    case OrderingLabel::RCM:
      return "RCM";
    case OrderingLabel::AMD:
      return "AMD";
    case OrderingLabel::ND:
      return "ND";
    case OrderingLabel::HYBRID:
      return "HYBRID";
  }
  return "?";
}

OrderingLabel label_from_string(const std::string& s) {
  if (s == "RCM") return OrderingLabel::RCM;
  if (s == "AMD") return OrderingLabel::AMD;
  if (s == "ND") return OrderingLabel::ND;
  if (s == "HYBRID" || s == "SCOTCH") return OrderingLabel::HYBRID;
  throw ParseError("unknown ordering label '" + s + "'");
}

Permutation order_by_label(const SparseMatrixCSR& m, OrderingLabel label) {
  const AdjacencyGraph g = symmetrize(m);
  switch (label) {
    case OrderingLabel::RCM:
      return rcm_ordering(g);
    case OrderingLabel::AMD:
      return minimum_degree_ordering(g);
    case OrderingLabel::ND:
      return nested_dissection_ordering(g);
    case OrderingLabel::HYBRID:
      return hybrid_ordering(g);
  }
  throw ConfigError("invalid ordering label");
}

}  // namespace reorder
