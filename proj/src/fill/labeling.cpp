#include <fstream>
#include <istream>
#include <sstream>

#include "reorder/fill.hpp"

namespace reorder {

namespace {

// Tie precedence: AMD is the sensible default, then the categories that
// usually trail it.
constexpr std::array<OrderingLabel, 4> kPrecedence = {
    OrderingLabel::AMD, OrderingLabel::HYBRID, OrderingLabel::ND,
    OrderingLabel::RCM};

}  // namespace

std::map<OrderingLabel, CostReport> cost_all_orderings(const SparseMatrixCSR& m) {
  const AdjacencyGraph g = symmetrize(m);
  std::map<OrderingLabel, CostReport> costs;
  costs[OrderingLabel::RCM] = etree_column_counts(g, rcm_ordering(g));
  costs[OrderingLabel::AMD] = etree_column_counts(g, minimum_degree_ordering(g));
  costs[OrderingLabel::ND] = etree_column_counts(g, nested_dissection_ordering(g));
  costs[OrderingLabel::HYBRID] = etree_column_counts(g, hybrid_ordering(g));
  return costs;
}

OrderingLabel proxy_label(const SparseMatrixCSR& m) {
  const std::map<OrderingLabel, CostReport> costs = cost_all_orderings(m);
  OrderingLabel best = kPrecedence[0];
  for (OrderingLabel label : kPrecedence)
    if (costs.at(label).flops < costs.at(best).flops) best = label;
  return best;
}

OrderingLabel label_from_timings(const TimingRecord& rec) {
  for (OrderingLabel label : kAllLabels)
    if (!rec.seconds.contains(label))
      throw IncompleteRecord("timing record for '" + rec.matrix_name +
                             "' is missing a " + to_string(label) + " time");
  OrderingLabel best = kPrecedence[0];
  for (OrderingLabel label : kPrecedence)
    if (rec.seconds.at(label) < rec.seconds.at(best)) best = label;
  return best;
}

std::vector<TimingRecord> read_timings_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty timings file", 1);
  ++line_no;

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r'))
        cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      out.push_back(cell);
    }
    return out;
  };

  const std::vector<std::string> header = split(line);
  if (header != std::vector<std::string>{"matrix", "rcm", "amd", "nd", "scotch"})
    throw ParseError("timings header must be 'matrix,rcm,amd,nd,scotch'", line_no);

  std::vector<TimingRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != 5)
      throw ParseError("expected 5 comma-separated fields", line_no);
    TimingRecord rec;
    rec.matrix_name = cells[0];
    const std::array<OrderingLabel, 4> order = {
        OrderingLabel::RCM, OrderingLabel::AMD, OrderingLabel::ND,
        OrderingLabel::HYBRID};  // scotch column carries the hybrid category
    for (std::size_t c = 0; c < 4; ++c) {
      char* end = nullptr;
      const double v = std::strtod(cells[c + 1].c_str(), &end);
      if (end != cells[c + 1].c_str() + cells[c + 1].size() || cells[c + 1].empty())
        throw ParseError("bad time '" + cells[c + 1] + "'", line_no);
      if (!(v > 0)) throw ParseError("times must be positive", line_no);
      rec.seconds[order[c]] = v;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<TimingRecord> read_timings_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return read_timings_csv(in);
  } catch (ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace reorder
