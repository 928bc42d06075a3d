#include "reorder/ml/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace reorder::ml {

void Dataset::add_row(std::string name, const FeatureVector& f) {
  names.push_back(std::move(name));
  const auto row = f.to_row();
  X.insert(X.end(), row.begin(), row.end());
  y.push_back(OrderingLabel::RCM);  // placeholder, not flagged
  has_label.push_back(0);
}

void Dataset::add_row(std::string name, const FeatureVector& f, OrderingLabel label) {
  add_row(std::move(name), f);
  y.back() = label;
  has_label.back() = 1;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  for (std::size_t i : indices) {
    out.names.push_back(names[i]);
    const std::span<const double> r = row(i);
    out.X.insert(out.X.end(), r.begin(), r.end());
    out.y.push_back(y[i]);
    out.has_label.push_back(has_label[i]);
  }
  return out;
}

bool Dataset::fully_labeled() const {
  for (char h : has_label)
    if (!h) return false;
  return true;
}

void Dataset::check() const {
  if (y.size() != rows() || has_label.size() != rows() ||
      X.size() != rows() * kFeatureCount)
    throw Error("dataset arrays are inconsistent");
  for (double v : X)
    if (!std::isfinite(v)) throw Error("dataset contains a non-finite feature value");
}

void write_dataset_csv(const Dataset& d, std::ostream& out) {
  out << "matrix";
  for (const std::string& f : FeatureVector::names()) out << "," << f;
  out << ",label\n";
  char buf[64];
  for (std::size_t i = 0; i < d.rows(); ++i) {
    out << d.names[i];
    for (double v : d.row(i)) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << "," << buf;
    }
    out << "," << (d.has_label[i] ? to_string(d.y[i]) : "") << "\n";
  }
}

void write_dataset_csv_file(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_dataset_csv(d, out);
}

Dataset read_dataset_csv(std::istream& in, bool require_labels) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty dataset file", 1);
  ++line_no;

  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(s);
    while (std::getline(ss, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      cells.push_back(cell);
    }
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };

  std::string expected_header = "matrix";
  for (const std::string& f : FeatureVector::names()) expected_header += "," + f;
  expected_header += ",label";
  {
    std::string got = line;
    if (!got.empty() && got.back() == '\r') got.pop_back();
    if (got != expected_header)
      throw ParseError("dataset header must be '" + expected_header + "'", line_no);
  }

  Dataset d;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != kFeatureCount + 2)
      throw ParseError("expected " + std::to_string(kFeatureCount + 2) +
                           " comma-separated fields",
                       line_no);
    std::array<double, kFeatureCount> row;
    for (std::size_t c = 0; c < kFeatureCount; ++c) {
      char* end = nullptr;
      row[c] = std::strtod(cells[c + 1].c_str(), &end);
      if (cells[c + 1].empty() || end != cells[c + 1].c_str() + cells[c + 1].size())
        throw ParseError("bad feature value '" + cells[c + 1] + "'", line_no);
      if (!std::isfinite(row[c]))
        throw ParseError("non-finite feature value '" + cells[c + 1] + "'", line_no);
    }
    const std::string& label_cell = cells.back();
    if (label_cell.empty()) {
      if (require_labels)
        throw ParseError("row '" + cells[0] + "' has no label", line_no);
      d.add_row(cells[0], FeatureVector::from_row(row));
    } else {
      try {
        d.add_row(cells[0], FeatureVector::from_row(row), label_from_string(label_cell));
      } catch (const ParseError&) {
        throw ParseError("bad label '" + label_cell + "'", line_no);
      }
    }
  }
  return d;
}

Dataset read_dataset_csv_file(const std::string& path, bool require_labels) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return read_dataset_csv(in, require_labels);
  } catch (ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace reorder::ml
