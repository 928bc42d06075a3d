#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "reorder/features.hpp"
#include "reorder/orderings.hpp"

namespace reorder::ml {

/// Feature rows plus optional labels. X is row-major with kFeatureCount
/// columns in FeatureVector::names() order.
struct Dataset {
  std::vector<std::string> names;
  std::vector<double> X;
  std::vector<OrderingLabel> y;
  std::vector<char> has_label;

  std::size_t rows() const { return names.size(); }
  std::span<const double> row(std::size_t i) const {
    return {X.data() + i * kFeatureCount, kFeatureCount};
  }

  void add_row(std::string name, const FeatureVector& f);
  void add_row(std::string name, const FeatureVector& f, OrderingLabel label);
  /// Copies the given rows into a new dataset.
  Dataset subset(std::span<const std::size_t> indices) const;

  /// True when every row is labeled.
  bool fully_labeled() const;

  /// Throws on ragged storage or non-finite feature values.
  void check() const;
};

/// CSV header: matrix,<12 feature names>,label. Unlabeled rows leave the
/// label cell empty.
void write_dataset_csv(const Dataset& d, std::ostream& out);
void write_dataset_csv_file(const Dataset& d, const std::string& path);
Dataset read_dataset_csv(std::istream& in, bool require_labels);
Dataset read_dataset_csv_file(const std::string& path, bool require_labels);

}  // namespace reorder::ml
