#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reorder/fill.hpp"

namespace reorder {

/// One matrix's predicted label, with the measured prediction time when the
/// predictions file carried one.
struct PredictionRow {
  std::string matrix_name;
  OrderingLabel label;
  std::optional<double> seconds;
};

/// Solve-time comparison of baseline AMD vs the predicted ordering vs the
/// per-matrix optimum.
struct ReportSummary {
  struct Row {
    std::string matrix_name;
    double baseline;   // AMD seconds
    double predicted;  // seconds under the predicted label
    double ideal;      // per-row minimum over the four labels
    double speedup;    // baseline / predicted
  };
  std::vector<Row> rows;
  double total_time_baseline = 0.0;
  double total_time_predicted = 0.0;
  double total_time_ideal = 0.0;
  double reduction_percent = 0.0;  // 100 * (baseline - predicted) / baseline
  double mean_speedup = 0.0;       // arithmetic mean of per-row speedups
  std::optional<double> total_prediction_seconds;
};

/// CSV with header `matrix,label[,seconds]`.
std::vector<PredictionRow> read_predictions_csv(std::istream& in);
std::vector<PredictionRow> read_predictions_csv_file(const std::string& path);
void write_predictions_csv(std::span<const PredictionRow> rows, std::ostream& out,
                           bool with_times);

/// Joins timings and predictions by matrix name; unmatched names on either
/// side raise ReportError. Rows keep the predictions-file order.
ReportSummary build_report(std::span<const TimingRecord> timings,
                           std::span<const PredictionRow> predictions);

void render_report(const ReportSummary& summary, std::ostream& out);
void write_report_csv(const ReportSummary& summary, std::ostream& out);

}  // namespace reorder
