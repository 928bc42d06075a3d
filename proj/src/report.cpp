#include "reorder/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace reorder {

std::vector<PredictionRow> read_predictions_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty predictions file", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool with_times = false;
  if (line == "matrix,label,seconds")
    with_times = true;
  else if (line != "matrix,label")
    throw ParseError("predictions header must be 'matrix,label[,seconds]'", line_no);

  std::vector<PredictionRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string name, label, seconds;
    if (!std::getline(ss, name, ',') || !std::getline(ss, label, ','))
      throw ParseError("malformed prediction row '" + line + "'", line_no);
    PredictionRow row{name, label_from_string(label), std::nullopt};
    if (with_times) {
      if (!std::getline(ss, seconds, ','))
        throw ParseError("missing seconds field", line_no);
      char* end = nullptr;
      const double s = std::strtod(seconds.c_str(), &end);
      if (seconds.empty() || end != seconds.c_str() + seconds.size())
        throw ParseError("bad seconds value '" + seconds + "'", line_no);
      row.seconds = s;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<PredictionRow> read_predictions_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return read_predictions_csv(in);
  } catch (ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_predictions_csv(std::span<const PredictionRow> rows, std::ostream& out,
                           bool with_times) {
  out << (with_times ? "matrix,label,seconds" : "matrix,label") << "\n";
  char buf[32];
  for (const PredictionRow& r : rows) {
    out << r.matrix_name << "," << to_string(r.label);
    if (with_times) {
      std::snprintf(buf, sizeof(buf), "%.6f", r.seconds.value_or(0.0));
      out << "," << buf;
    }
    out << "\n";
  }
}

ReportSummary build_report(std::span<const TimingRecord> timings,
                           std::span<const PredictionRow> predictions) {
  std::map<std::string, const TimingRecord*> by_name;
  for (const TimingRecord& t : timings) by_name[t.matrix_name] = &t;

  std::vector<std::string> missing;
  for (const PredictionRow& p : predictions)
    if (!by_name.contains(p.matrix_name)) missing.push_back(p.matrix_name);
  {
    std::map<std::string, bool> predicted_names;
    for (const PredictionRow& p : predictions) predicted_names[p.matrix_name] = true;
    for (const TimingRecord& t : timings)
      if (!predicted_names.contains(t.matrix_name)) missing.push_back(t.matrix_name);
  }
  if (!missing.empty()) {
    std::string joined;
    for (const std::string& m : missing) joined += (joined.empty() ? "" : ", ") + m;
    throw ReportError("timings and predictions do not cover the same matrices: " +
                      joined);
  }

  ReportSummary s;
  double speedup_sum = 0.0;
  double prediction_seconds = 0.0;
  bool any_seconds = false;
  for (const PredictionRow& p : predictions) {
    const TimingRecord& t = *by_name.at(p.matrix_name);
    ReportSummary::Row row;
    row.matrix_name = p.matrix_name;
    row.baseline = t.seconds.at(OrderingLabel::AMD);
    row.predicted = t.seconds.at(p.label);
    row.ideal = row.baseline;
    for (const auto& [label, sec] : t.seconds) row.ideal = std::min(row.ideal, sec);
    row.speedup = row.baseline / row.predicted;
    s.total_time_baseline += row.baseline;
    s.total_time_predicted += row.predicted;
    s.total_time_ideal += row.ideal;
    speedup_sum += row.speedup;
    if (p.seconds) {
      any_seconds = true;
      prediction_seconds += *p.seconds;
    }
    s.rows.push_back(std::move(row));
  }
  if (!s.rows.empty()) {
    s.reduction_percent = 100.0 * (s.total_time_baseline - s.total_time_predicted) /
                          s.total_time_baseline;
    s.mean_speedup = speedup_sum / static_cast<double>(s.rows.size());
  }
  if (any_seconds) s.total_prediction_seconds = prediction_seconds;
  return s;
}

void render_report(const ReportSummary& s, std::ostream& out) {
  std::size_t name_w = 6;
  for (const ReportSummary::Row& r : s.rows)
    name_w = std::max(name_w, r.matrix_name.size());

  out << std::left << std::setw(static_cast<int>(name_w)) << "matrix" << std::right
      << std::setw(14) << "amd(s)" << std::setw(14) << "predicted(s)"
      << std::setw(12) << "ideal(s)" << std::setw(10) << "speedup" << "\n";
  out << std::setprecision(4) << std::fixed;
  for (const ReportSummary::Row& r : s.rows) {
    out << std::left << std::setw(static_cast<int>(name_w)) << r.matrix_name
        << std::right << std::setw(14) << r.baseline << std::setw(14) << r.predicted
        << std::setw(12) << r.ideal << std::setw(10) << std::setprecision(2)
        << r.speedup << std::setprecision(4) << "\n";
  }
  out << "\n";
  out << "total solve time: amd " << s.total_time_baseline << " s, predicted "
      << s.total_time_predicted << " s, ideal " << s.total_time_ideal << " s\n";
  out << std::setprecision(2);
  out << "reduction vs amd: " << s.reduction_percent << "%\n";
  out << "mean speedup: " << s.mean_speedup << "\n";
  if (s.total_prediction_seconds) {
    out << std::setprecision(4);
    out << "total prediction time: " << *s.total_prediction_seconds << " s\n";
  }
  out.unsetf(std::ios::fixed);
  out << std::setprecision(6);
}

void write_report_csv(const ReportSummary& s, std::ostream& out) {
  out << "matrix,baseline,predicted,ideal,speedup\n";
  char buf[160];
  for (const ReportSummary::Row& r : s.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g\n",
                  r.matrix_name.c_str(), r.baseline, r.predicted, r.ideal, r.speedup);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "TOTAL,%.17g,%.17g,%.17g,%.17g\n",
                s.total_time_baseline, s.total_time_predicted, s.total_time_ideal,
                s.mean_speedup);
  out << buf;
}

}  // namespace reorder
