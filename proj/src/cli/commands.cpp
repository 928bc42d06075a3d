#include "reorder/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "reorder/features.hpp"
#include "reorder/fetch.hpp"
#include "reorder/fill.hpp"
#include "reorder/ml/model.hpp"
#include "reorder/ml/validate.hpp"
#include "reorder/mmio.hpp"
#include "reorder/report.hpp"

namespace reorder::cli {

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// helpers

/// fn(i) over [0, n), results keyed by index so output order never depends
/// on scheduling.
template <class Fn>
void parallel_for_ordered(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_workers = std::min<std::size_t>(jobs, n);
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

int default_jobs() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Expands files and directories into a sorted list of .mtx paths.
std::vector<fs::path> collect_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    const fs::path p(input);
    if (fs::is_directory(p)) {
      std::vector<fs::path> dir_files;
      for (const fs::directory_entry& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".mtx")
          dir_files.push_back(e.path());
      std::sort(dir_files.begin(), dir_files.end());
      files.insert(files.end(), dir_files.begin(), dir_files.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

std::string matrix_name_of(const fs::path& p) { return p.stem().string(); }

/// "key=a,b;key2=c" -> {key: [a, b], key2: [c]}
ml::HyperparamGrid parse_grid_spec(const std::string& spec) {
  ml::HyperparamGrid grid;
  std::stringstream groups(spec);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    const std::size_t eq = group.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("bad grid entry '" + group + "' (want key=v1,v2)");
    const std::string key = group.substr(0, eq);
    std::vector<std::string> values;
    std::stringstream vals(group.substr(eq + 1));
    std::string v;
    while (std::getline(vals, v, ',')) values.push_back(v);
    if (values.empty())
      throw ConfigError("hyperparameter '" + key + "' has an empty candidate list");
    grid[key] = std::move(values);
  }
  if (grid.empty()) throw ConfigError("empty grid spec");
  return grid;
}

ml::HyperparamGrid default_grid(ml::Algorithm algorithm) {
  switch (algorithm) {
    case ml::Algorithm::decision_tree:
    case ml::Algorithm::random_forest:
      return {{"criterion", {"gini"}}};
    case ml::Algorithm::knn:
      return {{"n_neighbors", {"5"}}};
    case ml::Algorithm::naive_bayes:
      return {{"var_smoothing", {"1e-9"}}};
  }
  throw ConfigError("invalid algorithm");
}

std::string combo_to_string(const ml::Hyperparams& hp) {
  std::string out;
  for (const auto& [k, v] : hp) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out.empty() ? "(defaults)" : out;
}

std::ostream& open_or_stdout(std::optional<std::ofstream>& file, const std::string& path,
                             std::ostream& out) {
  if (path.empty()) return out;
  file.emplace(path);
  if (!*file) throw Error("cannot open '" + path + "' for writing");
  return *file;
}

// ---------------------------------------------------------------------------
// per-file feature extraction shared by `features` and `dataset`

struct ExtractedRow {
  std::string name;
  FeatureVector features;
  std::optional<OrderingLabel> label;
  std::string error;  // nonempty when the file failed
};

std::vector<ExtractedRow> extract_rows(const std::vector<fs::path>& files, int jobs,
                                       bool with_proxy_labels) {
  std::vector<ExtractedRow> rows(files.size());
  parallel_for_ordered(files.size(), jobs, [&](std::size_t i) {
    rows[i].name = matrix_name_of(files[i]);
    try {
      const SparseMatrixCSR m = parse_matrix_market_file(files[i].string());
      rows[i].features = extract_features(m);
      if (with_proxy_labels) rows[i].label = proxy_label(m);
    } catch (const std::exception& e) {  // nothing may escape a worker thread
      rows[i].error = e.what();
    }
  });
  return rows;
}

/// Reports failed rows; returns true when processing may continue.
bool report_errors(const std::vector<ExtractedRow>& rows, bool skip_bad,
                   std::ostream& err) {
  bool any = false;
  for (const ExtractedRow& r : rows) {
    if (r.error.empty()) continue;
    any = true;
    err << (skip_bad ? "warning: " : "error: ") << r.error << "\n";
  }
  return !any || skip_bad;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_fetch(const std::string& group, const std::string& name,
              const std::string& cache, std::ostream& out) {
  FetchOptions options;
  if (!cache.empty()) options.cache_dir = cache;
  out << fetch_collection_matrix(group, name, options).string() << "\n";
  return 0;
}

int cmd_features(const std::vector<std::string>& inputs, const std::string& out_path,
                 bool skip_bad, int jobs, std::ostream& out, std::ostream& err) {
  const std::vector<fs::path> files = collect_inputs(inputs);
  const std::vector<ExtractedRow> rows = extract_rows(files, jobs, false);
  const bool ok = report_errors(rows, skip_bad, err);

  ml::Dataset d;
  for (const ExtractedRow& r : rows)
    if (r.error.empty()) d.add_row(r.name, r.features);

  std::optional<std::ofstream> file;
  ml::write_dataset_csv(d, open_or_stdout(file, out_path, out));
  return ok ? 0 : 2;
}

int cmd_reorder(const std::string& input, const std::string& algorithm,
                const std::string& out_path, const std::string& perm_path,
                std::ostream& out) {
  const SparseMatrixCSR m = parse_matrix_market_file(input);
  const OrderingLabel label = label_from_string(algorithm);
  const Permutation p = order_by_label(m, label);
  if (!perm_path.empty()) {
    std::ofstream pf(perm_path);
    if (!pf) throw Error("cannot open '" + perm_path + "' for writing");
    for (index_t v = 0; v < p.size(); ++v) pf << p[v] << "\n";
  }
  const SparseMatrixCSR permuted = apply_permutation(m, p);
  std::optional<std::ofstream> file;
  write_matrix_market(permuted, open_or_stdout(file, out_path, out));
  return 0;
}

int cmd_label(const std::string& features_path, const std::string& matrices_dir,
              const std::string& timings_path, const std::string& out_path,
              int jobs, std::ostream& out, std::ostream& err) {
  ml::Dataset d = ml::read_dataset_csv_file(features_path, false);

  if (!timings_path.empty()) {
    const std::vector<TimingRecord> records = read_timings_csv_file(timings_path);
    std::map<std::string, const TimingRecord*> by_name;
    for (const TimingRecord& r : records) by_name[r.matrix_name] = &r;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      auto it = by_name.find(d.names[i]);
      if (it == by_name.end()) {
        err << "error: no timing row for matrix '" << d.names[i] << "'\n";
        return 2;
      }
      d.y[i] = label_from_timings(*it->second);
      d.has_label[i] = 1;
    }
  } else {
    std::vector<std::string> errors(d.rows());
    parallel_for_ordered(d.rows(), jobs, [&](std::size_t i) {
      const fs::path path = fs::path(matrices_dir) / (d.names[i] + ".mtx");
      try {
        if (!fs::exists(path))
          throw ParseError("no matrix file '" + path.string() + "'");
        d.y[i] = proxy_label(parse_matrix_market_file(path.string()));
        d.has_label[i] = 1;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    for (const std::string& e : errors) {
      if (!e.empty()) {
        err << "error: " << e << "\n";
        return 2;
      }
    }
  }

  std::optional<std::ofstream> file;
  ml::write_dataset_csv(d, open_or_stdout(file, out_path, out));
  return 0;
}

int cmd_dataset(const std::vector<std::string>& inputs, const std::string& timings_path,
                const std::string& out_path, bool skip_bad, int jobs,
                std::ostream& out, std::ostream& err) {
  const std::vector<fs::path> files = collect_inputs(inputs);
  std::vector<ExtractedRow> rows = extract_rows(files, jobs, timings_path.empty());

  if (!timings_path.empty()) {
    const std::vector<TimingRecord> records = read_timings_csv_file(timings_path);
    std::map<std::string, const TimingRecord*> by_name;
    for (const TimingRecord& r : records) by_name[r.matrix_name] = &r;
    for (ExtractedRow& r : rows) {
      if (!r.error.empty()) continue;
      auto it = by_name.find(r.name);
      if (it == by_name.end())
        r.error = "no timing row for matrix '" + r.name + "'";
      else
        r.label = label_from_timings(*it->second);
    }
  }

  const bool ok = report_errors(rows, skip_bad, err);
  ml::Dataset d;
  for (const ExtractedRow& r : rows)
    if (r.error.empty()) d.add_row(r.name, r.features, *r.label);

  std::optional<std::ofstream> file;
  ml::write_dataset_csv(d, open_or_stdout(file, out_path, out));
  return ok ? 0 : 2;
}

int cmd_train(const std::string& data_path, const std::string& algorithm_name,
              const std::string& scaler_name, const std::string& grid_spec,
              int cv_k, std::uint64_t seed, double split_ratio,
              const std::string& test_out, int threads, const std::string& model_out,
              std::ostream& out, std::ostream& err) {
  const ml::Algorithm algorithm = ml::algorithm_from_string(algorithm_name);
  const ml::ScalerKind scaler = ml::scaler_from_string(scaler_name);
  const ml::Dataset full = ml::read_dataset_csv_file(data_path, true);

  if (!(split_ratio > 0.0 && split_ratio <= 1.0))
    throw ConfigError("--split must be in (0, 1]");
  ml::Dataset train = full;
  if (split_ratio < 1.0) {
    ml::SplitResult split = ml::train_test_split(full, split_ratio, seed);
    for (const std::string& w : split.warnings) err << "warning: " << w << "\n";
    train = std::move(split.train);
    if (!test_out.empty()) ml::write_dataset_csv_file(split.test, test_out);
    out << "split: " << train.rows() << " train / " << split.test.rows()
        << " test rows\n";
  } else if (!test_out.empty()) {
    throw ConfigError("--test-out requires --split below 1");
  }

  const ml::HyperparamGrid grid =
      grid_spec.empty() ? default_grid(algorithm) : parse_grid_spec(grid_spec);
  const ml::GridSearchResult gs =
      ml::grid_search(train, algorithm, grid, scaler, cv_k, seed, threads);
  for (const std::string& w : gs.warnings) err << "warning: " << w << "\n";

  out << "cv table (" << cv_k << "-fold, seed " << seed << "):\n";
  char buf[32];
  for (const auto& [combo, score] : gs.table) {
    std::snprintf(buf, sizeof(buf), "%.4f", score);
    out << "  " << buf << "%  " << combo_to_string(combo) << "\n";
  }
  std::snprintf(buf, sizeof(buf), "%.4f", gs.best_score);
  out << "best: " << combo_to_string(gs.best) << " (cv accuracy " << buf << "%)\n";

  const ml::TrainedModel model =
      ml::train_classifier(train, algorithm, gs.best, scaler, seed, threads);
  for (const std::string& w : model.warnings) err << "warning: " << w << "\n";
  ml::save_model_file(model, model_out);
  out << "model written to " << model_out << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const std::vector<std::string>& inputs,
                bool no_times, int jobs, std::ostream& out, std::ostream& err) {
  const ml::TrainedModel model = ml::load_model_file(model_path);
  const std::vector<fs::path> files = collect_inputs(inputs);

  struct Line {
    std::string text;
    std::string error;
  };
  std::vector<Line> lines(files.size());
  parallel_for_ordered(files.size(), jobs, [&](std::size_t i) {
    try {
      const SparseMatrixCSR m = parse_matrix_market_file(files[i].string());
      const FeatureVector f = extract_features(m);
      const ml::PredictResult r = ml::predict(model, f);
      char buf[64];
      if (no_times) {
        lines[i].text = matrix_name_of(files[i]) + "," + to_string(r.label);
      } else {
        std::snprintf(buf, sizeof(buf), "%.9f", r.seconds);
        lines[i].text = matrix_name_of(files[i]) + "," + to_string(r.label) + "," + buf;
      }
    } catch (const std::exception& e) {
      lines[i].error = e.what();
    }
  });

  out << (no_times ? "matrix,label" : "matrix,label,seconds") << "\n";
  int rc = 0;
  for (const Line& l : lines) {
    if (!l.error.empty()) {
      err << "error: " << l.error << "\n";
      rc = 2;
    } else {
      out << l.text << "\n";
    }
  }
  return rc;
}

int cmd_evaluate(const std::string& model_path, const std::string& data_path,
                 std::ostream& out) {
  const ml::TrainedModel model = ml::load_model_file(model_path);
  const ml::Dataset test = ml::read_dataset_csv_file(data_path, true);
  const ml::EvalReport r = ml::evaluate(model, test);

  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", r.accuracy_percent);
  out << "accuracy: " << buf << "% (" << r.p_true << "/" << r.p_all << ")\n";
  out << "confusion (rows = true, cols = predicted):\n";
  out << "        ";
  for (OrderingLabel l : kAllLabels) out << std::setw(8) << to_string(l);
  out << "\n";
  for (std::size_t t = 0; t < ml::kNumClasses; ++t) {
    out << std::setw(8) << to_string(kAllLabels[t]);
    for (std::size_t p = 0; p < ml::kNumClasses; ++p)
      out << std::setw(8) << r.confusion[t][p];
    out << "\n";
  }
  return 0;
}

int cmd_report(const std::string& timings_path, const std::string& predictions_path,
               const std::string& out_csv, std::ostream& out) {
  const std::vector<TimingRecord> timings = read_timings_csv_file(timings_path);
  const std::vector<PredictionRow> predictions =
      read_predictions_csv_file(predictions_path);
  const ReportSummary summary = build_report(timings, predictions);
  render_report(summary, out);
  if (!out_csv.empty()) {
    std::ofstream f(out_csv);
    if (!f) throw Error("cannot open '" + out_csv + "' for writing");
    write_report_csv(summary, f);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sparse matrix reordering toolkit and learned algorithm selector"};
  app.name("reorder-advisor");
  app.require_subcommand(1);

  // fetch
  auto* fetch = app.add_subcommand("fetch", "download a SuiteSparse collection matrix");
  std::string fetch_group, fetch_name, fetch_cache;
  fetch->add_option("group", fetch_group)->required();
  fetch->add_option("name", fetch_name)->required();
  fetch->add_option("--cache", fetch_cache, "cache directory");

  // features
  auto* features = app.add_subcommand("features", "extract feature CSV from .mtx files");
  std::vector<std::string> features_inputs;
  std::string features_out;
  bool features_skip_bad = false;
  int features_jobs = default_jobs();
  features->add_option("inputs", features_inputs, ".mtx files or directories")
      ->required();
  features->add_option("-o,--out", features_out, "output CSV (default stdout)");
  features->add_flag("--skip-bad", features_skip_bad, "warn instead of failing");
  features->add_option("--jobs", features_jobs, "parallel workers");

  // reorder
  auto* reorder_cmd = app.add_subcommand("reorder", "apply an ordering to a matrix");
  std::string reorder_input, reorder_alg = "AMD", reorder_out, reorder_perm;
  reorder_cmd->add_option("matrix", reorder_input)->required();
  reorder_cmd->add_option("--alg", reorder_alg, "RCM, AMD, ND or HYBRID");
  reorder_cmd->add_option("-o,--out", reorder_out, "permuted matrix (default stdout)");
  reorder_cmd->add_option("--perm-out", reorder_perm, "write the permutation");

  // label
  auto* label = app.add_subcommand("label", "fill the label column of a feature CSV");
  std::string label_features, label_matrices, label_timings, label_out;
  int label_jobs = default_jobs();
  label->add_option("--features", label_features, "feature CSV")->required();
  label->add_option("--matrices", label_matrices, "directory of .mtx files (proxy mode)");
  label->add_option("--timings", label_timings, "measured times CSV");
  label->add_option("-o,--out", label_out, "output CSV (default stdout)");
  label->add_option("--jobs", label_jobs, "parallel workers");

  // dataset
  auto* dataset = app.add_subcommand("dataset", "features + labels in one pass");
  std::vector<std::string> dataset_inputs;
  std::string dataset_timings, dataset_out;
  bool dataset_skip_bad = false;
  int dataset_jobs = default_jobs();
  dataset->add_option("inputs", dataset_inputs, ".mtx files or directories")->required();
  dataset->add_option("--timings", dataset_timings,
                      "measured times CSV (default: proxy cost labels)");
  dataset->add_option("-o,--out", dataset_out, "output CSV (default stdout)");
  dataset->add_flag("--skip-bad", dataset_skip_bad, "warn instead of failing");
  dataset->add_option("--jobs", dataset_jobs, "parallel workers");

  // train
  auto* train = app.add_subcommand("train", "grid search, fit and save a model");
  std::string train_data, train_algorithm = "random_forest";
  std::string train_scaler = "standardization", train_grid, train_test_out, train_out;
  int train_k = 5, train_threads = default_jobs();
  std::uint64_t train_seed = 42;
  double train_split = 1.0;
  train->add_option("--data", train_data, "labeled dataset CSV")->required();
  train->add_option("--algorithm", train_algorithm,
                    "decision_tree, random_forest, knn or naive_bayes");
  train->add_option("--scaler", train_scaler, "standardization or minmax");
  train->add_option("--grid", train_grid, "grid spec: key=v1,v2;key2=v3");
  train->add_option("--cv-k", train_k, "cross-validation folds");
  train->add_option("--seed", train_seed, "random seed");
  train->add_option("--split", train_split, "training fraction (1.0 = use all rows)");
  train->add_option("--test-out", train_test_out, "write held-out rows to CSV");
  train->add_option("--threads", train_threads, "parallel workers");
  train->add_option("--out", train_out, "model file path")->required();

  // predict
  auto* predict = app.add_subcommand("predict", "predict labels for .mtx files");
  std::string predict_model;
  std::vector<std::string> predict_inputs;
  bool predict_no_times = false;
  int predict_jobs = default_jobs();
  predict->add_option("--model", predict_model, "model file")->required();
  predict->add_option("inputs", predict_inputs, ".mtx files or directories")->required();
  predict->add_flag("--no-times", predict_no_times, "omit the seconds column");
  predict->add_option("--jobs", predict_jobs, "parallel workers");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "accuracy of a model on labeled data");
  std::string eval_model, eval_data;
  evaluate->add_option("--model", eval_model, "model file")->required();
  evaluate->add_option("--data", eval_data, "labeled dataset CSV")->required();

  // report
  auto* report = app.add_subcommand("report", "solve-time comparison tables");
  std::string report_timings, report_predictions, report_csv;
  report->add_option("--timings", report_timings, "measured times CSV")->required();
  report->add_option("--predictions", report_predictions, "predictions CSV")
      ->required();
  report->add_option("-o,--out", report_csv, "also write machine-readable CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(fetch))
      return cmd_fetch(fetch_group, fetch_name, fetch_cache, out);
    if (app.got_subcommand(features))
      return cmd_features(features_inputs, features_out, features_skip_bad,
                          features_jobs, out, err);
    if (app.got_subcommand(reorder_cmd))
      return cmd_reorder(reorder_input, reorder_alg, reorder_out, reorder_perm, out);
    if (app.got_subcommand(label)) {
      if (label_timings.empty() && label_matrices.empty())
        throw ConfigError("label needs --matrices (proxy mode) or --timings");
      return cmd_label(label_features, label_matrices, label_timings, label_out,
                       label_jobs, out, err);
    }
    if (app.got_subcommand(dataset))
      return cmd_dataset(dataset_inputs, dataset_timings, dataset_out,
                         dataset_skip_bad, dataset_jobs, out, err);
    if (app.got_subcommand(train))
      return cmd_train(train_data, train_algorithm, train_scaler, train_grid, train_k,
                       train_seed, train_split, train_test_out, train_threads,
                       train_out, out, err);
    if (app.got_subcommand(predict))
      return cmd_predict(predict_model, predict_inputs, predict_no_times, predict_jobs,
                         out, err);
    if (app.got_subcommand(evaluate)) return cmd_evaluate(eval_model, eval_data, out);
    if (app.got_subcommand(report))
      return cmd_report(report_timings, report_predictions, report_csv, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {  // Error subclasses and filesystem errors
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace reorder::cli
