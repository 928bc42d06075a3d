#include <map>

#include <sstream>

#include "doctest.h"
#include "reorder/kernels.hpp"
#include "reorder/ml/validate.hpp"
#include "support/generators.hpp"

using namespace reorder;
using namespace reorder::ml;
using testsupport::SplitMix64;

namespace {

FeatureVector feat(double f0, double f1 = 0.0) {
  std::array<double, kFeatureCount> row{};
  row[0] = f0;
  row[1] = f1;
  return FeatureVector::from_row(row);
}

void add(Dataset& d, double f0, double f1, OrderingLabel y) {
  d.add_row("m" + std::to_string(d.rows()), feat(f0, f1), y);
}

/// Two well-separated clusters on feature 0.
Dataset separable_toy(int per_class = 10) {
  Dataset d;
  for (int i = 0; i < per_class; ++i) {
    add(d, 0.0 + i * 0.05, 1.0, OrderingLabel::RCM);
    add(d, 100.0 + i * 0.05, -1.0, OrderingLabel::AMD);
  }
  return d;
}

/// Labels drawn independently of the features.
Dataset noise_toy(std::uint64_t seed, int rows) {
  SplitMix64 rng(seed);
  Dataset d;
  for (int i = 0; i < rows; ++i) {
    std::array<double, kFeatureCount> row;
    for (double& v : row) v = rng.next_double();
    d.add_row("n" + std::to_string(i), FeatureVector::from_row(row),
              kAllLabels[i % 4]);
  }
  return d;
}

std::string model_bytes(const TrainedModel& m) {
  std::ostringstream out;
  save_model(m, out);
  return out.str();
}

}  // namespace

TEST_CASE("scaler: standardization uses the population deviation") {
  const std::vector<double> col = {1.0, 2.0, 3.0};
  const ScalerParams p = ScalerParams::fit(col, 1, ScalerKind::standardization);
  std::vector<double> x = col;
  p.apply(x, 1);
  CHECK(x[0] == doctest::Approx(-1.224744871).epsilon(1e-9));
  CHECK(x[1] == doctest::Approx(0.0));
  CHECK(x[2] == doctest::Approx(1.224744871).epsilon(1e-9));
}

TEST_CASE("scaler: minmax maps onto the unit interval") {
  const std::vector<double> col = {2.0, 4.0, 6.0};
  const ScalerParams p = ScalerParams::fit(col, 1, ScalerKind::minmax);
  std::vector<double> x = col;
  p.apply(x, 1);
  CHECK(x == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("scaler: constant columns pass through as zero under both kinds") {
  const std::vector<double> col = {5.0, 5.0, 5.0};
  for (ScalerKind kind : {ScalerKind::standardization, ScalerKind::minmax}) {
    const ScalerParams p = ScalerParams::fit(col, 1, kind);
    CHECK(p.constant[0] == 1);
    std::vector<double> x = col;
    p.apply(x, 1);
    CHECK(x == std::vector<double>{0.0, 0.0, 0.0});
  }
}

TEST_CASE("scaler: empty input raises EmptyDataset") {
  CHECK_THROWS_AS(ScalerParams::fit({}, 1, ScalerKind::minmax), EmptyDataset);
}

TEST_CASE("depth-1 decision tree separates the two-cluster toy set") {
  const Dataset d = separable_toy();
  const TrainedModel model =
      train_classifier(d, Algorithm::decision_tree, {{"max_depth", "1"}},
                       ScalerKind::standardization, 42);
  CHECK(evaluate(model, d).accuracy_percent == 100.0);
}

TEST_CASE("single-class data trains a flagged constant predictor") {
  Dataset d;
  for (int i = 0; i < 6; ++i) add(d, i, i, OrderingLabel::ND);
  for (Algorithm a : {Algorithm::decision_tree, Algorithm::random_forest,
                      Algorithm::knn, Algorithm::naive_bayes}) {
    const TrainedModel model =
        train_classifier(d, a, {}, ScalerKind::standardization, 7);
    REQUIRE(!model.warnings.empty());
    CHECK(model.predict_row(feat(-1e3, 4.0).to_row()) == OrderingLabel::ND);
    CHECK(model.predict_row(feat(1e3, -4.0).to_row()) == OrderingLabel::ND);
  }
}

TEST_CASE("random forest with the reference hyperparameters trains cleanly") {
  const Dataset d = noise_toy(1, 60);
  const Hyperparams hp = {{"criterion", "gini"},
                          {"n_estimators", "100"},
                          {"min_samples_leaf", "1"},
                          {"min_samples_split", "5"}};
  const TrainedModel model =
      train_classifier(d, Algorithm::random_forest, hp, ScalerKind::standardization, 3);
  CHECK(std::get<RandomForest>(model.classifier).trees.size() == 100);
}

TEST_CASE("forest with one tree and no bootstrap equals the decision tree") {
  const Dataset d = noise_toy(2, 50);
  // the single tree must see the plain tree's stopping rules
  const Hyperparams forest_hp = {{"n_estimators", "1"},
                                 {"bootstrap", "false"},
                                 {"max_features", "all"},
                                 {"min_samples_split", "2"}};
  const TrainedModel forest = train_classifier(d, Algorithm::random_forest, forest_hp,
                                               ScalerKind::standardization, 11);
  const TrainedModel tree = train_classifier(d, Algorithm::decision_tree, {},
                                             ScalerKind::standardization, 11);
  SplitMix64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::array<double, kFeatureCount> row;
    for (double& v : row) v = rng.next_double() * 3.0;
    CHECK(forest.predict_row(row) == tree.predict_row(row));
  }
}

TEST_CASE("training set points predict their own labels on the separable set") {
  const Dataset d = separable_toy();
  for (Algorithm a : {Algorithm::decision_tree, Algorithm::random_forest,
                      Algorithm::knn, Algorithm::naive_bayes}) {
    const TrainedModel model = train_classifier(
        d, a, a == Algorithm::knn ? Hyperparams{{"n_neighbors", "1"}} : Hyperparams{},
        ScalerKind::standardization, 42);
    CHECK(evaluate(model, d).accuracy_percent == 100.0);
  }
}

TEST_CASE("prediction reports a positive wall time") {
  const Dataset d = separable_toy();
  const TrainedModel model =
      train_classifier(d, Algorithm::random_forest, {}, ScalerKind::minmax, 1);
  const PredictResult r = predict(model, feat(50.0, 0.0));
  CHECK(r.seconds > 0.0);
  CHECK(r.seconds < 10.0);
}

TEST_CASE("tree predictions are identical under either scaler") {
  const Dataset d = separable_toy();
  const TrainedModel standardized = train_classifier(
      d, Algorithm::decision_tree, {}, ScalerKind::standardization, 9);
  const TrainedModel minmaxed =
      train_classifier(d, Algorithm::decision_tree, {}, ScalerKind::minmax, 9);
  for (std::size_t i = 0; i < d.rows(); ++i)
    CHECK(standardized.predict_row(d.row(i)) == minmaxed.predict_row(d.row(i)));
}

TEST_CASE("knn rejects k above the number of rows, and revalidates on load") {
  const Dataset d = separable_toy(2);  // 4 rows
  CHECK_THROWS_AS(train_classifier(d, Algorithm::knn, {{"n_neighbors", "9"}},
                                   ScalerKind::standardization, 1),
                  ConfigError);
}

TEST_CASE("unknown hyperparameters are a ConfigError") {
  const Dataset d = separable_toy();
  CHECK_THROWS_AS(train_classifier(d, Algorithm::decision_tree, {{"depth", "3"}},
                                   ScalerKind::standardization, 1),
                  ConfigError);
  CHECK_THROWS_AS(train_classifier(d, Algorithm::decision_tree, {{"max_depth", "x"}},
                                   ScalerKind::standardization, 1),
                  ConfigError);
}

TEST_CASE("kfold: perfectly separable data scores 100%") {
  const Dataset d = separable_toy(10);
  const CvResult cv =
      kfold_cv(d, Algorithm::decision_tree, {}, ScalerKind::standardization, 5, 42);
  CHECK(cv.mean_accuracy == 100.0);
  CHECK(cv.fold_accuracies.size() == 5);
}

TEST_CASE("kfold: pure-noise labels concentrate near the 25% chance level") {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = noise_toy(100 + seed, 200);
    total += kfold_cv(d, Algorithm::decision_tree, {}, ScalerKind::standardization,
                      5, seed)
                 .mean_accuracy;
  }
  const double mean = total / 20.0;
  CHECK(mean >= 15.0);
  CHECK(mean <= 35.0);
}

TEST_CASE("kfold: k equal to the row count degenerates to leave-one-out") {
  const Dataset d = separable_toy(3);  // 6 rows
  const CvResult cv = kfold_cv(d, Algorithm::knn, {{"n_neighbors", "1"}},
                               ScalerKind::standardization, 6, 1);
  CHECK(cv.fold_accuracies.size() == 6);
  for (double a : cv.fold_accuracies) CHECK((a == 0.0 || a == 100.0));
}

TEST_CASE("kfold falls back to unstratified folds when a class is tiny") {
  Dataset d = separable_toy(6);
  add(d, 50.0, 0.0, OrderingLabel::ND);  // one lonely ND row
  const CvResult cv =
      kfold_cv(d, Algorithm::decision_tree, {}, ScalerKind::standardization, 5, 3);
  REQUIRE(!cv.warnings.empty());
  CHECK(cv.warnings.front().find("unstratified") != std::string::npos);
}

TEST_CASE("kfold validates its arguments") {
  const Dataset d = separable_toy(3);
  CHECK_THROWS_AS(kfold_cv(d, Algorithm::knn, {}, ScalerKind::minmax, 1, 1),
                  ConfigError);
  CHECK_THROWS_AS(kfold_cv(d, Algorithm::knn, {}, ScalerKind::minmax, 7, 1),
                  ConfigError);
}

TEST_CASE("grid search enumerates the full cartesian product in order") {
  const Dataset d = separable_toy(10);
  const HyperparamGrid grid = {{"max_depth", {"1", "2"}},
                               {"min_samples_leaf", {"1", "2"}}};
  const GridSearchResult gs = grid_search(d, Algorithm::decision_tree, grid,
                                          ScalerKind::standardization, 5, 42);
  REQUIRE(gs.table.size() == 4);
  // (a1,b1), (a1,b2), (a2,b1), (a2,b2)
  CHECK(gs.table[0].first.at("max_depth") == "1");
  CHECK(gs.table[0].first.at("min_samples_leaf") == "1");
  CHECK(gs.table[1].first.at("max_depth") == "1");
  CHECK(gs.table[1].first.at("min_samples_leaf") == "2");
  CHECK(gs.table[2].first.at("max_depth") == "2");
  CHECK(gs.table[2].first.at("min_samples_leaf") == "1");
  CHECK(gs.table[3].first.at("max_depth") == "2");
  CHECK(gs.table[3].first.at("min_samples_leaf") == "2");
}

TEST_CASE("grid search returns the argmax of its own table") {
  const Dataset d = noise_toy(7, 80);
  const HyperparamGrid grid = {{"max_depth", {"1", "3", "0"}},
                               {"min_samples_split", {"2", "8"}}};
  const GridSearchResult gs = grid_search(d, Algorithm::decision_tree, grid,
                                          ScalerKind::standardization, 4, 11);
  for (const auto& [combo, score] : gs.table) CHECK(gs.best_score >= score);
  bool best_in_table = false;
  for (const auto& [combo, score] : gs.table)
    if (combo == gs.best && score == gs.best_score) best_in_table = true;
  CHECK(best_in_table);
}

TEST_CASE("grid search: singleton grid returns that combo") {
  const Dataset d = separable_toy(5);
  const GridSearchResult gs =
      grid_search(d, Algorithm::knn, {{"n_neighbors", {"1"}}},
                  ScalerKind::standardization, 5, 42);
  REQUIRE(gs.table.size() == 1);
  CHECK(gs.best.at("n_neighbors") == "1");
  CHECK(gs.best_score == gs.table[0].second);
}

TEST_CASE("grid search rejects empty grids and empty candidate lists") {
  const Dataset d = separable_toy(5);
  CHECK_THROWS_AS(
      grid_search(d, Algorithm::knn, {}, ScalerKind::standardization, 5, 1),
      ConfigError);
  CHECK_THROWS_AS(grid_search(d, Algorithm::knn, {{"n_neighbors", {}}},
                              ScalerKind::standardization, 5, 1),
                  ConfigError);
}

TEST_CASE("train_test_split: balanced 100 rows at 0.8 give an exact 80/20") {
  Dataset d;
  for (int i = 0; i < 100; ++i) add(d, i, -i, kAllLabels[i % 4]);
  const SplitResult s = train_test_split(d, 0.8, 42);
  CHECK(s.train.rows() == 80);
  CHECK(s.test.rows() == 20);
  std::array<int, 4> train_counts{}, test_counts{};
  for (OrderingLabel l : s.train.y) train_counts[static_cast<int>(l)]++;
  for (OrderingLabel l : s.test.y) test_counts[static_cast<int>(l)]++;
  for (int c = 0; c < 4; ++c) {
    CHECK(train_counts[c] == 20);
    CHECK(test_counts[c] == 5);
  }
}

TEST_CASE("train_test_split is deterministic and a true partition") {
  SplitMix64 rng(61);
  for (int t = 0; t < 50; ++t) {
    const int rows = 8 + static_cast<int>(rng.next_below(60));
    Dataset d;
    for (int i = 0; i < rows; ++i)
      add(d, rng.next_double(), rng.next_double(),
          kAllLabels[rng.next_below(4)]);
    const std::uint64_t seed = rng.next();
    const SplitResult a = train_test_split(d, 0.75, seed);
    const SplitResult b = train_test_split(d, 0.75, seed);
    CHECK(a.train.names == b.train.names);
    CHECK(a.test.names == b.test.names);

    std::vector<std::string> merged = a.train.names;
    merged.insert(merged.end(), a.test.names.begin(), a.test.names.end());
    std::sort(merged.begin(), merged.end());
    std::vector<std::string> all = d.names;
    std::sort(all.begin(), all.end());
    CHECK(merged == all);  // disjoint union equals the input
  }
  Dataset d = separable_toy(4);
  CHECK_THROWS_AS(train_test_split(d, 0.0, 1), ConfigError);
  CHECK_THROWS_AS(train_test_split(d, 1.0, 1), ConfigError);
}

TEST_CASE("evaluate implements the accuracy formula exactly") {
  // hand-built 15-prediction set with 13 correct
  Dataset train;
  for (int i = 0; i < 4; ++i) add(train, i * 10, 0, kAllLabels[i]);
  const TrainedModel model = train_classifier(train, Algorithm::knn,
                                              {{"n_neighbors", "1"}},
                                              ScalerKind::standardization, 1);
  Dataset test;
  for (int i = 0; i < 13; ++i) add(test, (i % 4) * 10, 0, kAllLabels[i % 4]);
  // two rows whose nearest neighbour disagrees with the stated label
  add(test, 0, 0, OrderingLabel::AMD);
  add(test, 10, 0, OrderingLabel::ND);
  const EvalReport r = evaluate(model, test);
  CHECK(r.p_all == 15);
  CHECK(r.p_true == 13);
  CHECK(r.accuracy_percent == doctest::Approx(86.67).epsilon(0.0002));
  // Eq. 4 consistency, exact in rational arithmetic
  CHECK(r.accuracy_percent * static_cast<double>(r.p_all) ==
        100.0 * static_cast<double>(r.p_true));
  std::int64_t confusion_total = 0;
  for (const auto& row : r.confusion)
    for (std::int64_t c : row) confusion_total += c;
  CHECK(confusion_total == r.p_all);
}

TEST_CASE("evaluate: constant predictor scores zero without its class") {
  Dataset train;
  for (int i = 0; i < 3; ++i) add(train, i, 0, OrderingLabel::RCM);
  const TrainedModel model =
      train_classifier(train, Algorithm::decision_tree, {}, ScalerKind::minmax, 1);
  Dataset test;
  for (int i = 0; i < 5; ++i) add(test, i, 0, OrderingLabel::AMD);
  CHECK(evaluate(model, test).accuracy_percent == 0.0);
}

TEST_CASE("model save/load round trip preserves predictions bit for bit") {
  const Dataset d = noise_toy(9, 40);
  SplitMix64 rng(10);
  for (Algorithm a : {Algorithm::decision_tree, Algorithm::random_forest,
                      Algorithm::knn, Algorithm::naive_bayes}) {
    const TrainedModel model =
        train_classifier(d, a, {}, ScalerKind::standardization, 77);
    std::stringstream buf;
    save_model(model, buf);
    const TrainedModel loaded = load_model(buf);
    for (int t = 0; t < 100; ++t) {
      std::array<double, kFeatureCount> row;
      for (double& v : row) v = rng.next_double() * 10 - 5;
      REQUIRE(model.predict_row(row) == loaded.predict_row(row));
    }
    CHECK(model_bytes(loaded) == model_bytes(model));
  }
}

TEST_CASE("model files reject truncation and future versions") {
  const TrainedModel model = train_classifier(separable_toy(), Algorithm::knn,
                                              {}, ScalerKind::minmax, 5);
  const std::string good = model_bytes(model);

  std::istringstream truncated(good.substr(0, good.size() / 2));
  CHECK_THROWS_AS(load_model(truncated), ParseError);

  std::string future = good;
  const std::string needle = "\"format_version\": 1";
  future.replace(future.find(needle), needle.size(), "\"format_version\": 2");
  std::istringstream future_in(future);
  try {
    load_model(future_in);
    FAIL("expected UnsupportedVersion");
  } catch (const UnsupportedVersion& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);  // names both versions
    CHECK(msg.find("1") != std::string::npos);
  }
}

TEST_CASE("identical seeds give identical models at any parallelism level") {
  const Dataset d = noise_toy(12, 80);
  const Hyperparams hp = {{"n_estimators", "16"}};
  const TrainedModel serial = train_classifier(d, Algorithm::random_forest, hp,
                                               ScalerKind::standardization, 5, 1);
  const TrainedModel threaded = train_classifier(d, Algorithm::random_forest, hp,
                                                 ScalerKind::standardization, 5, 4);
  CHECK(model_bytes(serial) == model_bytes(threaded));

  const TrainedModel again = train_classifier(d, Algorithm::random_forest, hp,
                                              ScalerKind::standardization, 5, 2);
  CHECK(model_bytes(serial) == model_bytes(again));
}

TEST_CASE("trained model bytes do not depend on the kernel ISA") {
  namespace k = reorder::kernels;
  if (!k::isa_supported(k::Isa::avx2)) return;
  const Dataset d = noise_toy(33, 60);
  const k::Isa original = k::active_isa();
  std::map<Algorithm, std::string> scalar_bytes;
  for (k::Isa isa : {k::Isa::scalar, k::Isa::avx2}) {
    k::force_isa(isa);
    for (Algorithm a : {Algorithm::decision_tree, Algorithm::random_forest,
                        Algorithm::knn, Algorithm::naive_bayes}) {
      const std::string bytes = model_bytes(
          train_classifier(d, a, {}, ScalerKind::standardization, 21));
      if (isa == k::Isa::scalar)
        scalar_bytes[a] = bytes;
      else
        CHECK(scalar_bytes.at(a) == bytes);
    }
  }
  k::force_isa(original);
}

TEST_CASE("schema violations raise SchemaError") {
  const TrainedModel model = train_classifier(separable_toy(), Algorithm::knn,
                                              {}, ScalerKind::minmax, 5);
  const std::vector<double> short_row(3, 0.0);
  CHECK_THROWS_AS(model.predict_row(short_row), SchemaError);

  TrainedModel tampered = model;
  tampered.feature_schema[0] = "not_a_feature";
  CHECK_THROWS_AS(evaluate(tampered, separable_toy()), SchemaError);
}

TEST_CASE("dataset csv round trip, including unlabeled rows") {
  Dataset d;
  d.add_row("plain", feat(1.5, 2.25));
  d.add_row("labeled", feat(-3.0, 0.125), OrderingLabel::HYBRID);
  std::ostringstream out;
  write_dataset_csv(d, out);
  std::istringstream in(out.str());
  const Dataset back = read_dataset_csv(in, false);
  REQUIRE(back.rows() == 2);
  CHECK(back.names == d.names);
  CHECK(back.X == d.X);
  CHECK(back.has_label == d.has_label);
  CHECK(back.y[1] == OrderingLabel::HYBRID);

  std::istringstream in2(out.str());
  CHECK_THROWS_AS(read_dataset_csv(in2, true), ParseError);  // unlabeled row

  std::istringstream bad("matrix,wrong,header\n");
  CHECK_THROWS_AS(read_dataset_csv(bad, false), ParseError);
}
