#include "reorder/ml/model.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>

namespace reorder::ml {

namespace {

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError("hyperparameter " + key + "='" + value + "' is not an integer");
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double out = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size())
    throw ConfigError("hyperparameter " + key + "='" + value + "' is not a number");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("hyperparameter " + key + "='" + value + "' is not a boolean");
}

Hyperparams defaults_for(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::decision_tree:
      return {{"criterion", "gini"},
              {"max_depth", "0"},
              {"max_features", "all"},
              {"min_samples_leaf", "1"},
              {"min_samples_split", "2"}};
    case Algorithm::random_forest:
      return {{"bootstrap", "true"},
              {"criterion", "gini"},
              {"max_depth", "0"},
              {"max_features", "sqrt"},
              {"min_samples_leaf", "1"},
              {"min_samples_split", "5"},
              {"n_estimators", "100"}};
    case Algorithm::knn:
      return {{"n_neighbors", "5"}};
    case Algorithm::naive_bayes:
      return {{"var_smoothing", "1e-9"}};
  }
  throw ConfigError("invalid algorithm");
}

TreeParams tree_params_from(const Hyperparams& hp, std::size_t n_cols) {
  TreeParams t;
  t.max_depth = parse_int("max_depth", hp.at("max_depth"));
  t.min_samples_split = parse_int("min_samples_split", hp.at("min_samples_split"));
  t.min_samples_leaf = parse_int("min_samples_leaf", hp.at("min_samples_leaf"));
  if (t.max_depth < 0 || t.min_samples_split < 2 || t.min_samples_leaf < 1)
    throw ConfigError("tree hyperparameters out of range");
  const std::string& mf = hp.at("max_features");
  if (mf == "all") {
    t.max_features = 0;
  } else if (mf == "sqrt") {
    t.max_features = static_cast<int>(
        std::ceil(std::sqrt(static_cast<double>(n_cols))));
  } else {
    t.max_features = parse_int("max_features", mf);
    if (t.max_features < 1 || static_cast<std::size_t>(t.max_features) > n_cols)
      throw ConfigError("max_features must be in [1, " + std::to_string(n_cols) + "]");
  }
  if (hp.at("criterion") != "gini")
    throw ConfigError("only the gini criterion is implemented");
  return t;
}

}  // namespace

Hyperparams resolve_hyperparams(Algorithm algorithm, const Hyperparams& overrides) {
  Hyperparams hp = defaults_for(algorithm);
  for (const auto& [key, value] : overrides) {
    if (!hp.contains(key))
      throw ConfigError("unknown hyperparameter '" + key + "' for " +
                        to_string(algorithm));
    hp[key] = value;
  }
  return hp;
}

TrainedModel::TrainedModel() : feature_schema() {
  const auto& names = FeatureVector::names();
  std::copy(names.begin(), names.end(), feature_schema.begin());
}

TrainedModel train_classifier(const Dataset& d, Algorithm algorithm,
                              const Hyperparams& hp, ScalerKind scaler_kind,
                              std::uint64_t seed, int n_threads) {
  if (d.rows() == 0) throw EmptyDataset("cannot train on an empty dataset");
  if (!d.fully_labeled()) throw SchemaError("training dataset has unlabeled rows");
  d.check();

  TrainedModel model;
  model.algorithm = algorithm;
  model.hyperparams = resolve_hyperparams(algorithm, hp);
  model.seed = seed;

  std::size_t distinct = 0;
  {
    std::array<std::int64_t, kNumClasses> counts{};
    for (OrderingLabel l : d.y) counts[static_cast<std::size_t>(l)]++;
    for (std::int64_t c : counts) distinct += c > 0;
  }
  if (distinct < 2)
    model.warnings.push_back(
        "training data has a single class; the model is a constant predictor");

  model.scaler = ScalerParams::fit(d.X, kFeatureCount, scaler_kind);
  std::vector<double> scaled = d.X;
  model.scaler.apply(scaled, kFeatureCount);

  switch (algorithm) {
    case Algorithm::decision_tree: {
      const TreeParams tp = tree_params_from(model.hyperparams, kFeatureCount);
      std::vector<std::size_t> all(d.rows());
      std::iota(all.begin(), all.end(), 0);
      DecisionTree tree;
      SplitMix64 rng(derive_seed(seed, 0));
      tree.fit(scaled, kFeatureCount, d.y, all, tp,
               tp.max_features > 0 ? &rng : nullptr);
      model.classifier = std::move(tree);
      break;
    }
    case Algorithm::random_forest: {
      RandomForest::Params fp;
      fp.tree = tree_params_from(model.hyperparams, kFeatureCount);
      fp.n_estimators = parse_int("n_estimators", model.hyperparams.at("n_estimators"));
      if (fp.n_estimators < 1) throw ConfigError("n_estimators must be >= 1");
      fp.bootstrap = parse_bool("bootstrap", model.hyperparams.at("bootstrap"));
      RandomForest forest;
      forest.fit(scaled, kFeatureCount, d.y, fp, seed, n_threads);
      model.classifier = std::move(forest);
      break;
    }
    case Algorithm::knn: {
      Knn knn;
      knn.fit(scaled, kFeatureCount, d.y,
              parse_int("n_neighbors", model.hyperparams.at("n_neighbors")));
      model.classifier = std::move(knn);
      break;
    }
    case Algorithm::naive_bayes: {
      GaussianNB nb;
      nb.fit(scaled, kFeatureCount, d.y,
             parse_double("var_smoothing", model.hyperparams.at("var_smoothing")));
      model.classifier = std::move(nb);
      break;
    }
  }
  return model;
}

OrderingLabel TrainedModel::predict_row(std::span<const double> raw_features) const {
  if (raw_features.size() != kFeatureCount)
    throw SchemaError("expected " + std::to_string(kFeatureCount) +
                      " features, got " + std::to_string(raw_features.size()));
  std::array<double, kFeatureCount> scaled;
  std::copy(raw_features.begin(), raw_features.end(), scaled.begin());
  scaler.apply(scaled, kFeatureCount);
  const std::size_t cls = std::visit(
      [&](const auto& c) { return c.predict_class(scaled); }, classifier);
  return label_schema[cls];
}

PredictResult predict(const TrainedModel& model, const FeatureVector& features) {
  const auto start = std::chrono::steady_clock::now();
  const OrderingLabel label = model.predict_row(features.to_row());
  const auto stop = std::chrono::steady_clock::now();
  double seconds = std::chrono::duration<double>(stop - start).count();
  if (seconds <= 0) seconds = 1e-9;  // clock granularity floor
  return {label, seconds};
}

std::vector<PredictResult> predict_batch(const TrainedModel& model,
                                         std::span<const FeatureVector> features) {
  std::vector<PredictResult> out;
  out.reserve(features.size());
  for (const FeatureVector& f : features) out.push_back(predict(model, f));
  return out;
}

}  // namespace reorder::ml
