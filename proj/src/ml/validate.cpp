#include "reorder/ml/validate.hpp"

#include <algorithm>
#include <cmath>

namespace reorder::ml {

namespace {

std::array<std::vector<std::size_t>, kNumClasses> indices_by_class(const Dataset& d) {
  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < d.rows(); ++i)
    by_class[static_cast<std::size_t>(d.y[i])].push_back(i);
  return by_class;
}

}  // namespace

EvalReport evaluate(const TrainedModel& model, const Dataset& test) {
  if (test.rows() == 0) throw EmptyDataset("cannot evaluate on an empty dataset");
  if (!test.fully_labeled()) throw SchemaError("test dataset has unlabeled rows");
  const auto& names = FeatureVector::names();
  if (!std::equal(names.begin(), names.end(), model.feature_schema.begin()))
    throw SchemaError("model feature schema does not match this build's features");

  EvalReport r;
  r.p_all = static_cast<std::int64_t>(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) {
    const OrderingLabel predicted = model.predict_row(test.row(i));
    const std::size_t t = static_cast<std::size_t>(test.y[i]);
    const std::size_t p = static_cast<std::size_t>(predicted);
    r.confusion[t][p]++;
    if (t == p) r.p_true++;
  }
  r.accuracy_percent =
      100.0 * static_cast<double>(r.p_true) / static_cast<double>(r.p_all);
  return r;
}

SplitResult train_test_split(const Dataset& d, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ConfigError("split ratio must be strictly between 0 and 1");
  if (d.rows() == 0) throw EmptyDataset("cannot split an empty dataset");
  if (!d.fully_labeled()) throw SchemaError("dataset has unlabeled rows");

  SplitResult result;
  SplitMix64 rng(seed);
  std::vector<std::size_t> train_idx, test_idx;

  std::size_t n_classes = 0;
  auto by_class = indices_by_class(d);
  for (const auto& cls : by_class) n_classes += !cls.empty();

  if (d.rows() < n_classes) {  // degenerate; cannot stratify
    result.warnings.push_back("too few rows to stratify; splitting unstratified");
    std::vector<std::size_t> all(d.rows());
    for (std::size_t i = 0; i < d.rows(); ++i) all[i] = i;
    rng.shuffle(all);
    const std::size_t n_train =
        static_cast<std::size_t>(std::llround(ratio * static_cast<double>(d.rows())));
    train_idx.assign(all.begin(), all.begin() + n_train);
    test_idx.assign(all.begin() + n_train, all.end());
  } else {
    for (auto& cls : by_class) {
      if (cls.empty()) continue;
      rng.shuffle(cls);
      const std::size_t n_train = static_cast<std::size_t>(
          std::llround(ratio * static_cast<double>(cls.size())));
      train_idx.insert(train_idx.end(), cls.begin(), cls.begin() + n_train);
      test_idx.insert(test_idx.end(), cls.begin() + n_train, cls.end());
    }
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  result.train = d.subset(train_idx);
  result.test = d.subset(test_idx);
  return result;
}

CvResult kfold_cv(const Dataset& d, Algorithm algorithm, const Hyperparams& hp,
                  ScalerKind scaler_kind, int k, std::uint64_t seed, int n_threads) {
  if (k < 2) throw ConfigError("k must be >= 2");
  if (d.rows() < static_cast<std::size_t>(k))
    throw ConfigError("k=" + std::to_string(k) + " exceeds " +
                      std::to_string(d.rows()) + " rows");
  if (!d.fully_labeled()) throw SchemaError("dataset has unlabeled rows");

  CvResult result;
  SplitMix64 rng(seed);
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));

  auto by_class = indices_by_class(d);
  bool stratified = true;
  for (const auto& cls : by_class) {
    if (!cls.empty() && cls.size() < static_cast<std::size_t>(k)) {
      stratified = false;
      result.warnings.push_back(
          "a class has fewer members than k; using unstratified folds");
      break;
    }
  }

  if (stratified) {
    for (auto& cls : by_class) {
      if (cls.empty()) continue;
      rng.shuffle(cls);
      for (std::size_t i = 0; i < cls.size(); ++i) folds[i % k].push_back(cls[i]);
    }
  } else {
    std::vector<std::size_t> all(d.rows());
    for (std::size_t i = 0; i < d.rows(); ++i) all[i] = i;
    rng.shuffle(all);
    for (std::size_t i = 0; i < all.size(); ++i) folds[i % k].push_back(all[i]);
  }

  for (int f = 0; f < k; ++f) {
    std::vector<std::size_t> train_idx;
    for (int other = 0; other < k; ++other)
      if (other != f)
        train_idx.insert(train_idx.end(), folds[other].begin(), folds[other].end());
    std::sort(train_idx.begin(), train_idx.end());
    std::vector<std::size_t> test_idx = folds[f];
    std::sort(test_idx.begin(), test_idx.end());

    const Dataset train = d.subset(train_idx);
    const Dataset test = d.subset(test_idx);
    const TrainedModel model =
        train_classifier(train, algorithm, hp, scaler_kind,
                         derive_seed(seed, 1000 + static_cast<std::uint64_t>(f)),
                         n_threads);
    for (const std::string& w : model.warnings) result.warnings.push_back(w);
    result.fold_accuracies.push_back(evaluate(model, test).accuracy_percent);
  }

  double sum = 0.0;
  for (double a : result.fold_accuracies) sum += a;
  result.mean_accuracy = sum / static_cast<double>(k);
  return result;
}

GridSearchResult grid_search(const Dataset& d, Algorithm algorithm,
                             const HyperparamGrid& grid, ScalerKind scaler_kind,
                             int k, std::uint64_t seed, int n_threads) {
  if (grid.empty()) throw ConfigError("hyperparameter grid is empty");
  for (const auto& [key, candidates] : grid)
    if (candidates.empty())
      throw ConfigError("hyperparameter '" + key + "' has an empty candidate list");

  // Cartesian product in sorted-key order, candidate lists in given order.
  std::vector<Hyperparams> combos{{}};
  for (const auto& [key, candidates] : grid) {
    std::vector<Hyperparams> expanded;
    expanded.reserve(combos.size() * candidates.size());
    for (const Hyperparams& base : combos) {
      for (const std::string& value : candidates) {
        Hyperparams next = base;
        next[key] = value;
        expanded.push_back(std::move(next));
      }
    }
    combos = std::move(expanded);
  }

  GridSearchResult result;
  bool first = true;
  for (const Hyperparams& combo : combos) {
    const CvResult cv = kfold_cv(d, algorithm, combo, scaler_kind, k, seed, n_threads);
    for (const std::string& w : cv.warnings)
      if (std::find(result.warnings.begin(), result.warnings.end(), w) ==
          result.warnings.end())
        result.warnings.push_back(w);
    result.table.emplace_back(combo, cv.mean_accuracy);
    if (first || cv.mean_accuracy > result.best_score) {  // ties keep the first combo
      result.best = combo;
      result.best_score = cv.mean_accuracy;
      first = false;
    }
  }
  return result;
}

}  // namespace reorder::ml
