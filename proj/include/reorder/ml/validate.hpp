#pragma once

#include "reorder/ml/model.hpp"

namespace reorder::ml {

/// Accuracy per Acc = P_true / P_all * 100% plus the full confusion matrix,
/// confusion[true class][predicted class].
struct EvalReport {
  double accuracy_percent = 0.0;
  std::int64_t p_true = 0;
  std::int64_t p_all = 0;
  std::array<std::array<std::int64_t, kNumClasses>, kNumClasses> confusion{};
};

EvalReport evaluate(const TrainedModel& model, const Dataset& test);

struct SplitResult {
  Dataset train;
  Dataset test;
  std::vector<std::string> warnings;
};

/// Stratified, seeded partition; ratio is the training fraction.
SplitResult train_test_split(const Dataset& d, double ratio, std::uint64_t seed);

struct CvResult {
  double mean_accuracy = 0.0;
  std::vector<double> fold_accuracies;
  std::vector<std::string> warnings;
};

/// Stratified k-fold cross-validation; folds are fixed by the seed alone, so
/// every grid-search cell sees the same folds.
CvResult kfold_cv(const Dataset& d, Algorithm algorithm, const Hyperparams& hp,
                  ScalerKind scaler_kind, int k, std::uint64_t seed,
                  int n_threads = 1);

using HyperparamGrid = std::map<std::string, std::vector<std::string>>;

struct GridSearchResult {
  Hyperparams best;
  double best_score = 0.0;
  /// Every evaluated combination with its mean CV accuracy, in enumeration
  /// order (sorted keys, candidate list order).
  std::vector<std::pair<Hyperparams, double>> table;
  std::vector<std::string> warnings;
};

GridSearchResult grid_search(const Dataset& d, Algorithm algorithm,
                             const HyperparamGrid& grid, ScalerKind scaler_kind,
                             int k, std::uint64_t seed, int n_threads = 1);

}  // namespace reorder::ml
