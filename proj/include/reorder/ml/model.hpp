#pragma once

#include <iosfwd>
#include <variant>

#include "reorder/features.hpp"
#include "reorder/ml/classifiers.hpp"
#include "reorder/ml/dataset.hpp"
#include "reorder/ml/scaler.hpp"

namespace reorder::ml {

constexpr int kModelFormatVersion = 1;

/// Everything needed to reproduce predictions: scaler, fitted classifier,
/// schemas, and the training seed.
struct TrainedModel {
  int format_version = kModelFormatVersion;
  ScalerParams scaler;
  Algorithm algorithm = Algorithm::random_forest;
  Hyperparams hyperparams;  // resolved values the classifier was fit with
  std::variant<DecisionTree, RandomForest, Knn, GaussianNB> classifier;
  std::array<OrderingLabel, kNumClasses> label_schema = kAllLabels;
  std::array<std::string, kFeatureCount> feature_schema;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  TrainedModel();

  /// Scales the raw feature row and classifies it.
  OrderingLabel predict_row(std::span<const double> raw_features) const;
};

struct PredictResult {
  OrderingLabel label;
  double seconds;  // wall time of scaling + classification
};

/// Fits the scaler on d, transforms, and fits the classifier. A single-class
/// dataset yields a constant predictor with a warning recorded on the model.
TrainedModel train_classifier(const Dataset& d, Algorithm algorithm,
                              const Hyperparams& hp, ScalerKind scaler_kind,
                              std::uint64_t seed, int n_threads = 1);

PredictResult predict(const TrainedModel& model, const FeatureVector& features);
std::vector<PredictResult> predict_batch(const TrainedModel& model,
                                         std::span<const FeatureVector> features);

/// Versioned JSON on disk; round-trips to bit-identical predictions.
void save_model(const TrainedModel& model, std::ostream& out);
void save_model_file(const TrainedModel& model, const std::string& path);
TrainedModel load_model(std::istream& in);
TrainedModel load_model_file(const std::string& path);

/// Resolved defaults for an algorithm, merged with overrides; unknown keys
/// or unparsable values throw ConfigError.
Hyperparams resolve_hyperparams(Algorithm algorithm, const Hyperparams& overrides);

}  // namespace reorder::ml
