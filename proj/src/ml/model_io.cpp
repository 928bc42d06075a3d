#include <fstream>
#include <sstream>

#include "json.hpp"
#include "reorder/ml/model.hpp"

namespace reorder::ml {

namespace {

using nlohmann::json;

json scaler_to_json(const ScalerParams& s) {
  return {{"kind", to_string(s.kind)},
          {"shift", s.shift},
          {"scale", s.scale},
          {"constant", s.constant}};
}

ScalerParams scaler_from_json(const json& j) {
  ScalerParams s;
  s.kind = scaler_from_string(j.at("kind").get<std::string>());
  s.shift = j.at("shift").get<std::vector<double>>();
  s.scale = j.at("scale").get<std::vector<double>>();
  s.constant = j.at("constant").get<std::vector<char>>();
  if (s.scale.size() != s.shift.size() || s.constant.size() != s.shift.size())
    throw ParseError("scaler arrays have inconsistent lengths");
  return s;
}

json tree_to_json(const DecisionTree& t) {
  json nodes = json::array();
  for (const DecisionTree::Node& n : t.nodes) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right,
                     n.counts[0], n.counts[1], n.counts[2], n.counts[3]});
  }
  return {{"nodes", std::move(nodes)}};
}

DecisionTree tree_from_json(const json& j) {
  DecisionTree t;
  for (const json& row : j.at("nodes")) {
    if (!row.is_array() || row.size() != 8) throw ParseError("bad tree node");
    DecisionTree::Node n;
    n.feature = row[0].get<std::int32_t>();
    n.threshold = row[1].get<double>();
    n.left = row[2].get<std::int32_t>();
    n.right = row[3].get<std::int32_t>();
    for (std::size_t c = 0; c < kNumClasses; ++c)
      n.counts[c] = row[4 + c].get<std::int64_t>();
    t.nodes.push_back(n);
  }
  if (t.nodes.empty()) throw ParseError("tree has no nodes");
  return t;
}

json classifier_to_json(const TrainedModel& m) {
  switch (m.algorithm) {
    case Algorithm::decision_tree:
      return tree_to_json(std::get<DecisionTree>(m.classifier));
    case Algorithm::random_forest: {
      json trees = json::array();
      for (const DecisionTree& t : std::get<RandomForest>(m.classifier).trees)
        trees.push_back(tree_to_json(t));
      return {{"trees", std::move(trees)}};
    }
    case Algorithm::knn: {
      const Knn& k = std::get<Knn>(m.classifier);
      return {{"k", k.k},
              {"n_cols", k.n_cols},
              {"train_X", k.train_X},
              {"train_y", k.train_y}};
    }
    case Algorithm::naive_bayes: {
      const GaussianNB& nb = std::get<GaussianNB>(m.classifier);
      json prior = json::array();
      json present = json::array();
      for (std::size_t c = 0; c < kNumClasses; ++c) {
        // -inf is not representable in JSON; absent classes carry null
        prior.push_back(nb.present[c] ? json(nb.log_prior[c]) : json(nullptr));
        present.push_back(static_cast<int>(nb.present[c]));
      }
      return {{"var_smoothing", nb.var_smoothing},
              {"log_prior", std::move(prior)},
              {"present", std::move(present)},
              {"mean", nb.mean},
              {"var", nb.var},
              {"n_cols", nb.n_cols}};
    }
  }
  throw ConfigError("invalid algorithm");
}

void classifier_from_json(const json& j, TrainedModel& m) {
  switch (m.algorithm) {
    case Algorithm::decision_tree:
      m.classifier = tree_from_json(j);
      return;
    case Algorithm::random_forest: {
      RandomForest f;
      for (const json& t : j.at("trees")) f.trees.push_back(tree_from_json(t));
      if (f.trees.empty()) throw ParseError("forest has no trees");
      m.classifier = std::move(f);
      return;
    }
    case Algorithm::knn: {
      Knn k;
      k.k = j.at("k").get<int>();
      k.n_cols = j.at("n_cols").get<std::size_t>();
      k.train_X = j.at("train_X").get<std::vector<double>>();
      k.train_y = j.at("train_y").get<std::vector<std::uint8_t>>();
      if (k.n_cols == 0 || k.train_X.size() != k.train_y.size() * k.n_cols)
        throw ParseError("knn arrays have inconsistent lengths");
      m.classifier = std::move(k);
      return;
    }
    case Algorithm::naive_bayes: {
      GaussianNB nb;
      nb.var_smoothing = j.at("var_smoothing").get<double>();
      nb.n_cols = j.at("n_cols").get<std::size_t>();
      nb.mean = j.at("mean").get<std::vector<double>>();
      nb.var = j.at("var").get<std::vector<double>>();
      const json& prior = j.at("log_prior");
      const json& present = j.at("present");
      if (prior.size() != kNumClasses || present.size() != kNumClasses)
        throw ParseError("naive bayes class arrays must have 4 entries");
      for (std::size_t c = 0; c < kNumClasses; ++c) {
        nb.present[c] = static_cast<char>(present[c].get<int>());
        nb.log_prior[c] = prior[c].is_null()
                              ? -std::numeric_limits<double>::infinity()
                              : prior[c].get<double>();
      }
      m.classifier = std::move(nb);
      return;
    }
  }
  throw ConfigError("invalid algorithm");
}

}  // namespace

void save_model(const TrainedModel& m, std::ostream& out) {
  json j;
  j["format_version"] = m.format_version;
  j["algorithm"] = to_string(m.algorithm);
  j["hyperparams"] = m.hyperparams;
  j["scaler"] = scaler_to_json(m.scaler);
  j["classifier"] = classifier_to_json(m);
  json labels = json::array();
  for (OrderingLabel l : m.label_schema) labels.push_back(to_string(l));
  j["label_schema"] = std::move(labels);
  j["feature_schema"] = m.feature_schema;
  j["seed"] = m.seed;
  j["warnings"] = m.warnings;
  out << j.dump(1, '\t') << "\n";
}

void save_model_file(const TrainedModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  save_model(m, out);
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

TrainedModel load_model(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw UnsupportedVersion(version, kModelFormatVersion);

    TrainedModel m;
    m.format_version = version;
    m.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    m.hyperparams = j.at("hyperparams").get<Hyperparams>();
    m.scaler = scaler_from_json(j.at("scaler"));
    const json& labels = j.at("label_schema");
    if (labels.size() != kNumClasses)
      throw ParseError("label_schema must have 4 entries");
    for (std::size_t c = 0; c < kNumClasses; ++c)
      m.label_schema[c] = label_from_string(labels[c].get<std::string>());
    const json& feats = j.at("feature_schema");
    if (feats.size() != kFeatureCount)
      throw ParseError("feature_schema must have 12 entries");
    for (std::size_t c = 0; c < kFeatureCount; ++c)
      m.feature_schema[c] = feats[c].get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    classifier_from_json(j.at("classifier"), m);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

TrainedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return load_model(in);
  } catch (ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace reorder::ml
