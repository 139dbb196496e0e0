// Copyright 2026 The pcosrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "json_io.hpp"

#include <string>

#include "pcosrisk/error.hpp"

namespace pcosrisk {

Json OptionalToJson(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<double> OptionalFromJson(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

namespace {

template <typename T>
T ValueOr(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

}  // namespace

// --- schema ----------------------------------------------------------------

void to_json(Json& j, const Interval& v) {
  j = Json{{"label", v.label},
           {"lo", OptionalToJson(v.lo)},
           {"hi", OptionalToJson(v.hi)},
           {"lo_closed", v.lo_closed},
           {"hi_closed", v.hi_closed}};
}
void from_json(const Json& j, Interval& v) {
  v.label = j.at("label").get<std::string>();
  v.lo = OptionalFromJson(j, "lo");
  v.hi = OptionalFromJson(j, "hi");
  v.lo_closed = ValueOr(j, "lo_closed", true);
  v.hi_closed = ValueOr(j, "hi_closed", false);
}

void to_json(Json& j, const Category& v) {
  j = Json{{"value", v.value}, {"label", v.label}};
}
void from_json(const Json& j, Category& v) {
  v.value = j.at("value").get<double>();
  v.label = j.at("label").get<std::string>();
}

void to_json(Json& j, const SensitiveSpec& v) {
  j = Json{{"attribute", v.attribute}, {"column", v.column}};
  if (v.kind == SensitiveSpec::Kind::kIntervals) {
    j["bins"] = v.bins;
  } else {
    j["categories"] = v.categories;
  }
}
void from_json(const Json& j, SensitiveSpec& v) {
  v.attribute = j.at("attribute").get<std::string>();
  v.column = j.at("column").get<std::string>();
  if (j.contains("categories")) {
    v.kind = SensitiveSpec::Kind::kCategorical;
    v.categories = j.at("categories").get<std::vector<Category>>();
  } else {
    v.kind = SensitiveSpec::Kind::kIntervals;
    v.bins = j.at("bins").get<std::vector<Interval>>();
  }
}

void to_json(Json& j, const BmiDerivation& v) {
  j = Json{{"bmi", v.bmi_column},
           {"weight", v.weight_column},
           {"height", v.height_column},
           {"height_scale", v.height_scale}};
}
void from_json(const Json& j, BmiDerivation& v) {
  v.bmi_column = j.at("bmi").get<std::string>();
  v.weight_column = j.at("weight").get<std::string>();
  v.height_column = j.at("height").get<std::string>();
  v.height_scale = ValueOr(j, "height_scale", 0.01);
}

void to_json(Json& j, const SchemaManifest& v) {
  Json bounds = Json::object();
  for (const auto& [col, b] : v.bounds) bounds[col] = {b.min, b.max};
  j = Json{{"name", v.name},
           {"target", v.target_column},
           {"id_columns", v.id_columns},
           {"binary_columns", v.binary_columns},
           {"continuous_columns", v.continuous_columns},
           {"sensitive", v.sensitive},
           {"bounds", bounds},
           {"display_names", v.display_names},
           {"whatif_controls", v.whatif_controls}};
  if (v.bmi) j["bmi"] = *v.bmi;
}
void from_json(const Json& j, SchemaManifest& v) {
  v.name = ValueOr<std::string>(j, "name", "");
  v.target_column = j.at("target").get<std::string>();
  v.id_columns = ValueOr(j, "id_columns", std::vector<std::string>{});
  v.binary_columns = j.at("binary_columns").get<std::vector<std::string>>();
  v.continuous_columns =
      j.at("continuous_columns").get<std::vector<std::string>>();
  v.sensitive = ValueOr(j, "sensitive", std::vector<SensitiveSpec>{});
  v.bounds.clear();
  if (j.contains("bounds")) {
    for (const auto& [col, b] : j.at("bounds").items()) {
      if (!b.is_array() || b.size() != 2) {
        throw Error(ErrorCode::kSchema,
                    "bounds for '" + col + "' must be [min, max]", col);
      }
      v.bounds[col] = FeatureBounds{b[0].get<double>(), b[1].get<double>()};
    }
  }
  v.bmi.reset();
  if (j.contains("bmi") && !j.at("bmi").is_null()) {
    v.bmi = j.at("bmi").get<BmiDerivation>();
  }
  v.display_names =
      ValueOr(j, "display_names", std::map<std::string, std::string>{});
  v.whatif_controls = ValueOr(j, "whatif_controls", std::vector<std::string>{});
}

void to_json(Json& j, const FeatureRole& v) {
  j = v == FeatureRole::kBinary ? "binary" : "continuous";
}
void from_json(const Json& j, FeatureRole& v) {
  const auto s = j.get<std::string>();
  if (s == "binary") {
    v = FeatureRole::kBinary;
  } else if (s == "continuous") {
    v = FeatureRole::kContinuous;
  } else {
    throw Error(ErrorCode::kSchema, "unknown feature role '" + s + "'");
  }
}

void to_json(Json& j, const ScalerParams& v) {
  j = Json{{"columns", v.columns}, {"mean", v.mean}, {"stddev", v.stddev}};
}
void from_json(const Json& j, ScalerParams& v) {
  v.columns = j.at("columns").get<std::vector<std::string>>();
  v.mean = j.at("mean").get<std::vector<double>>();
  v.stddev = j.at("stddev").get<std::vector<double>>();
}

// --- clinical --------------------------------------------------------------

namespace {

CompareOp ParseOp(const std::string& s) {
  for (CompareOp op : {CompareOp::kGreaterEqual, CompareOp::kGreater,
                       CompareOp::kLessEqual, CompareOp::kLess,
                       CompareOp::kEqual}) {
    if (CompareOpSymbol(op) == s) return op;
  }
  throw Error(ErrorCode::kSchema, "unknown comparison '" + s + "'");
}

}  // namespace

void to_json(Json& j, const CriterionRule& v) {
  j = Json{{"column", v.column},
           {"op", std::string(CompareOpSymbol(v.op))},
           {"value", v.value}};
  if (!v.description.empty()) j["description"] = v.description;
}
void from_json(const Json& j, CriterionRule& v) {
  v.column = j.at("column").get<std::string>();
  v.op = ParseOp(j.at("op").get<std::string>());
  v.value = j.at("value").get<double>();
  v.description = ValueOr<std::string>(j, "description", "");
}

void to_json(Json& j, const CriterionSpec& v) {
  j = Json{{"name", v.name},
           {"rules", v.rules},
           {"min_true", v.min_true},
           {"proxy", v.proxy}};
  if (!v.proxy_note.empty()) j["proxy_note"] = v.proxy_note;
}
void from_json(const Json& j, CriterionSpec& v) {
  v.name = j.at("name").get<std::string>();
  v.rules = j.at("rules").get<std::vector<CriterionRule>>();
  v.min_true = ValueOr(j, "min_true", 1);
  v.proxy = ValueOr(j, "proxy", false);
  v.proxy_note = ValueOr<std::string>(j, "proxy_note", "");
}

void to_json(Json& j, const ReferenceBand& v) {
  j = Json{{"name", v.name},
           {"column", v.column},
           {"low", OptionalToJson(v.low)},
           {"high", OptionalToJson(v.high)},
           {"unit", v.unit}};
  if (v.denominator_column) j["denominator"] = *v.denominator_column;
}
void from_json(const Json& j, ReferenceBand& v) {
  v.name = j.at("name").get<std::string>();
  v.column = j.at("column").get<std::string>();
  v.denominator_column.reset();
  if (j.contains("denominator") && !j.at("denominator").is_null()) {
    v.denominator_column = j.at("denominator").get<std::string>();
  }
  v.low = OptionalFromJson(j, "low");
  v.high = OptionalFromJson(j, "high");
  v.unit = ValueOr<std::string>(j, "unit", "");
}

void to_json(Json& j, const ClinicalConfig& v) {
  j = Json{{"criteria",
            {{"oligo_anovulation", v.oligo_anovulation},
             {"hyperandrogenism", v.hyperandrogenism},
             {"pcom", v.pcom}}},
           {"threshold", v.threshold},
           {"indicators", v.indicators}};
}
void from_json(const Json& j, ClinicalConfig& v) {
  const Json& c = j.at("criteria");
  v.oligo_anovulation = c.at("oligo_anovulation").get<CriterionSpec>();
  v.hyperandrogenism = c.at("hyperandrogenism").get<CriterionSpec>();
  v.pcom = c.at("pcom").get<CriterionSpec>();
  v.threshold = ValueOr(j, "threshold", 2);
  v.indicators = ValueOr(j, "indicators", std::vector<ReferenceBand>{});
}

// --- models ----------------------------------------------------------------

void to_json(Json& j, const DecisionTree& v) {
  const auto& nodes = v.nodes();
  Json feature = Json::array(), threshold = Json::array(),
       left = Json::array(), right = Json::array(), cover = Json::array(),
       value = Json::array();
  for (const auto& n : nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    cover.push_back(n.cover);
    value.push_back(n.value);
  }
  j = Json{{"num_features", v.num_features()},
           {"feature", feature},
           {"threshold", threshold},
           {"left", left},
           {"right", right},
           {"cover", cover},
           {"value", value}};
}
void from_json(const Json& j, DecisionTree& v) {
  const auto feature = j.at("feature").get<std::vector<int>>();
  const auto threshold = j.at("threshold").get<std::vector<double>>();
  const auto left = j.at("left").get<std::vector<int>>();
  const auto right = j.at("right").get<std::vector<int>>();
  const auto cover = j.at("cover").get<std::vector<double>>();
  const auto value = j.at("value").get<std::vector<double>>();
  const std::size_t n = feature.size();
  if (threshold.size() != n || left.size() != n || right.size() != n ||
      cover.size() != n || value.size() != n) {
    throw Error(ErrorCode::kModel, "tree node arrays differ in length");
  }
  std::vector<TreeNode> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = TreeNode{feature[i], threshold[i], left[i],
                        right[i],   cover[i],     value[i]};
  }
  v = DecisionTree(std::move(nodes), j.at("num_features").get<std::size_t>());
}

void to_json(Json& j, const ForestParams& v) {
  j = Json{{"n_estimators", v.n_estimators},
           {"max_depth", v.max_depth},
           {"min_samples_leaf", v.min_samples_leaf},
           {"max_features", v.max_features},
           {"seed", v.seed}};
}
void from_json(const Json& j, ForestParams& v) {
  v.n_estimators = j.at("n_estimators").get<int>();
  v.max_depth = j.at("max_depth").get<int>();
  v.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  v.max_features = j.at("max_features").get<int>();
  v.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(Json& j, const RandomForestModel& v) {
  j = Json{{"params", v.params},
           {"feature_subsample", v.feature_subsample},
           {"num_features", v.num_features},
           {"tree_seeds", v.tree_seeds},
           {"trees", v.trees}};
}
void from_json(const Json& j, RandomForestModel& v) {
  v.params = j.at("params").get<ForestParams>();
  v.feature_subsample = j.at("feature_subsample").get<int>();
  v.num_features = j.at("num_features").get<std::size_t>();
  v.tree_seeds = j.at("tree_seeds").get<std::vector<std::uint64_t>>();
  v.trees = j.at("trees").get<std::vector<DecisionTree>>();
}

void to_json(Json& j, const GbtParams& v) {
  j = Json{{"n_estimators", v.n_estimators},
           {"max_depth", v.max_depth},
           {"learning_rate", v.learning_rate},
           {"l2", v.l2},
           {"min_samples_leaf", v.min_samples_leaf},
           {"subsample", v.subsample},
           {"seed", v.seed}};
}
void from_json(const Json& j, GbtParams& v) {
  v.n_estimators = j.at("n_estimators").get<int>();
  v.max_depth = j.at("max_depth").get<int>();
  v.learning_rate = j.at("learning_rate").get<double>();
  v.l2 = j.at("l2").get<double>();
  v.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  v.subsample = j.at("subsample").get<double>();
  v.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(Json& j, const GradientBoostedModel& v) {
  j = Json{{"params", v.params},
           {"num_features", v.num_features},
           {"initial_score", v.initial_score},
           {"train_loss", v.train_loss},
           {"trees", v.trees}};
}
void from_json(const Json& j, GradientBoostedModel& v) {
  v.params = j.at("params").get<GbtParams>();
  v.num_features = j.at("num_features").get<std::size_t>();
  v.initial_score = j.at("initial_score").get<double>();
  v.train_loss = j.at("train_loss").get<std::vector<double>>();
  v.trees = j.at("trees").get<std::vector<DecisionTree>>();
}

void to_json(Json& j, const SvmParams& v) {
  j = Json{{"c", v.c},
           {"gamma", v.gamma},
           {"tol", v.tol},
           {"max_iter", v.max_iter}};
}
void from_json(const Json& j, SvmParams& v) {
  v.c = j.at("c").get<double>();
  v.gamma = j.at("gamma").get<double>();
  v.tol = j.at("tol").get<double>();
  v.max_iter = j.at("max_iter").get<int>();
}

void to_json(Json& j, const SvmModel& v) {
  j = Json{{"params", v.params},
           {"num_features", v.num_features},
           {"support_vectors", v.support_vectors},
           {"dual_coef", v.dual_coef},
           {"bias", v.bias},
           {"iterations", v.iterations},
           {"converged", v.converged}};
}
void from_json(const Json& j, SvmModel& v) {
  v.params = j.at("params").get<SvmParams>();
  v.num_features = j.at("num_features").get<std::size_t>();
  v.support_vectors =
      j.at("support_vectors").get<std::vector<std::vector<double>>>();
  v.dual_coef = j.at("dual_coef").get<std::vector<double>>();
  v.bias = j.at("bias").get<double>();
  v.iterations = j.at("iterations").get<int>();
  v.converged = j.at("converged").get<bool>();
  if (v.dual_coef.size() != v.support_vectors.size()) {
    throw Error(ErrorCode::kModel, "SVM coefficient count mismatch");
  }
}

void to_json(Json& j, const BaseModel& v) {
  std::visit([&](const auto& m) { j = m; }, v);
  j["kind"] = ModelKindName(KindOf(v));
}
void from_json(const Json& j, BaseModel& v) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "rf") {
    v = j.get<RandomForestModel>();
  } else if (kind == "gbt") {
    v = j.get<GradientBoostedModel>();
  } else if (kind == "svm") {
    v = j.get<SvmModel>();
  } else {
    throw Error(ErrorCode::kModel, "unknown model kind '" + kind + "'");
  }
}

void to_json(Json& j, const IsotonicCalibrator& v) {
  j = Json{{"method", "iso"}, {"x", v.x}, {"y", v.y}};
}
void from_json(const Json& j, IsotonicCalibrator& v) {
  v.x = j.at("x").get<std::vector<double>>();
  v.y = j.at("y").get<std::vector<double>>();
  if (v.x.size() != v.y.size() || v.x.empty()) {
    throw Error(ErrorCode::kModel, "malformed isotonic calibrator");
  }
}

void to_json(Json& j, const PlattCalibrator& v) {
  j = Json{{"method", "platt"},
           {"a", v.a},
           {"b", v.b},
           {"iterations", v.iterations}};
}
void from_json(const Json& j, PlattCalibrator& v) {
  v.a = j.at("a").get<double>();
  v.b = j.at("b").get<double>();
  v.iterations = ValueOr(j, "iterations", 0);
}

void to_json(Json& j, const Calibrator& v) {
  std::visit([&](const auto& c) { j = c; }, v);
}
void from_json(const Json& j, Calibrator& v) {
  const auto method = j.at("method").get<std::string>();
  if (method == "iso") {
    v = j.get<IsotonicCalibrator>();
  } else if (method == "platt") {
    v = j.get<PlattCalibrator>();
  } else {
    throw Error(ErrorCode::kModel, "unknown calibrator '" + method + "'");
  }
}

void to_json(Json& j, const CalibratedModel& v) {
  Json pairs = Json::array();
  for (const auto& p : v.pairs) {
    pairs.push_back(Json{{"model", p.model}, {"calibrator", p.calibrator}});
  }
  j = Json{{"method", CalibrationMethodName(v.method)},
           {"kind", ModelKindName(v.kind)},
           {"num_features", v.num_features},
           {"seed", v.seed},
           {"folds", v.folds},
           {"pairs", pairs}};
}
void from_json(const Json& j, CalibratedModel& v) {
  const auto method = j.at("method").get<std::string>();
  if (method == "iso") {
    v.method = CalibrationMethod::kIsotonic;
  } else if (method == "platt") {
    v.method = CalibrationMethod::kPlatt;
  } else {
    throw Error(ErrorCode::kModel, "unknown calibration method '" + method + "'");
  }
  v.num_features = j.at("num_features").get<std::size_t>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.folds = j.at("folds").get<std::vector<std::vector<std::size_t>>>();
  v.pairs.clear();
  for (const auto& p : j.at("pairs")) {
    v.pairs.push_back(CalibratedPair{p.at("model").get<BaseModel>(),
                                     p.at("calibrator").get<Calibrator>()});
  }
  if (v.pairs.empty()) {
    throw Error(ErrorCode::kModel, "calibrated model has no fold pairs");
  }
  v.kind = KindOf(v.pairs.front().model);
  if (ModelKindName(v.kind) != j.at("kind").get<std::string>()) {
    throw Error(ErrorCode::kModel, "calibrated model kind mismatch");
  }
}

void to_json(Json& j, const GridEntry& v) {
  j = Json{{"params", v.params},
           {"mean_accuracy", v.mean_accuracy},
           {"fold_accuracy", v.fold_accuracy},
           {"failed", v.failed}};
  if (!v.error.empty()) j["error"] = v.error;
}
void from_json(const Json& j, GridEntry& v) {
  v.params = j.at("params").get<std::map<std::string, double>>();
  v.mean_accuracy = j.at("mean_accuracy").get<double>();
  v.fold_accuracy = j.at("fold_accuracy").get<std::vector<double>>();
  v.failed = j.at("failed").get<bool>();
  v.error = ValueOr<std::string>(j, "error", "");
}

void to_json(Json& j, const CvResult& v) {
  j = Json{{"folds", v.folds}, {"selected", v.selected}, {"entries", v.entries}};
}
void from_json(const Json& j, CvResult& v) {
  v.folds = j.at("folds").get<int>();
  v.selected = j.at("selected").get<std::size_t>();
  v.entries = j.at("entries").get<std::vector<GridEntry>>();
}

// --- reports ---------------------------------------------------------------

void to_json(Json& j, const ClassificationReport& v) {
  j = Json{{"tp", v.tp},
           {"fp", v.fp},
           {"tn", v.tn},
           {"fn", v.fn},
           {"accuracy", v.accuracy},
           {"precision", OptionalToJson(v.precision)},
           {"recall", OptionalToJson(v.recall)}};
}
void from_json(const Json& j, ClassificationReport& v) {
  v.tp = j.at("tp").get<std::size_t>();
  v.fp = j.at("fp").get<std::size_t>();
  v.tn = j.at("tn").get<std::size_t>();
  v.fn = j.at("fn").get<std::size_t>();
  v.accuracy = j.at("accuracy").get<double>();
  v.precision = OptionalFromJson(j, "precision");
  v.recall = OptionalFromJson(j, "recall");
}

void to_json(Json& j, const GroupResult& v) {
  j = Json{{"label", v.label}, {"size", v.size}, {"report", v.report}};
}
void from_json(const Json& j, GroupResult& v) {
  v.label = j.at("label").get<std::string>();
  v.size = j.at("size").get<std::size_t>();
  v.report = j.at("report").get<ClassificationReport>();
}

void to_json(Json& j, const AttributeResult& v) {
  j = Json{{"attribute", v.attribute}, {"groups", v.groups}};
}
void from_json(const Json& j, AttributeResult& v) {
  v.attribute = j.at("attribute").get<std::string>();
  v.groups = j.at("groups").get<std::vector<GroupResult>>();
}

void to_json(Json& j, const SubgroupReport& v) {
  j = Json{{"attributes", v.attributes},
           {"overall", v.overall},
           {"total", v.total},
           {"model_id", v.model_id},
           {"seed", v.seed},
           {"timestamp", v.timestamp}};
}
void from_json(const Json& j, SubgroupReport& v) {
  v.attributes = j.at("attributes").get<std::vector<AttributeResult>>();
  v.overall = j.at("overall").get<ClassificationReport>();
  v.total = j.at("total").get<std::size_t>();
  v.model_id = j.at("model_id").get<std::string>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.timestamp = ValueOr<std::string>(j, "timestamp", "");
}

void to_json(Json& j, const DisparityFlag& v) {
  j = Json{{"attribute", v.attribute},
           {"group", v.group},
           {"metric", v.metric},
           {"group_value", v.group_value},
           {"overall_value", v.overall_value},
           {"gap", v.gap},
           {"group_size", v.group_size},
           {"severity", SeverityName(v.severity)}};
}
void from_json(const Json& j, DisparityFlag& v) {
  v.attribute = j.at("attribute").get<std::string>();
  v.group = j.at("group").get<std::string>();
  v.metric = j.at("metric").get<std::string>();
  v.group_value = j.at("group_value").get<double>();
  v.overall_value = j.at("overall_value").get<double>();
  v.gap = j.at("gap").get<double>();
  v.group_size = j.at("group_size").get<std::size_t>();
  v.severity = j.at("severity").get<std::string>() == SeverityName(Severity::kWarn)
                   ? Severity::kWarn
                   : Severity::kInfo;
}

void to_json(Json& j, const ReliabilityBin& v) {
  j = Json{{"lower", v.lower},
           {"upper", v.upper},
           {"count", v.count},
           {"mean_predicted", v.mean_predicted},
           {"observed_rate", v.observed_rate},
           {"accuracy", v.accuracy}};
}
void from_json(const Json& j, ReliabilityBin& v) {
  v.lower = j.at("lower").get<double>();
  v.upper = j.at("upper").get<double>();
  v.count = j.at("count").get<std::size_t>();
  v.mean_predicted = j.at("mean_predicted").get<double>();
  v.observed_rate = j.at("observed_rate").get<double>();
  v.accuracy = j.at("accuracy").get<double>();
}

void to_json(Json& j, const BinnedReliability& v) {
  j = Json{{"total", v.total}, {"bins", v.bins}};
}
void from_json(const Json& j, BinnedReliability& v) {
  v.total = j.at("total").get<std::size_t>();
  v.bins = j.at("bins").get<std::vector<ReliabilityBin>>();
}

void to_json(Json& j, const NetBenefitPoint& v) {
  j = Json{{"threshold", v.threshold},
           {"tp", v.tp},
           {"fp", v.fp},
           {"n", v.n},
           {"net_benefit", v.net_benefit},
           {"treat_all", v.treat_all},
           {"treat_none", v.treat_none}};
}
void from_json(const Json& j, NetBenefitPoint& v) {
  v.threshold = j.at("threshold").get<double>();
  v.tp = j.at("tp").get<std::size_t>();
  v.fp = j.at("fp").get<std::size_t>();
  v.n = j.at("n").get<std::size_t>();
  v.net_benefit = j.at("net_benefit").get<double>();
  v.treat_all = j.at("treat_all").get<double>();
  v.treat_none = j.at("treat_none").get<double>();
}

void to_json(Json& j, const GlobalImportance& v) {
  j = Json{{"feature_names", v.feature_names},
           {"mean_abs_phi", v.mean_abs_phi},
           {"ranking", v.ranking}};
}
void from_json(const Json& j, GlobalImportance& v) {
  v.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  v.mean_abs_phi = j.at("mean_abs_phi").get<std::vector<double>>();
  v.ranking = j.at("ranking").get<std::vector<std::size_t>>();
}

}  // namespace pcosrisk
