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

#include "pcosrisk/pipeline.hpp"

#include "pcosrisk/error.hpp"

namespace pcosrisk {

namespace {

std::string DisplayKind(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRandomForest: return "RF";
    case ModelKind::kGradientBoosted: return "GBT";
    case ModelKind::kSvm: return "SVM";
  }
  return "?";
}

std::string DisplayMethod(const std::string& method) {
  return method == "iso" ? "Isotonic" : "Platt";
}

}  // namespace

MetricSummary SummarizePredictions(const std::string& tag,
                                   const PredictionSet& ps) {
  MetricSummary m;
  m.tag = tag;
  const auto dash = tag.find('-');
  m.method = tag.substr(dash + 1);
  const auto kind = tag.substr(0, dash);
  m.model = kind == "rf" ? "RF" : kind == "gbt" ? "GBT" : "SVM";
  m.method = DisplayMethod(m.method);
  const ClassificationReport r = ClassificationReportOf(ps);
  m.accuracy = r.accuracy;
  m.precision = r.precision;
  m.recall = r.recall;
  m.brier = BrierScore(ps);
  m.ece_10 = ExpectedCalibrationError(ps, 10);
  m.ece_15 = ExpectedCalibrationError(ps, 15);
  try {
    m.calibration_slope = CalibrationSlope(ps).slope;
  } catch (const Error&) {
    m.calibration_slope.reset();
  }
  return m;
}

PipelineResult TrainPipeline(const LabeledDataset& data,
                             const SchemaManifest& manifest,
                             const ClinicalConfig& clinical,
                             const PipelineOptions& options) {
  auto log = [&](const std::string& msg) {
    if (options.log) options.log(msg);
  };
  PipelineResult result;
  ModelBundle& bundle = result.bundle;
  bundle.manifest = manifest;
  bundle.clinical = clinical;
  bundle.feature_names = data.feature_names();
  bundle.roles = data.roles();
  bundle.policy = options.policy;
  bundle.reliability_bins = options.bins;

  result.split =
      StratifiedSplit(data.labels(), options.test_fraction, options.seed);
  const LabeledDataset train_raw = data.Subset(result.split.train);
  result.test_raw = data.Subset(result.split.test);
  result.test_groups = DeriveSubgroups(result.test_raw, manifest);

  bundle.scaler = FitScaler(train_raw);
  const LabeledDataset train = ApplyScaler(bundle.scaler, train_raw);
  result.test_scaled = ApplyScaler(bundle.scaler, result.test_raw);
  const LabeledDataset& test = result.test_scaled;

  bundle.info.seed = options.seed;
  bundle.info.test_fraction = options.test_fraction;
  bundle.info.folds = options.folds;
  bundle.info.raw_rows = data.raw_row_count();
  bundle.info.clean_rows = data.rows();
  bundle.info.train_rows = train.rows();
  bundle.info.test_rows = test.rows();
  bundle.info.test_positives = test.PositiveCount();
  log("split: " + std::to_string(train.rows()) + " train / " +
      std::to_string(test.rows()) + " test rows");

  // Hyperparameter selection.
  std::map<ModelKind, LearnerSpec> selected;
  {
    log("grid search: random forest (" +
        std::to_string(options.forest_grid.size()) + " points)");
    auto [forest, cv] = TrainRandomForest(train, options.forest_grid,
                                          options.folds, options.seed);
    bundle.explainer = std::move(forest);
    bundle.cv["rf"] = cv;
    selected[ModelKind::kRandomForest] = options.forest_grid[cv.selected];
  }
  {
    log("grid search: gradient boosting (" +
        std::to_string(options.gbt_grid.size()) + " points)");
    std::vector<LearnerSpec> grid(options.gbt_grid.begin(),
                                  options.gbt_grid.end());
    CvResult cv = GridSearch(grid, train, options.folds, options.seed);
    selected[ModelKind::kGradientBoosted] = grid[cv.selected];
    bundle.cv["gbt"] = std::move(cv);
  }
  {
    const auto svm_grid = options.svm_grid.empty()
                              ? DefaultSvmGrid(train.cols())
                              : options.svm_grid;
    log("grid search: RBF SVM (" + std::to_string(svm_grid.size()) +
        " points)");
    std::vector<LearnerSpec> grid(svm_grid.begin(), svm_grid.end());
    CvResult cv = GridSearch(grid, train, options.folds, options.seed);
    selected[ModelKind::kSvm] = grid[cv.selected];
    bundle.cv["svm"] = std::move(cv);
  }

  // Calibrated wrappers and held-out evaluation.
  for (const auto& [kind, spec] : selected) {
    for (CalibrationMethod method :
         {CalibrationMethod::kIsotonic, CalibrationMethod::kPlatt}) {
      const std::string tag = ModelTag(kind, method);
      log("calibrating " + tag);
      CalibratedModel model =
          FitCalibratedModel(spec, train, method, options.folds, options.seed);
      std::vector<double> p(test.rows());
      for (std::size_t i = 0; i < test.rows(); ++i) {
        p[i] = model.Predict(test.row(i));
      }
      PredictionSet ps(std::move(p),
                       std::vector<int>(test.labels().begin(),
                                        test.labels().end()));
      MetricSummary summary = SummarizePredictions(tag, ps);
      summary.model = DisplayKind(kind);
      bundle.metrics.push_back(summary);
      bundle.reliability[tag] = ReliabilityCurve(ps, options.bins);
      bundle.dca[tag] = DecisionCurve(ps, DefaultDcaThresholds());
      result.test_predictions.emplace(tag, std::move(ps));
      bundle.models.emplace(tag, std::move(model));
    }
  }

  // Subgroup audit of the served model.
  const PredictionSet& served = result.test_predictions.at(bundle.default_model);
  bundle.fairness = AuditByGroup(served, result.test_groups);
  bundle.fairness.model_id = bundle.default_model;
  bundle.fairness.seed = options.seed;
  bundle.flags = FlagDisparities(bundle.fairness, options.policy.gap_threshold,
                                 options.policy.min_group);

  log("computing attributions on the test split");
  bundle.importance = ComputeGlobalImportance(bundle.explainer, test);
  return result;
}

}  // namespace pcosrisk
