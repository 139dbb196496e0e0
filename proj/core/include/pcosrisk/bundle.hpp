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

#ifndef PCOSRISK_BUNDLE_HPP_
#define PCOSRISK_BUNDLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcosrisk/calibration.hpp"
#include "pcosrisk/clinical.hpp"
#include "pcosrisk/dataset.hpp"
#include "pcosrisk/fairness.hpp"
#include "pcosrisk/metrics.hpp"
#include "pcosrisk/models.hpp"
#include "pcosrisk/shap.hpp"

namespace pcosrisk {

// Bump on any change to the serialized layout; the golden bundle test fails
// until the fixture is regenerated.
inline constexpr int kBundleFormatVersion = 1;

// One row of the model comparison table, measured on the held-out test set.
struct MetricSummary {
  std::string tag;  // e.g. "rf-iso"
  std::string model;
  std::string method;
  double accuracy = 0.0;
  std::optional<double> precision;
  std::optional<double> recall;
  double brier = 0.0;
  double ece_10 = 0.0;
  double ece_15 = 0.0;
  // Unset when the logistic refit does not converge.
  std::optional<double> calibration_slope;
};

struct TrainingInfo {
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
  int folds = 5;
  std::size_t raw_rows = 0;
  std::size_t clean_rows = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::size_t test_positives = 0;
};

struct FairnessPolicy {
  double gap_threshold = 0.10;
  std::size_t min_group = 10;
};

struct ModelBundle {
  int format_version = kBundleFormatVersion;
  SchemaManifest manifest;
  std::vector<std::string> feature_names;
  std::vector<FeatureRole> roles;
  ScalerParams scaler;
  // Keyed by tag "<rf|gbt|svm>-<iso|platt>".
  std::map<std::string, CalibratedModel> models;
  std::string default_model = "rf-iso";
  // Forest refit on the full training split; source of attributions.
  RandomForestModel explainer;
  // Grid-search record per base model ("rf", "gbt", "svm").
  std::map<std::string, CvResult> cv;
  SubgroupReport fairness;
  std::vector<DisparityFlag> flags;
  FairnessPolicy policy;
  GlobalImportance importance;
  std::vector<MetricSummary> metrics;
  int reliability_bins = 10;
  std::map<std::string, BinnedReliability> reliability;
  std::map<std::string, std::vector<NetBenefitPoint>> dca;
  ClinicalConfig clinical;
  TrainingInfo info;

  // Content hash of the serialized payload; set by Save/Load/Serialize.
  std::string hash;

  // Throws Error(kNotFound) for an unknown tag.
  const CalibratedModel& Model(std::string_view tag) const;
  const CalibratedModel& DefaultModel() const { return Model(default_model); }
};

std::string ModelTag(ModelKind kind, CalibrationMethod method);

std::string Sha256Hex(std::string_view bytes);

// File layout: one header line "PCOSRISK-BUNDLE <version> sha256:<hex>"
// followed by the JSON payload the hash covers. Doubles are written in
// shortest round-trip decimal form. Sets bundle.hash.
std::string SerializeBundle(ModelBundle& bundle);
// Checks the version before the hash: Error(kIncompatible) names both
// versions, Error(kCorruption) reports a hash mismatch or unreadable payload.
ModelBundle DeserializeBundle(std::string_view bytes);

// Returns the content hash.
std::string SaveBundle(ModelBundle& bundle, const std::string& path);
ModelBundle LoadBundle(const std::string& path);

// --- scoring a named profile ---------------------------------------------

// Raw feature vector in bundle feature order. Unknown, missing, non-finite
// or non-binary values raise Error(kValidation) naming the field.
std::vector<double> ProfileVector(const ModelBundle& bundle,
                                  const FeatureMap& profile);
FeatureMap ProfileMap(const ModelBundle& bundle, std::span<const double> raw);
std::vector<double> ScaleProfile(const ModelBundle& bundle,
                                 std::span<const double> raw);

double PredictCalibrated(const ModelBundle& bundle, std::span<const double> raw,
                         std::string_view tag);
double PredictCalibrated(const ModelBundle& bundle, const FeatureMap& profile,
                         std::string_view tag);

// Attribution of the explainer forest at the scaled profile, with raw
// feature values echoed.
AttributionSet ExplainProfile(const ModelBundle& bundle,
                              std::span<const double> raw);

// (attribute, group) pairs for the profile; attributes whose column is
// absent or whose value falls outside every declared group are skipped.
std::vector<std::pair<std::string, std::string>> ProfileSubgroups(
    const ModelBundle& bundle, const FeatureMap& profile);
// Stored disparity flags matching the profile's subgroups.
std::vector<DisparityFlag> FlagsForProfile(const ModelBundle& bundle,
                                           const FeatureMap& profile);

// Plain-text comparison table, one row per model tag.
std::string MetricTable(const std::vector<MetricSummary>& metrics);
// Same rows as comma-separated text with a header line.
std::string MetricSummaryToCsv(const std::vector<MetricSummary>& metrics);

}  // namespace pcosrisk

#endif  // PCOSRISK_BUNDLE_HPP_
