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

#include "pcosrisk/bundle.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "pcosrisk/csv.hpp"
#include "pcosrisk/error.hpp"

namespace pcosrisk {

namespace {
constexpr std::string_view kMagic = "PCOSRISK-BUNDLE";
}  // namespace

// Bundle-only types; found by argument-dependent lookup.
void to_json(Json& j, const MetricSummary& v);
void from_json(const Json& j, MetricSummary& v);
void to_json(Json& j, const TrainingInfo& v);
void from_json(const Json& j, TrainingInfo& v);
void to_json(Json& j, const FairnessPolicy& v);
void from_json(const Json& j, FairnessPolicy& v);

void to_json(Json& j, const MetricSummary& v) {
  j = Json{{"tag", v.tag},
           {"model", v.model},
           {"method", v.method},
           {"accuracy", v.accuracy},
           {"precision", OptionalToJson(v.precision)},
           {"recall", OptionalToJson(v.recall)},
           {"brier", v.brier},
           {"ece_10", v.ece_10},
           {"ece_15", v.ece_15},
           {"calibration_slope", OptionalToJson(v.calibration_slope)}};
}
void from_json(const Json& j, MetricSummary& v) {
  v.tag = j.at("tag").get<std::string>();
  v.model = j.at("model").get<std::string>();
  v.method = j.at("method").get<std::string>();
  v.accuracy = j.at("accuracy").get<double>();
  v.precision = OptionalFromJson(j, "precision");
  v.recall = OptionalFromJson(j, "recall");
  v.brier = j.at("brier").get<double>();
  v.ece_10 = j.at("ece_10").get<double>();
  v.ece_15 = j.at("ece_15").get<double>();
  v.calibration_slope = OptionalFromJson(j, "calibration_slope");
}

void to_json(Json& j, const TrainingInfo& v) {
  j = Json{{"seed", v.seed},
           {"test_fraction", v.test_fraction},
           {"folds", v.folds},
           {"raw_rows", v.raw_rows},
           {"clean_rows", v.clean_rows},
           {"train_rows", v.train_rows},
           {"test_rows", v.test_rows},
           {"test_positives", v.test_positives}};
}
void from_json(const Json& j, TrainingInfo& v) {
  v.seed = j.at("seed").get<std::uint64_t>();
  v.test_fraction = j.at("test_fraction").get<double>();
  v.folds = j.at("folds").get<int>();
  v.raw_rows = j.at("raw_rows").get<std::size_t>();
  v.clean_rows = j.at("clean_rows").get<std::size_t>();
  v.train_rows = j.at("train_rows").get<std::size_t>();
  v.test_rows = j.at("test_rows").get<std::size_t>();
  v.test_positives = j.at("test_positives").get<std::size_t>();
}

void to_json(Json& j, const FairnessPolicy& v) {
  j = Json{{"gap_threshold", v.gap_threshold}, {"min_group", v.min_group}};
}
void from_json(const Json& j, FairnessPolicy& v) {
  v.gap_threshold = j.at("gap_threshold").get<double>();
  v.min_group = j.at("min_group").get<std::size_t>();
}

namespace {

// Top-level sections in file order; one section per line keeps diffs local.
std::vector<std::pair<std::string, Json>> Sections(const ModelBundle& b) {
  return std::vector<std::pair<std::string, Json>>{
      {"format_version", b.format_version},
      {"info", b.info},
      {"default_model", b.default_model},
      {"manifest", b.manifest},
      {"feature_names", b.feature_names},
      {"roles", b.roles},
      {"scaler", b.scaler},
      {"clinical", b.clinical},
      {"metrics", b.metrics},
      {"policy", b.policy},
      {"fairness", b.fairness},
      {"flags", b.flags},
      {"importance", b.importance},
      {"reliability_bins", b.reliability_bins},
      {"reliability", b.reliability},
      {"dca", b.dca},
      {"cv", b.cv},
      {"explainer", b.explainer},
      {"models", b.models},
  };
}

void CheckComplete(const ModelBundle& b) {
  if (b.models.empty()) {
    throw Error(ErrorCode::kModel, "bundle has no calibrated models", "models");
  }
  if (!b.models.contains(b.default_model)) {
    throw Error(ErrorCode::kModel,
                "default model '" + b.default_model + "' is not in the bundle",
                "default_model");
  }
  if (b.feature_names.size() != b.roles.size()) {
    throw Error(ErrorCode::kModel, "bundle feature layout is inconsistent",
                "feature_names");
  }
  for (const auto& c : b.scaler.columns) {
    if (std::find(b.feature_names.begin(), b.feature_names.end(), c) ==
        b.feature_names.end()) {
      throw Error(ErrorCode::kModel,
                  "scaler column '" + c + "' is not a bundle feature", c);
    }
  }
  for (const auto& [tag, m] : b.models) {
    if (m.num_features != b.feature_names.size()) {
      throw Error(ErrorCode::kModel,
                  "model '" + tag + "' expects a different feature count", tag);
    }
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open bundle " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const CalibratedModel& ModelBundle::Model(std::string_view tag) const {
  auto it = models.find(std::string(tag));
  if (it == models.end()) {
    throw Error(ErrorCode::kNotFound,
                "model '" + std::string(tag) + "' is not in the bundle",
                "model");
  }
  return it->second;
}

std::string ModelTag(ModelKind kind, CalibrationMethod method) {
  return ModelKindName(kind) + "-" + CalibrationMethodName(method);
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string SerializeBundle(ModelBundle& bundle) {
  CheckComplete(bundle);
  std::string payload = "{\n";
  const auto sections = Sections(bundle);
  for (std::size_t i = 0; i < sections.size(); ++i) {
    payload += Json(sections[i].first).dump();
    payload += ":";
    payload += sections[i].second.dump();
    payload += i + 1 < sections.size() ? ",\n" : "\n";
  }
  payload += "}\n";
  bundle.hash = Sha256Hex(payload);
  return std::string(kMagic) + " " + std::to_string(bundle.format_version) +
         " sha256:" + bundle.hash + "\n" + payload;
}

ModelBundle DeserializeBundle(std::string_view bytes) {
  const auto eol = bytes.find('\n');
  if (eol == std::string_view::npos) {
    throw Error(ErrorCode::kCorruption, "bundle header is missing");
  }
  std::istringstream header{std::string(bytes.substr(0, eol))};
  std::string magic, hash_field;
  long long version = 0;
  if (!(header >> magic >> version >> hash_field) || magic != kMagic ||
      hash_field.rfind("sha256:", 0) != 0) {
    throw Error(ErrorCode::kCorruption, "bundle header is malformed");
  }
  if (version != kBundleFormatVersion) {
    throw Error(ErrorCode::kIncompatible,
                "bundle format version " + std::to_string(version) +
                    " is not supported; this build reads version " +
                    std::to_string(kBundleFormatVersion),
                "format_version");
  }
  const std::string_view payload = bytes.substr(eol + 1);
  const std::string expected = hash_field.substr(7);
  const std::string actual = Sha256Hex(payload);
  if (actual != expected) {
    throw Error(ErrorCode::kCorruption,
                "bundle content hash mismatch (header " + expected +
                    ", payload " + actual + ")");
  }
  ModelBundle b;
  try {
    const Json j = Json::parse(payload);
    b.format_version = j.at("format_version").get<int>();
    if (b.format_version != version) {
      throw Error(ErrorCode::kCorruption,
                  "payload format version disagrees with the header");
    }
    b.info = j.at("info").get<TrainingInfo>();
    b.default_model = j.at("default_model").get<std::string>();
    b.manifest = j.at("manifest").get<SchemaManifest>();
    b.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    b.roles = j.at("roles").get<std::vector<FeatureRole>>();
    b.scaler = j.at("scaler").get<ScalerParams>();
    b.clinical = j.at("clinical").get<ClinicalConfig>();
    b.metrics = j.at("metrics").get<std::vector<MetricSummary>>();
    b.policy = j.at("policy").get<FairnessPolicy>();
    b.fairness = j.at("fairness").get<SubgroupReport>();
    b.flags = j.at("flags").get<std::vector<DisparityFlag>>();
    b.importance = j.at("importance").get<GlobalImportance>();
    b.reliability_bins = j.at("reliability_bins").get<int>();
    b.reliability =
        j.at("reliability").get<std::map<std::string, BinnedReliability>>();
    b.dca = j.at("dca")
                .get<std::map<std::string, std::vector<NetBenefitPoint>>>();
    b.cv = j.at("cv").get<std::map<std::string, CvResult>>();
    b.explainer = j.at("explainer").get<RandomForestModel>();
    b.models = j.at("models").get<std::map<std::string, CalibratedModel>>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kCorruption,
                std::string("bundle payload is unreadable: ") + e.what());
  }
  CheckComplete(b);
  b.hash = actual;
  return b;
}

std::string SaveBundle(ModelBundle& bundle, const std::string& path) {
  const std::string bytes = SerializeBundle(bundle);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write bundle " + path, path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path, path);
  return bundle.hash;
}

ModelBundle LoadBundle(const std::string& path) {
  return DeserializeBundle(ReadFile(path));
}

// ---------------------------------------------------------------------------

std::vector<double> ProfileVector(const ModelBundle& bundle,
                                  const FeatureMap& profile) {
  for (const auto& [name, value] : profile) {
    bool known = false;
    for (const auto& f : bundle.feature_names) known = known || f == name;
    if (!known) {
      throw Error(ErrorCode::kValidation,
                  "unknown feature '" + name + "'", name);
    }
  }
  std::vector<double> raw(bundle.feature_names.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const auto& name = bundle.feature_names[j];
    auto it = profile.find(name);
    if (it == profile.end()) {
      throw Error(ErrorCode::kValidation, "missing feature '" + name + "'",
                  name);
    }
    if (!std::isfinite(it->second)) {
      throw Error(ErrorCode::kValidation,
                  "feature '" + name + "' is not a finite number", name);
    }
    if (bundle.roles[j] == FeatureRole::kBinary && it->second != 0.0 &&
        it->second != 1.0) {
      throw Error(ErrorCode::kValidation,
                  "binary feature '" + name + "' must be 0 or 1", name);
    }
    raw[j] = it->second;
  }
  return raw;
}

FeatureMap ProfileMap(const ModelBundle& bundle, std::span<const double> raw) {
  if (raw.size() != bundle.feature_names.size()) {
    throw Error(ErrorCode::kValidation, "feature vector has the wrong length");
  }
  FeatureMap out;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    out[bundle.feature_names[j]] = raw[j];
  }
  return out;
}

std::vector<double> ScaleProfile(const ModelBundle& bundle,
                                 std::span<const double> raw) {
  return ApplyScaler(bundle.scaler, bundle.feature_names, raw);
}

double PredictCalibrated(const ModelBundle& bundle, std::span<const double> raw,
                         std::string_view tag) {
  const auto& model = bundle.Model(tag);
  return model.Predict(ScaleProfile(bundle, raw));
}

double PredictCalibrated(const ModelBundle& bundle, const FeatureMap& profile,
                         std::string_view tag) {
  return PredictCalibrated(bundle, ProfileVector(bundle, profile), tag);
}

AttributionSet ExplainProfile(const ModelBundle& bundle,
                              std::span<const double> raw) {
  AttributionSet att = TreeShap(bundle.explainer, ScaleProfile(bundle, raw));
  att.feature_values.assign(raw.begin(), raw.end());
  return att;
}

std::vector<std::pair<std::string, std::string>> ProfileSubgroups(
    const ModelBundle& bundle, const FeatureMap& profile) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : bundle.manifest.sensitive) {
    auto it = profile.find(spec.column);
    if (it == profile.end()) continue;
    if (auto g = spec.Assign(it->second)) {
      out.emplace_back(spec.attribute, spec.Labels()[*g]);
    }
  }
  return out;
}

std::vector<DisparityFlag> FlagsForProfile(const ModelBundle& bundle,
                                           const FeatureMap& profile) {
  const auto groups = ProfileSubgroups(bundle, profile);
  std::vector<DisparityFlag> out;
  for (const auto& flag : bundle.flags) {
    for (const auto& [attribute, group] : groups) {
      if (flag.attribute == attribute && flag.group == group) {
        out.push_back(flag);
      }
    }
  }
  return out;
}

namespace {

std::string Fixed(std::optional<double> v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

}  // namespace

std::string MetricTable(const std::vector<MetricSummary>& metrics) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line,
                "%-10s %-11s %9s %9s %9s %9s %9s %9s %9s\n", "Model",
                "Calibration", "Accuracy", "Precision", "Recall", "Brier",
                "ECE(10)", "ECE(15)", "Slope");
  out += line;
  for (const auto& m : metrics) {
    std::snprintf(line, sizeof line,
                  "%-10s %-11s %9s %9s %9s %9s %9s %9s %9s\n", m.model.c_str(),
                  m.method.c_str(), Fixed(m.accuracy).c_str(),
                  Fixed(m.precision).c_str(), Fixed(m.recall).c_str(),
                  Fixed(m.brier).c_str(), Fixed(m.ece_10).c_str(),
                  Fixed(m.ece_15).c_str(), Fixed(m.calibration_slope).c_str());
    out += line;
  }
  return out;
}

std::string MetricSummaryToCsv(const std::vector<MetricSummary>& metrics) {
  std::string out =
      "tag,model,calibration,accuracy,precision,recall,brier,ece_10,ece_15,"
      "calibration_slope\n";
  auto opt = [](std::optional<double> v) {
    return v ? csv::FormatNumber(*v) : std::string("undefined");
  };
  for (const auto& m : metrics) {
    out += csv::JoinRow({m.tag, m.model, m.method,
                         csv::FormatNumber(m.accuracy), opt(m.precision),
                         opt(m.recall), csv::FormatNumber(m.brier),
                         csv::FormatNumber(m.ece_10),
                         csv::FormatNumber(m.ece_15),
                         opt(m.calibration_slope)});
    out += "\n";
  }
  return out;
}

}  // namespace pcosrisk
