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

#include "pcosrisk/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "pcosrisk/csv.hpp"
#include "pcosrisk/error.hpp"
#include "pcosrisk/random.hpp"

namespace pcosrisk {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view Trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Missing: empty, NA/NaN markers, or anything that is not a full number.
std::optional<double> ParseCell(std::string_view raw) {
  std::string_view s = Trim(raw);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<int> ParseTarget(std::string_view raw) {
  std::string s(Trim(raw));
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s.empty()) return std::nullopt;
  if (s == "1" || s == "y" || s == "yes" || s == "true") return 1;
  if (s == "0" || s == "n" || s == "no" || s == "false") return 0;
  if (auto v = ParseCell(s)) {
    if (*v == 1.0) return 1;
    if (*v == 0.0) return 0;
  }
  return -1;
}

void CheckIntervalCoverage(const SensitiveSpec& spec) {
  if (spec.bins.empty()) {
    throw Error(ErrorCode::kSchema,
                "sensitive attribute '" + spec.attribute + "' has no bins",
                spec.attribute);
  }
  std::vector<const Interval*> bins;
  for (const auto& b : spec.bins) bins.push_back(&b);
  std::sort(bins.begin(), bins.end(), [](const Interval* a, const Interval* b) {
    if (!a->lo) return b->lo.has_value();
    if (!b->lo) return false;
    return *a->lo < *b->lo;
  });
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kSchema,
                "binning rule for '" + spec.attribute + "' " + why,
                spec.attribute);
  };
  if (bins.front()->lo) fail("does not extend to -infinity");
  if (bins.back()->hi) fail("does not extend to +infinity");
  for (const Interval* b : bins) {
    if (b->lo && b->hi && !(*b->lo < *b->hi)) fail("has an empty bin");
  }
  for (std::size_t i = 0; i + 1 < bins.size(); ++i) {
    const Interval& a = *bins[i];
    const Interval& b = *bins[i + 1];
    if (!a.hi || !b.lo || *a.hi != *b.lo) fail("leaves a gap or overlaps");
    if (a.hi_closed == b.lo_closed) {
      fail(a.hi_closed ? "overlaps at " + csv::FormatNumber(*a.hi)
                       : "leaves " + csv::FormatNumber(*a.hi) + " uncovered");
    }
  }
}

}  // namespace

bool Interval::Contains(double v) const {
  if (lo && (lo_closed ? v < *lo : v <= *lo)) return false;
  if (hi && (hi_closed ? v > *hi : v >= *hi)) return false;
  return true;
}

std::vector<std::string> SensitiveSpec::Labels() const {
  std::vector<std::string> out;
  if (kind == Kind::kIntervals) {
    for (const auto& b : bins) out.push_back(b.label);
  } else {
    for (const auto& c : categories) out.push_back(c.label);
  }
  return out;
}

std::optional<std::size_t> SensitiveSpec::Assign(double v) const {
  if (kind == Kind::kIntervals) {
    for (std::size_t i = 0; i < bins.size(); ++i) {
      if (bins[i].Contains(v)) return i;
    }
  } else {
    for (std::size_t i = 0; i < categories.size(); ++i) {
      if (categories[i].value == v) return i;
    }
  }
  return std::nullopt;
}

std::string NormalizeColumnName(std::string_view name) {
  std::string out;
  bool pending_space = false;
  for (char c : Trim(name)) {
    if (c == ' ' || c == '\t') {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

bool SchemaManifest::IsFeature(std::string_view column) const {
  return std::find(binary_columns.begin(), binary_columns.end(), column) !=
             binary_columns.end() ||
         std::find(continuous_columns.begin(), continuous_columns.end(),
                   column) != continuous_columns.end();
}

std::string SchemaManifest::DisplayName(const std::string& column) const {
  auto it = display_names.find(column);
  return it == display_names.end() ? column : it->second;
}

void SchemaManifest::Validate() const {
  if (target_column.empty()) {
    throw Error(ErrorCode::kSchema, "manifest has no target column");
  }
  std::set<std::string> seen;
  auto claim = [&](const std::string& col, const char* set_name) {
    if (col == target_column) {
      throw Error(ErrorCode::kSchema,
                  "target column '" + col + "' also listed in " + set_name,
                  col);
    }
    if (!seen.insert(col).second) {
      throw Error(ErrorCode::kSchema,
                  "column '" + col + "' listed in more than one role", col);
    }
  };
  for (const auto& c : id_columns) claim(c, "id_columns");
  for (const auto& c : binary_columns) claim(c, "binary_columns");
  for (const auto& c : continuous_columns) claim(c, "continuous_columns");
  if (binary_columns.empty() && continuous_columns.empty()) {
    throw Error(ErrorCode::kSchema, "manifest declares no feature columns");
  }

  std::set<std::string> attributes;
  for (const auto& spec : sensitive) {
    if (!attributes.insert(spec.attribute).second) {
      throw Error(ErrorCode::kSchema,
                  "duplicate sensitive attribute '" + spec.attribute + "'",
                  spec.attribute);
    }
    if (!IsFeature(spec.column)) {
      throw Error(ErrorCode::kSchema,
                  "sensitive attribute '" + spec.attribute +
                      "' references non-feature column '" + spec.column + "'",
                  spec.column);
    }
    if (spec.kind == SensitiveSpec::Kind::kIntervals) {
      CheckIntervalCoverage(spec);
    } else {
      std::set<double> values;
      for (const auto& c : spec.categories) {
        if (!values.insert(c.value).second) {
          throw Error(ErrorCode::kSchema,
                      "duplicate category value in '" + spec.attribute + "'",
                      spec.attribute);
        }
      }
      if (values.empty()) {
        throw Error(ErrorCode::kSchema,
                    "sensitive attribute '" + spec.attribute +
                        "' has no categories",
                    spec.attribute);
      }
    }
  }
  for (const auto& [col, b] : bounds) {
    if (!IsFeature(col)) {
      throw Error(ErrorCode::kSchema, "bounds given for unknown feature '" +
                                          col + "'", col);
    }
    if (!(b.min <= b.max)) {
      throw Error(ErrorCode::kSchema, "bounds for '" + col + "' are inverted",
                  col);
    }
  }
  if (bmi) {
    for (const auto* c : {&bmi->bmi_column, &bmi->weight_column,
                          &bmi->height_column}) {
      if (!IsFeature(*c)) {
        throw Error(ErrorCode::kSchema,
                    "bmi derivation references unknown feature '" + *c + "'",
                    *c);
      }
    }
  }
  for (const auto& c : whatif_controls) {
    if (!IsFeature(c)) {
      throw Error(ErrorCode::kSchema,
                  "what-if control '" + c + "' is not a feature", c);
    }
  }
}

SchemaManifest ParseManifest(std::string_view json_text) {
  SchemaManifest m;
  try {
    m = nlohmann::json::parse(json_text).get<SchemaManifest>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("malformed manifest: ") +
                                        e.what());
  }
  m.Validate();
  return m;
}

SchemaManifest LoadManifest(const std::string& path) {
  return ParseManifest(ReadFile(path));
}

std::string ManifestToJson(const SchemaManifest& manifest) {
  return nlohmann::json(manifest).dump(2);
}

// ---------------------------------------------------------------------------

LabeledDataset::LabeledDataset(std::vector<std::string> feature_names,
                               std::vector<FeatureRole> roles,
                               std::vector<double> values,
                               std::vector<int> labels,
                               std::vector<std::size_t> source_rows,
                               std::size_t raw_row_count)
    : feature_names_(std::move(feature_names)),
      roles_(std::move(roles)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      source_rows_(std::move(source_rows)),
      raw_row_count_(raw_row_count) {
  if (roles_.size() != feature_names_.size()) {
    throw Error(ErrorCode::kArgument, "feature role count mismatch");
  }
  if (values_.size() != labels_.size() * feature_names_.size()) {
    throw Error(ErrorCode::kArgument, "value matrix does not match shape");
  }
  for (int y : labels_) {
    if (y != 0 && y != 1) {
      throw Error(ErrorCode::kValidation, "labels must be 0 or 1");
    }
  }
  if (source_rows_.empty()) {
    source_rows_.resize(labels_.size());
    std::iota(source_rows_.begin(), source_rows_.end(), std::size_t{0});
  }
  if (source_rows_.size() != labels_.size()) {
    throw Error(ErrorCode::kArgument, "source row count mismatch");
  }
  if (raw_row_count_ == 0) raw_row_count_ = labels_.size();
}

std::optional<std::size_t> LabeledDataset::FeatureIndex(
    std::string_view name) const {
  auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  if (it == feature_names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - feature_names_.begin());
}

std::size_t LabeledDataset::PositiveCount() const {
  return static_cast<std::size_t>(
      std::count(labels_.begin(), labels_.end(), 1));
}

LabeledDataset LabeledDataset::Subset(
    std::span<const std::size_t> indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * cols());
  std::vector<int> labels;
  std::vector<std::size_t> source;
  for (std::size_t i : indices) {
    if (i >= rows()) throw Error(ErrorCode::kArgument, "row index out of range");
    auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
    source.push_back(source_rows_[i]);
  }
  return LabeledDataset(feature_names_, roles_, std::move(values),
                        std::move(labels), std::move(source), raw_row_count_);
}

LabeledDataset LabeledDataset::WithValues(std::vector<double> values) const {
  return LabeledDataset(feature_names_, roles_, std::move(values), labels_,
                        source_rows_, raw_row_count_);
}

LabeledDataset LoadDataset(std::string_view csv_text,
                           const SchemaManifest& manifest) {
  manifest.Validate();
  const csv::Table table = csv::Parse(csv_text);
  if (table.header.empty()) {
    throw Error(ErrorCode::kSchema, "table has no header row");
  }
  std::vector<std::string> header;
  for (const auto& h : table.header) header.push_back(NormalizeColumnName(h));

  auto column_of = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorCode::kSchema,
                  "declared column '" + name + "' not found in header", name);
    }
    return static_cast<std::size_t>(it - header.begin());
  };

  const std::size_t target_col = column_of(manifest.target_column);
  for (const auto& c : manifest.id_columns) column_of(c);

  struct Feature {
    std::size_t col;
    std::string name;
    FeatureRole role;
  };
  std::vector<Feature> features;
  for (const auto& c : manifest.binary_columns) {
    features.push_back({column_of(c), c, FeatureRole::kBinary});
  }
  for (const auto& c : manifest.continuous_columns) {
    features.push_back({column_of(c), c, FeatureRole::kContinuous});
  }
  std::sort(features.begin(), features.end(),
            [](const Feature& a, const Feature& b) { return a.col < b.col; });

  std::vector<double> values;
  std::vector<int> labels;
  std::vector<std::size_t> source;
  std::vector<double> row_values(features.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    auto cell = [&](std::size_t col) -> std::string_view {
      return col < cells.size() ? std::string_view(cells[col])
                                : std::string_view();
    };
    const std::optional<int> target = ParseTarget(cell(target_col));
    if (!target) continue;
    if (*target < 0) {
      throw Error(ErrorCode::kValidation,
                  "row " + std::to_string(r) + ": target value '" +
                      std::string(Trim(cell(target_col))) +
                      "' is not a binary label",
                  manifest.target_column);
    }
    bool complete = true;
    for (std::size_t f = 0; f < features.size() && complete; ++f) {
      auto v = ParseCell(cell(features[f].col));
      if (!v) {
        complete = false;
        break;
      }
      row_values[f] = *v;
    }
    if (!complete) continue;
    for (std::size_t f = 0; f < features.size(); ++f) {
      if (features[f].role == FeatureRole::kBinary && row_values[f] != 0.0 &&
          row_values[f] != 1.0) {
        throw Error(ErrorCode::kValidation,
                    "row " + std::to_string(r) + ": binary column '" +
                        features[f].name + "' holds " +
                        csv::FormatNumber(row_values[f]),
                    features[f].name);
      }
    }
    values.insert(values.end(), row_values.begin(), row_values.end());
    labels.push_back(*target);
    source.push_back(r);
  }
  if (labels.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no rows left after cleaning");
  }
  std::vector<std::string> names;
  std::vector<FeatureRole> roles;
  for (const auto& f : features) {
    names.push_back(f.name);
    roles.push_back(f.role);
  }
  return LabeledDataset(std::move(names), std::move(roles), std::move(values),
                        std::move(labels), std::move(source),
                        table.rows.size());
}

LabeledDataset LoadDatasetFile(const std::string& path,
                               const SchemaManifest& manifest) {
  return LoadDataset(ReadFile(path), manifest);
}

// ---------------------------------------------------------------------------

namespace {

std::size_t RoundHalfUp(double x) {
  return static_cast<std::size_t>(std::floor(x + 0.5 + 1e-9));
}

std::vector<std::vector<std::size_t>> IndicesByClass(
    std::span<const int> labels) {
  std::vector<std::vector<std::size_t>> by_class(2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw Error(ErrorCode::kArgument, "labels must be 0 or 1");
    }
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  return by_class;
}

}  // namespace

SplitIndices StratifiedSplit(std::span<const int> labels, double test_fraction,
                             std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kArgument, "test_fraction must lie in [0, 1)",
                "test_fraction");
  }
  auto by_class = IndicesByClass(labels);
  if (test_fraction > 0.0 && (by_class[0].empty() || by_class[1].empty())) {
    throw Error(ErrorCode::kArgument,
                "stratified split needs both classes present");
  }
  Rng rng(seed);
  std::array<std::size_t, 2> take{};
  for (std::size_t c = 0; c < 2; ++c) {
    Shuffle(by_class[c].begin(), by_class[c].end(), rng);
    take[c] = RoundHalfUp(test_fraction * by_class[c].size());
  }
  const std::size_t majority = by_class[1].size() > by_class[0].size() ? 1 : 0;
  const auto total = static_cast<std::ptrdiff_t>(
      RoundHalfUp(test_fraction * labels.size()));
  const auto diff =
      total - static_cast<std::ptrdiff_t>(take[0] + take[1]);
  const auto adjusted = static_cast<std::ptrdiff_t>(take[majority]) + diff;
  take[majority] = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
      adjusted, 0, static_cast<std::ptrdiff_t>(by_class[majority].size())));

  SplitIndices out;
  out.seed = seed;
  out.test_fraction = test_fraction;
  for (std::size_t c = 0; c < 2; ++c) {
    out.test.insert(out.test.end(), by_class[c].begin(),
                    by_class[c].begin() + static_cast<std::ptrdiff_t>(take[c]));
    out.train.insert(out.train.end(),
                     by_class[c].begin() + static_cast<std::ptrdiff_t>(take[c]),
                     by_class[c].end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::vector<std::vector<std::size_t>> StratifiedKFold(
    std::span<const int> labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::kArgument, "need at least 2 folds");
  if (labels.size() < static_cast<std::size_t>(folds)) {
    throw Error(ErrorCode::kArgument, "fewer records than folds");
  }
  auto by_class = IndicesByClass(labels);
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
  std::size_t cursor = 0;
  for (auto& members : by_class) {
    Shuffle(members.begin(), members.end(), rng);
    for (std::size_t i : members) {
      out[cursor].push_back(i);
      cursor = (cursor + 1) % out.size();
    }
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

std::vector<std::size_t> Complement(std::span<const std::size_t> held_out,
                                    std::size_t n) {
  std::vector<char> mask(n, 0);
  for (std::size_t i : held_out) mask.at(i) = 1;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask[i]) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

ScalerParams FitScaler(const LabeledDataset& train) {
  if (train.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "cannot fit scaler on no rows");
  }
  ScalerParams p;
  const std::size_t n = train.rows();
  for (std::size_t j = 0; j < train.cols(); ++j) {
    if (train.roles()[j] != FeatureRole::kContinuous) continue;
    double lo = train.at(0, j), hi = lo, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = train.at(i, j);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    double mean = sum / static_cast<double>(n);
    double sd = 0.0;
    if (lo == hi) {
      mean = lo;
    } else {
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = train.at(i, j) - mean;
        ss += d * d;
      }
      sd = std::sqrt(ss / static_cast<double>(n));
    }
    p.columns.push_back(train.feature_names()[j]);
    p.mean.push_back(mean);
    p.stddev.push_back(sd);
  }
  return p;
}

namespace {

// Position of each scaler column in `feature_names`; throws on mismatch with
// the continuous set implied by `roles` (when given).
std::vector<std::size_t> ScalerColumns(
    const ScalerParams& params, const std::vector<std::string>& feature_names,
    const std::vector<FeatureRole>* roles) {
  std::vector<std::size_t> pos;
  for (const auto& c : params.columns) {
    auto it = std::find(feature_names.begin(), feature_names.end(), c);
    if (it == feature_names.end()) {
      throw Error(ErrorCode::kSchema,
                  "scaler column '" + c + "' missing from data", c);
    }
    pos.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  if (roles) {
    for (std::size_t j = 0; j < roles->size(); ++j) {
      if ((*roles)[j] == FeatureRole::kContinuous &&
          std::find(pos.begin(), pos.end(), j) == pos.end()) {
        throw Error(ErrorCode::kSchema,
                    "continuous column '" + feature_names[j] +
                        "' has no scaler parameters",
                    feature_names[j]);
      }
      if ((*roles)[j] == FeatureRole::kBinary &&
          std::find(pos.begin(), pos.end(), j) != pos.end()) {
        throw Error(ErrorCode::kSchema,
                    "binary column '" + feature_names[j] + "' has scaler "
                    "parameters",
                    feature_names[j]);
      }
    }
  }
  return pos;
}

double ScaleValue(double v, double mean, double sd) {
  return sd > 0.0 ? (v - mean) / sd : v - mean;
}

}  // namespace

LabeledDataset ApplyScaler(const ScalerParams& params,
                           const LabeledDataset& data) {
  const auto pos = ScalerColumns(params, data.feature_names(), &data.roles());
  std::vector<double> values(data.values().begin(), data.values().end());
  const std::size_t d = data.cols();
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t k = 0; k < pos.size(); ++k) {
      double& v = values[i * d + pos[k]];
      v = ScaleValue(v, params.mean[k], params.stddev[k]);
    }
  }
  return data.WithValues(std::move(values));
}

std::vector<double> ApplyScaler(const ScalerParams& params,
                                const std::vector<std::string>& feature_names,
                                std::span<const double> raw) {
  if (raw.size() != feature_names.size()) {
    throw Error(ErrorCode::kArgument, "feature vector has wrong dimension");
  }
  const auto pos = ScalerColumns(params, feature_names, nullptr);
  std::vector<double> out(raw.begin(), raw.end());
  for (std::size_t k = 0; k < pos.size(); ++k) {
    out[pos[k]] = ScaleValue(out[pos[k]], params.mean[k], params.stddev[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------

SubgroupAssignment DeriveSubgroups(const LabeledDataset& raw,
                                   const SchemaManifest& manifest) {
  SubgroupAssignment out;
  for (const auto& spec : manifest.sensitive) {
    auto col = raw.FeatureIndex(spec.column);
    if (!col) {
      throw Error(ErrorCode::kSchema,
                  "sensitive column '" + spec.column + "' not in dataset",
                  spec.column);
    }
    std::vector<std::size_t> labels(raw.rows());
    for (std::size_t i = 0; i < raw.rows(); ++i) {
      const double v = raw.at(i, *col);
      auto g = spec.Assign(v);
      if (!g) {
        throw Error(ErrorCode::kAssignment,
                    "record " + std::to_string(i) + ": value " +
                        csv::FormatNumber(v) + " of '" + spec.attribute +
                        "' falls outside every bin",
                    spec.attribute);
      }
      labels[i] = *g;
    }
    out.attributes.push_back(spec.attribute);
    out.groups.push_back(spec.Labels());
    out.labels.push_back(std::move(labels));
  }
  return out;
}

}  // namespace pcosrisk
