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

#ifndef PCOSRISK_DATASET_HPP_
#define PCOSRISK_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcosrisk {

enum class FeatureRole { kBinary, kContinuous };

// One bin of an interval binning rule. Absent bounds are infinite.
struct Interval {
  std::string label;
  std::optional<double> lo;
  std::optional<double> hi;
  bool lo_closed = true;
  bool hi_closed = false;

  bool Contains(double v) const;
};

struct Category {
  double value = 0.0;
  std::string label;
};

// How one sensitive attribute is derived from a feature column.
struct SensitiveSpec {
  enum class Kind { kIntervals, kCategorical };

  std::string attribute;
  std::string column;
  Kind kind = Kind::kIntervals;
  std::vector<Interval> bins;
  std::vector<Category> categories;

  std::vector<std::string> Labels() const;
  // Index into Labels(). Returns nullopt when no bin holds `v`.
  std::optional<std::size_t> Assign(double v) const;
};

struct FeatureBounds {
  double min = 0.0;
  double max = 0.0;
};

// BMI = weight / (height * height_scale)^2.
struct BmiDerivation {
  std::string bmi_column;
  std::string weight_column;
  std::string height_column;
  double height_scale = 0.01;
};

// Column roles, subgroup binning, and what-if bounds for one tabular source.
// Header columns not named anywhere in the manifest are ignored on load.
struct SchemaManifest {
  std::string name;
  std::string target_column;
  std::vector<std::string> id_columns;
  std::vector<std::string> binary_columns;
  std::vector<std::string> continuous_columns;
  std::vector<SensitiveSpec> sensitive;
  std::map<std::string, FeatureBounds> bounds;
  std::optional<BmiDerivation> bmi;
  // Plain-language names used in patient-facing explanations.
  std::map<std::string, std::string> display_names;
  // Features exposed as what-if controls.
  std::vector<std::string> whatif_controls;

  // Throws Error(kSchema) on overlapping column sets, a target listed as a
  // feature, sensitive specs on non-feature columns, or binning rules that do
  // not tile the real line.
  void Validate() const;

  bool IsFeature(std::string_view column) const;
  std::string DisplayName(const std::string& column) const;
};

SchemaManifest ParseManifest(std::string_view json_text);
SchemaManifest LoadManifest(const std::string& path);
std::string ManifestToJson(const SchemaManifest& manifest);

// Trims and collapses internal whitespace runs so header spelling quirks
// ("Height(Cm) ", " Age (yrs)") match manifest names.
std::string NormalizeColumnName(std::string_view name);

class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::vector<std::string> feature_names,
                 std::vector<FeatureRole> roles, std::vector<double> values,
                 std::vector<int> labels,
                 std::vector<std::size_t> source_rows = {},
                 std::size_t raw_row_count = 0);

  std::size_t rows() const { return labels_.size(); }
  std::size_t cols() const { return feature_names_.size(); }
  bool empty() const { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols(), cols()};
  }
  double at(std::size_t i, std::size_t j) const {
    return values_[i * cols() + j];
  }
  std::span<const double> values() const { return values_; }
  std::span<const int> labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  const std::vector<FeatureRole>& roles() const { return roles_; }
  // 0-based index of each row among the raw table's data rows.
  const std::vector<std::size_t>& source_rows() const { return source_rows_; }
  std::size_t raw_row_count() const { return raw_row_count_; }

  std::optional<std::size_t> FeatureIndex(std::string_view name) const;
  std::size_t PositiveCount() const;

  LabeledDataset Subset(std::span<const std::size_t> indices) const;
  LabeledDataset WithValues(std::vector<double> values) const;

 private:
  std::vector<std::string> feature_names_;
  std::vector<FeatureRole> roles_;
  std::vector<double> values_;
  std::vector<int> labels_;
  std::vector<std::size_t> source_rows_;
  std::size_t raw_row_count_ = 0;
};

// Drops ID columns, deletes rows with a missing or non-numeric cell in any
// manifest column, encodes the target to 0/1, and checks binary columns.
// Feature order follows the raw header.
LabeledDataset LoadDataset(std::string_view csv_text,
                           const SchemaManifest& manifest);
LabeledDataset LoadDatasetFile(const std::string& path,
                               const SchemaManifest& manifest);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;
  double test_fraction = 0.0;
};

// Round-half-up allocation per class, any surplus or deficit against the
// overall rounded total applied to the majority class. Index lists are
// returned sorted.
SplitIndices StratifiedSplit(std::span<const int> labels, double test_fraction,
                             std::uint64_t seed);

// Held-out index list per fold. Each class is shuffled and dealt round-robin,
// continuing the fold cursor across classes so fold sizes differ by <= 1.
std::vector<std::vector<std::size_t>> StratifiedKFold(
    std::span<const int> labels, int folds, std::uint64_t seed);

// Complement of `held_out` in [0, n), sorted.
std::vector<std::size_t> Complement(std::span<const std::size_t> held_out,
                                    std::size_t n);

struct ScalerParams {
  std::vector<std::string> columns;
  std::vector<double> mean;
  // Population standard deviation; 0 marks a constant column that is only
  // mean-centred.
  std::vector<double> stddev;
};

ScalerParams FitScaler(const LabeledDataset& train);
LabeledDataset ApplyScaler(const ScalerParams& params,
                           const LabeledDataset& data);
// Scales one raw feature vector laid out as `feature_names`.
std::vector<double> ApplyScaler(const ScalerParams& params,
                                const std::vector<std::string>& feature_names,
                                std::span<const double> raw);

struct SubgroupAssignment {
  std::vector<std::string> attributes;
  // Declared labels per attribute, in manifest order.
  std::vector<std::vector<std::string>> groups;
  // labels[a][i] indexes groups[a] for record i.
  std::vector<std::vector<std::size_t>> labels;

  std::size_t records() const {
    return labels.empty() ? 0 : labels.front().size();
  }
};

// Must be given unscaled values.
SubgroupAssignment DeriveSubgroups(const LabeledDataset& raw,
                                   const SchemaManifest& manifest);

}  // namespace pcosrisk

#endif  // PCOSRISK_DATASET_HPP_
