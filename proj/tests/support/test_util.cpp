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

#include "test_util.hpp"

#include <filesystem>

#include "pcosrisk/clinical.hpp"
#include "pcosrisk/synthetic.hpp"

namespace pcosrisk::testing {

std::string ConfigPath(const std::string& file) {
  return std::string(PCOSRISK_TEST_CONFIG_DIR) + "/" + file;
}

std::string GoldenPath(const std::string& file) {
  return std::string(PCOSRISK_TEST_GOLDEN_DIR) + "/" + file;
}

std::string TempPath(const std::string& file) {
  const auto dir = std::filesystem::temp_directory_path() / "pcosrisk_tests";
  std::filesystem::create_directories(dir);
  return (dir / file).string();
}

SchemaManifest KeralaManifest() {
  return LoadManifest(ConfigPath("kerala_manifest.json"));
}

ClinicalConfig KeralaCriteria() {
  return LoadClinicalConfig(ConfigPath("rotterdam_criteria.json"));
}

LabeledDataset MakeDataset(std::vector<double> values, std::vector<int> labels,
                           std::size_t cols) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < cols; ++j) names.push_back("f" + std::to_string(j));
  const std::size_t n = labels.size();
  std::vector<std::size_t> source(n);
  for (std::size_t i = 0; i < n; ++i) source[i] = i;
  return LabeledDataset(std::move(names),
                        std::vector<FeatureRole>(cols, FeatureRole::kContinuous),
                        std::move(values), std::move(labels), std::move(source),
                        n);
}

SchemaManifest TinyManifest() {
  return ParseManifest(R"({
    "target": "y",
    "id_columns": ["id"],
    "binary_columns": ["b"],
    "continuous_columns": ["x"]
  })");
}

PipelineOptions QuickOptions(std::uint64_t seed) {
  PipelineOptions o;
  o.seed = seed;
  o.forest_grid = {ForestParams{.n_estimators = 30, .max_depth = 6},
                   ForestParams{.n_estimators = 30, .max_depth = 8}};
  o.gbt_grid = {GbtParams{.n_estimators = 30, .max_depth = 3}};
  o.svm_grid = {SvmParams{.c = 1.0, .gamma = 0.02},
                SvmParams{.c = 2.0, .gamma = 0.01}};
  return o;
}

const PipelineResult& SharedPipeline() {
  static const PipelineResult result = [] {
    const SchemaManifest manifest = KeralaManifest();
    const LabeledDataset data =
        LoadDataset(SyntheticKeralaCsv(300, 11), manifest);
    PipelineResult r =
        TrainPipeline(data, manifest, KeralaCriteria(), QuickOptions());
    SerializeBundle(r.bundle);  // fills the content hash
    return r;
  }();
  return result;
}

}  // namespace pcosrisk::testing
