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

#ifndef PCOSRISK_PIPELINE_HPP_
#define PCOSRISK_PIPELINE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pcosrisk/bundle.hpp"

namespace pcosrisk {

struct PipelineOptions {
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  int folds = 5;
  int bins = 10;
  FairnessPolicy policy;
  std::vector<ForestParams> forest_grid = DefaultForestGrid();
  std::vector<GbtParams> gbt_grid = DefaultGbtGrid();
  // Empty selects DefaultSvmGrid for the dataset's feature count.
  std::vector<SvmParams> svm_grid;
  std::function<void(const std::string&)> log;
};

struct PipelineResult {
  ModelBundle bundle;
  SplitIndices split;
  LabeledDataset test_raw;
  LabeledDataset test_scaled;
  SubgroupAssignment test_groups;
  // Held-out predictions per model tag.
  std::map<std::string, PredictionSet> test_predictions;
};

// Split, scale, grid-search the three learners, wrap each with both
// calibrators, then evaluate, audit and explain on the held-out split.
PipelineResult TrainPipeline(const LabeledDataset& data,
                             const SchemaManifest& manifest,
                             const ClinicalConfig& clinical,
                             const PipelineOptions& options);

// Held-out metrics for one set of predictions.
MetricSummary SummarizePredictions(const std::string& tag,
                                   const PredictionSet& ps);

}  // namespace pcosrisk

#endif  // PCOSRISK_PIPELINE_HPP_
