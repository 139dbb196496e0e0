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

#ifndef PCOSRISK_SHAP_HPP_
#define PCOSRISK_SHAP_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcosrisk/dataset.hpp"
#include "pcosrisk/models.hpp"
#include "pcosrisk/tree.hpp"

namespace pcosrisk {

// Local accuracy: base_value + sum(phi) == output.
struct AttributionSet {
  std::vector<double> phi;
  double base_value = 0.0;
  double output = 0.0;
  std::vector<double> feature_values;
};

// Path-dependent TreeSHAP: absent features follow both children weighted by
// training cover. Attributions are on the leaf value (positive-class
// probability for classification trees). Throws Error(kModel) when a node
// has no cover.
AttributionSet TreeShap(const DecisionTree& tree, std::span<const double> x);
// Mean of the per-tree attributions.
AttributionSet TreeShap(const RandomForestModel& forest,
                        std::span<const double> x);

// Cover-weighted mean leaf value.
double ExpectedValue(const DecisionTree& tree);

// Exact Shapley values by enumerating every subset of the features the tree
// splits on, with the same cover-weighted value function. Throws
// Error(kCostGuard) above `max_features` distinct split features.
AttributionSet BruteForceShap(const DecisionTree& tree,
                              std::span<const double> x,
                              std::size_t max_features = 15);

struct GlobalImportance {
  std::vector<std::string> feature_names;
  std::vector<double> mean_abs_phi;
  // Feature indices by descending importance, ties by index.
  std::vector<std::size_t> ranking;
};

GlobalImportance ComputeGlobalImportance(const RandomForestModel& forest,
                                         const LabeledDataset& data);

// feature,mean_abs_shap,rank
std::string GlobalImportanceToCsv(const GlobalImportance& importance);

struct Contribution {
  std::size_t feature = 0;
  std::string name;
  double phi = 0.0;
  double value = 0.0;
  std::string direction;  // "raises risk" | "lowers risk"
};

struct Explanation {
  std::vector<Contribution> items;
  bool all_zero = false;
};

// Non-zero attributions by descending |phi| (ties by index), at most k.
// `raw_values` overrides the echoed values when given.
Explanation TopKExplanation(const AttributionSet& attribution, std::size_t k,
                            const std::vector<std::string>& names = {},
                            std::span<const double> raw_values = {});

}  // namespace pcosrisk

#endif  // PCOSRISK_SHAP_HPP_
