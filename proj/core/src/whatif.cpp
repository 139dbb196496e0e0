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

#include "pcosrisk/whatif.hpp"

#include "pcosrisk/csv.hpp"
#include "pcosrisk/error.hpp"

namespace pcosrisk {

WhatIfResult WhatIf(const ModelBundle& bundle, const WhatIfScenario& scenario) {
  const SchemaManifest& manifest = bundle.manifest;
  FeatureMap modified = scenario.base;
  for (const auto& [name, value] : scenario.overrides) {
    if (!scenario.base.contains(name) && !manifest.IsFeature(name)) {
      throw Error(ErrorCode::kValidation,
                  "unknown feature '" + name + "' in overrides", name);
    }
    auto b = manifest.bounds.find(name);
    if (b != manifest.bounds.end()) {
      if (value < b->second.min) {
        throw Error(ErrorCode::kValidation,
                    name + " = " + csv::FormatNumber(value) +
                        " is below the lower bound " +
                        csv::FormatNumber(b->second.min),
                    name);
      }
      if (value > b->second.max) {
        throw Error(ErrorCode::kValidation,
                    name + " = " + csv::FormatNumber(value) +
                        " is above the upper bound " +
                        csv::FormatNumber(b->second.max),
                    name);
      }
    }
    modified[name] = value;
  }

  if (scenario.recompute_bmi && manifest.bmi) {
    const BmiDerivation& d = *manifest.bmi;
    const bool touched = scenario.overrides.contains(d.weight_column) ||
                         scenario.overrides.contains(d.height_column);
    if (touched && !scenario.overrides.contains(d.bmi_column)) {
      auto w = modified.find(d.weight_column);
      auto h = modified.find(d.height_column);
      if (w == modified.end() || h == modified.end() || h->second <= 0.0) {
        throw Error(ErrorCode::kValidation,
                    "BMI recompute needs weight and a positive height",
                    d.height_column);
      }
      const double metres = h->second * d.height_scale;
      modified[d.bmi_column] = w->second / (metres * metres);
    }
  }

  WhatIfResult r;
  r.model_tag =
      scenario.model_tag.empty() ? bundle.default_model : scenario.model_tag;
  r.baseline_features = ProfileVector(bundle, scenario.base);
  r.scenario_features = ProfileVector(bundle, modified);
  r.baseline_risk =
      PredictCalibrated(bundle, r.baseline_features, r.model_tag);
  r.scenario_risk =
      PredictCalibrated(bundle, r.scenario_features, r.model_tag);
  r.delta = r.scenario_risk - r.baseline_risk;
  r.baseline_top =
      TopKExplanation(ExplainProfile(bundle, r.baseline_features),
                      scenario.top_k, bundle.feature_names, r.baseline_features);
  r.scenario_top =
      TopKExplanation(ExplainProfile(bundle, r.scenario_features),
                      scenario.top_k, bundle.feature_names, r.scenario_features);
  return r;
}

}  // namespace pcosrisk
