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

#ifndef PCOSRISK_WHATIF_HPP_
#define PCOSRISK_WHATIF_HPP_

#include <cstddef>
#include <string>

#include "pcosrisk/bundle.hpp"

namespace pcosrisk {

struct WhatIfScenario {
  FeatureMap base;
  FeatureMap overrides;
  // Recompute BMI from weight and height when either is overridden and BMI
  // itself is not.
  bool recompute_bmi = true;
  // Empty selects the bundle default.
  std::string model_tag;
  std::size_t top_k = 3;
};

struct WhatIfResult {
  std::string model_tag;
  double baseline_risk = 0.0;
  double scenario_risk = 0.0;
  double delta = 0.0;
  std::vector<double> baseline_features;  // raw, bundle order
  std::vector<double> scenario_features;  // raw, bundle order
  Explanation baseline_top;
  Explanation scenario_top;
};

// Overrides outside the manifest bounds raise Error(kValidation) naming the
// feature and the violated bound.
WhatIfResult WhatIf(const ModelBundle& bundle, const WhatIfScenario& scenario);

}  // namespace pcosrisk

#endif  // PCOSRISK_WHATIF_HPP_
