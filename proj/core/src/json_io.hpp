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

// JSON mappings for the persisted types. Private to the core library.

#ifndef PCOSRISK_SRC_JSON_IO_HPP_
#define PCOSRISK_SRC_JSON_IO_HPP_

#include <json.hpp>

#include "pcosrisk/calibration.hpp"
#include "pcosrisk/clinical.hpp"
#include "pcosrisk/dataset.hpp"
#include "pcosrisk/fairness.hpp"
#include "pcosrisk/metrics.hpp"
#include "pcosrisk/models.hpp"
#include "pcosrisk/shap.hpp"
#include "pcosrisk/tree.hpp"

namespace pcosrisk {

using Json = nlohmann::json;

#define PCOSRISK_JSON_DECLARE(Type)         \
  void to_json(Json& j, const Type& value); \
  void from_json(const Json& j, Type& value)

PCOSRISK_JSON_DECLARE(Interval);
PCOSRISK_JSON_DECLARE(Category);
PCOSRISK_JSON_DECLARE(SensitiveSpec);
PCOSRISK_JSON_DECLARE(BmiDerivation);
PCOSRISK_JSON_DECLARE(SchemaManifest);
PCOSRISK_JSON_DECLARE(FeatureRole);
PCOSRISK_JSON_DECLARE(ScalerParams);

PCOSRISK_JSON_DECLARE(CriterionRule);
PCOSRISK_JSON_DECLARE(CriterionSpec);
PCOSRISK_JSON_DECLARE(ReferenceBand);
PCOSRISK_JSON_DECLARE(ClinicalConfig);

PCOSRISK_JSON_DECLARE(DecisionTree);
PCOSRISK_JSON_DECLARE(ForestParams);
PCOSRISK_JSON_DECLARE(RandomForestModel);
PCOSRISK_JSON_DECLARE(GbtParams);
PCOSRISK_JSON_DECLARE(GradientBoostedModel);
PCOSRISK_JSON_DECLARE(SvmParams);
PCOSRISK_JSON_DECLARE(SvmModel);
PCOSRISK_JSON_DECLARE(BaseModel);
PCOSRISK_JSON_DECLARE(IsotonicCalibrator);
PCOSRISK_JSON_DECLARE(PlattCalibrator);
PCOSRISK_JSON_DECLARE(Calibrator);
PCOSRISK_JSON_DECLARE(CalibratedModel);
PCOSRISK_JSON_DECLARE(GridEntry);
PCOSRISK_JSON_DECLARE(CvResult);

PCOSRISK_JSON_DECLARE(ClassificationReport);
PCOSRISK_JSON_DECLARE(GroupResult);
PCOSRISK_JSON_DECLARE(AttributeResult);
PCOSRISK_JSON_DECLARE(SubgroupReport);
PCOSRISK_JSON_DECLARE(DisparityFlag);
PCOSRISK_JSON_DECLARE(ReliabilityBin);
PCOSRISK_JSON_DECLARE(BinnedReliability);
PCOSRISK_JSON_DECLARE(NetBenefitPoint);
PCOSRISK_JSON_DECLARE(GlobalImportance);

#undef PCOSRISK_JSON_DECLARE

// std::optional<double> <-> number or null.
Json OptionalToJson(const std::optional<double>& v);
std::optional<double> OptionalFromJson(const Json& j, const char* key);

}  // namespace pcosrisk

#endif  // PCOSRISK_SRC_JSON_IO_HPP_
