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

#ifndef PCOSRISK_CLINICAL_HPP_
#define PCOSRISK_CLINICAL_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcosrisk {

// Raw (unscaled) feature values keyed by schema column name.
using FeatureMap = std::map<std::string, double>;

enum class CompareOp { kGreaterEqual, kGreater, kLessEqual, kLess, kEqual };

std::string_view CompareOpSymbol(CompareOp op);
bool Compare(double lhs, CompareOp op, double rhs);

struct CriterionRule {
  std::string column;
  CompareOp op = CompareOp::kGreaterEqual;
  double value = 0.0;
  std::string description;
};

// A criterion is met when at least `min_true` of its rules hold.
struct CriterionSpec {
  std::string name;
  std::vector<CriterionRule> rules;
  int min_true = 1;
  // Rules stand in for a measurement the data does not carry.
  bool proxy = false;
  std::string proxy_note;
};

struct ReferenceBand {
  std::string name;
  std::string column;
  // When set, the indicator is column / denominator_column.
  std::optional<std::string> denominator_column;
  // In band iff low <= value < high; a missing side is unbounded.
  std::optional<double> low;
  std::optional<double> high;
  std::string unit;
};

struct ClinicalConfig {
  CriterionSpec oligo_anovulation;
  CriterionSpec hyperandrogenism;
  CriterionSpec pcom;
  int threshold = 2;
  std::vector<ReferenceBand> indicators;
};

ClinicalConfig ParseClinicalConfig(std::string_view json_text);
ClinicalConfig LoadClinicalConfig(const std::string& path);
std::string ClinicalConfigToJson(const ClinicalConfig& config);

enum class CriterionState { kMet, kNotMet, kIndeterminate };
std::string CriterionStateName(CriterionState state);

struct CriterionResult {
  std::string key;
  std::string name;
  CriterionState state = CriterionState::kNotMet;
  std::string rationale;

  bool met() const { return state == CriterionState::kMet; }
};

struct RotterdamAssessment {
  CriterionResult oligo_anovulation;
  CriterionResult hyperandrogenism;
  CriterionResult pcom;
  int criteria_met_count = 0;
  bool meets_threshold = false;
  std::string statement;
};

inline constexpr std::string_view kScreeningDisclaimer =
    "screening, not diagnosis";

// A rule whose column is absent from `features` is unknown; a criterion that
// could still reach `min_true` through unknown rules is indeterminate.
RotterdamAssessment EvaluateRotterdam(const FeatureMap& features,
                                      const ClinicalConfig& config);

struct IndicatorReading {
  std::string name;
  std::string unit;
  bool present = false;
  double value = 0.0;
  std::optional<double> low;
  std::optional<double> high;
  bool in_band = false;
};

struct SupportiveIndicators {
  std::vector<IndicatorReading> readings;
};

// Display-only context; never feeds the risk or the Rotterdam outcome.
SupportiveIndicators EvaluateSupportiveIndicators(const FeatureMap& features,
                                                  const ClinicalConfig& config);

}  // namespace pcosrisk

#endif  // PCOSRISK_CLINICAL_HPP_
