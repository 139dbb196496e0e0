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

#include "pcosrisk/clinical.hpp"

#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "pcosrisk/csv.hpp"
#include "pcosrisk/error.hpp"

namespace pcosrisk {

std::string_view CompareOpSymbol(CompareOp op) {
  switch (op) {
    case CompareOp::kGreaterEqual: return ">=";
    case CompareOp::kGreater: return ">";
    case CompareOp::kLessEqual: return "<=";
    case CompareOp::kLess: return "<";
    case CompareOp::kEqual: return "==";
  }
  return "?";
}

bool Compare(double lhs, CompareOp op, double rhs) {
  switch (op) {
    case CompareOp::kGreaterEqual: return lhs >= rhs;
    case CompareOp::kGreater: return lhs > rhs;
    case CompareOp::kLessEqual: return lhs <= rhs;
    case CompareOp::kLess: return lhs < rhs;
    case CompareOp::kEqual: return lhs == rhs;
  }
  return false;
}

ClinicalConfig ParseClinicalConfig(std::string_view json_text) {
  ClinicalConfig config;
  try {
    config = nlohmann::json::parse(json_text).get<ClinicalConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema,
                std::string("malformed criteria config: ") + e.what());
  }
  for (const CriterionSpec* c :
       {&config.oligo_anovulation, &config.hyperandrogenism, &config.pcom}) {
    if (c->rules.empty() || c->min_true < 1 ||
        c->min_true > static_cast<int>(c->rules.size())) {
      throw Error(ErrorCode::kSchema,
                  "criterion '" + c->name + "' has an unsatisfiable rule set",
                  c->name);
    }
  }
  if (config.threshold < 1 || config.threshold > 3) {
    throw Error(ErrorCode::kSchema, "Rotterdam threshold must be 1..3",
                "threshold");
  }
  return config;
}

ClinicalConfig LoadClinicalConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseClinicalConfig(ss.str());
}

std::string ClinicalConfigToJson(const ClinicalConfig& config) {
  return nlohmann::json(config).dump(2);
}

std::string CriterionStateName(CriterionState state) {
  switch (state) {
    case CriterionState::kMet: return "met";
    case CriterionState::kNotMet: return "not met";
    case CriterionState::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

namespace {

CriterionResult EvaluateCriterion(const std::string& key,
                                  const CriterionSpec& spec,
                                  const FeatureMap& features) {
  int holds = 0, unknown = 0;
  std::string detail;
  for (const auto& rule : spec.rules) {
    if (!detail.empty()) detail += "; ";
    const std::string test = rule.column + " " +
                             std::string(CompareOpSymbol(rule.op)) + " " +
                             csv::FormatNumber(rule.value);
    auto it = features.find(rule.column);
    if (it == features.end()) {
      ++unknown;
      detail += test + " unknown (feature missing)";
      continue;
    }
    const bool ok = Compare(it->second, rule.op, rule.value);
    holds += ok;
    detail += test + (ok ? " holds" : " fails") + " (value " +
              csv::FormatNumber(it->second) + ")";
  }
  CriterionResult r;
  r.key = key;
  r.name = spec.name;
  if (holds >= spec.min_true) {
    r.state = CriterionState::kMet;
  } else if (holds + unknown >= spec.min_true) {
    r.state = CriterionState::kIndeterminate;
  } else {
    r.state = CriterionState::kNotMet;
  }
  r.rationale = spec.name + ": " + std::to_string(holds) + " of " +
                std::to_string(spec.rules.size()) + " signs present (need " +
                std::to_string(spec.min_true) + ") -> " +
                CriterionStateName(r.state) + ". " + detail + ".";
  if (spec.proxy) {
    r.rationale += " Clinical proxy";
    if (!spec.proxy_note.empty()) r.rationale += ": " + spec.proxy_note;
    r.rationale += ".";
  }
  return r;
}

}  // namespace

RotterdamAssessment EvaluateRotterdam(const FeatureMap& features,
                                      const ClinicalConfig& config) {
  RotterdamAssessment a;
  a.oligo_anovulation = EvaluateCriterion(
      "oligo_anovulation", config.oligo_anovulation, features);
  a.hyperandrogenism =
      EvaluateCriterion("hyperandrogenism", config.hyperandrogenism, features);
  a.pcom = EvaluateCriterion("pcom", config.pcom, features);
  int indeterminate = 0;
  for (const CriterionResult* c :
       {&a.oligo_anovulation, &a.hyperandrogenism, &a.pcom}) {
    a.criteria_met_count += c->met();
    indeterminate += c->state == CriterionState::kIndeterminate;
  }
  a.meets_threshold = a.criteria_met_count >= config.threshold;
  a.statement = "Profile meets " + std::to_string(a.criteria_met_count) +
                " of 3 Rotterdam criteria (threshold " +
                std::to_string(config.threshold) + "): " +
                (a.meets_threshold ? "requirements met"
                                   : "requirements not met");
  if (!a.meets_threshold && indeterminate > 0 &&
      a.criteria_met_count + indeterminate >= config.threshold) {
    a.statement += " with " + std::to_string(indeterminate) +
                   " criterion(s) indeterminate for missing data";
  }
  a.statement += ". This is " + std::string(kScreeningDisclaimer) + ".";
  return a;
}

SupportiveIndicators EvaluateSupportiveIndicators(const FeatureMap& features,
                                                  const ClinicalConfig& config) {
  SupportiveIndicators out;
  for (const auto& band : config.indicators) {
    IndicatorReading r;
    r.name = band.name;
    r.unit = band.unit;
    r.low = band.low;
    r.high = band.high;
    auto num = features.find(band.column);
    if (num != features.end()) {
      if (band.denominator_column) {
        auto den = features.find(*band.denominator_column);
        if (den != features.end() && den->second != 0.0) {
          r.present = true;
          r.value = num->second / den->second;
        }
      } else {
        r.present = true;
        r.value = num->second;
      }
    }
    if (r.present) {
      r.in_band = (!r.low || r.value >= *r.low) && (!r.high || r.value < *r.high);
    }
    out.readings.push_back(std::move(r));
  }
  return out;
}

}  // namespace pcosrisk
