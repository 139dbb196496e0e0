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

#ifndef PCOSRISK_FAIRNESS_HPP_
#define PCOSRISK_FAIRNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcosrisk/dataset.hpp"
#include "pcosrisk/metrics.hpp"

namespace pcosrisk {

struct GroupResult {
  std::string label;
  std::size_t size = 0;
  ClassificationReport report;
};

struct AttributeResult {
  std::string attribute;
  std::vector<GroupResult> groups;  // every declared group, even empty ones
};

struct SubgroupReport {
  std::vector<AttributeResult> attributes;
  ClassificationReport overall;
  std::size_t total = 0;
  std::string model_id;
  std::uint64_t seed = 0;
  std::string timestamp;  // caller supplied; empty keeps output reproducible
};

// Disaggregates accuracy, precision and recall for each attribute's groups.
SubgroupReport AuditByGroup(const PredictionSet& ps,
                            const SubgroupAssignment& groups);

enum class Severity { kInfo, kWarn };

struct DisparityFlag {
  std::string attribute;
  std::string group;
  std::string metric;  // "accuracy" | "precision" | "recall"
  double group_value = 0.0;
  double overall_value = 0.0;
  double gap = 0.0;  // overall - group
  std::size_t group_size = 0;
  Severity severity = Severity::kInfo;
};

std::string SeverityName(Severity s);

// A flag for every (attribute, group, metric) whose gap reaches the
// threshold; it is a warning only when the group has at least `min_group`
// members. Undefined metrics are never flagged. Sorted by gap, descending.
std::vector<DisparityFlag> FlagDisparities(const SubgroupReport& report,
                                           double gap_threshold = 0.10,
                                           std::size_t min_group = 10);

// Group,Category,Accuracy,Precision,Recall,Size -- undefined metrics print
// as "undefined".
std::string SubgroupReportToCsv(const SubgroupReport& report);

// attribute,group,metric,group_value,overall_value,gap,group_size,severity
std::string DisparityFlagsToCsv(const std::vector<DisparityFlag>& flags);

}  // namespace pcosrisk

#endif  // PCOSRISK_FAIRNESS_HPP_
