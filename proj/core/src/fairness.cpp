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

#include "pcosrisk/fairness.hpp"

#include <algorithm>
#include <cstdio>

#include "pcosrisk/csv.hpp"
#include "pcosrisk/error.hpp"

namespace pcosrisk {

SubgroupReport AuditByGroup(const PredictionSet& ps,
                            const SubgroupAssignment& groups) {
  if (groups.attributes.size() != groups.labels.size() ||
      groups.attributes.size() != groups.groups.size()) {
    throw Error(ErrorCode::kArgument, "malformed subgroup assignment");
  }
  for (const auto& labels : groups.labels) {
    if (labels.size() != ps.size()) {
      throw Error(ErrorCode::kArgument,
                  "subgroup assignment covers " +
                      std::to_string(labels.size()) + " records, predictions " +
                      std::to_string(ps.size()));
    }
  }
  SubgroupReport report;
  report.total = ps.size();
  report.overall = ClassificationReportOf(ps);
  for (std::size_t a = 0; a < groups.attributes.size(); ++a) {
    AttributeResult attr;
    attr.attribute = groups.attributes[a];
    const auto& declared = groups.groups[a];
    std::vector<std::vector<int>> y(declared.size()), y_hat(declared.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::size_t g = groups.labels[a][i];
      if (g >= declared.size()) {
        throw Error(ErrorCode::kArgument, "subgroup label out of range");
      }
      y[g].push_back(ps.y()[i]);
      y_hat[g].push_back(ps.y_hat()[i]);
    }
    for (std::size_t g = 0; g < declared.size(); ++g) {
      attr.groups.push_back({declared[g], y[g].size(), Classify(y[g], y_hat[g])});
    }
    report.attributes.push_back(std::move(attr));
  }
  return report;
}

std::string SeverityName(Severity s) {
  return s == Severity::kWarn ? "warn" : "info";
}

std::vector<DisparityFlag> FlagDisparities(const SubgroupReport& report,
                                           double gap_threshold,
                                           std::size_t min_group) {
  std::vector<DisparityFlag> flags;
  for (const auto& attr : report.attributes) {
    for (const auto& group : attr.groups) {
      if (group.size == 0) continue;
      const std::pair<const char*, std::pair<std::optional<double>,
                                             std::optional<double>>>
          metrics[] = {
              {"accuracy", {group.report.accuracy, report.overall.accuracy}},
              {"precision", {group.report.precision, report.overall.precision}},
              {"recall", {group.report.recall, report.overall.recall}},
          };
      for (const auto& [name, values] : metrics) {
        const auto& [group_value, overall_value] = values;
        if (!group_value || !overall_value) continue;
        const double gap = *overall_value - *group_value;
        if (gap < gap_threshold) continue;
        DisparityFlag flag;
        flag.attribute = attr.attribute;
        flag.group = group.label;
        flag.metric = name;
        flag.group_value = *group_value;
        flag.overall_value = *overall_value;
        flag.gap = gap;
        flag.group_size = group.size;
        flag.severity = group.size >= min_group ? Severity::kWarn
                                                : Severity::kInfo;
        flags.push_back(std::move(flag));
      }
    }
  }
  std::stable_sort(flags.begin(), flags.end(),
                   [](const DisparityFlag& a, const DisparityFlag& b) {
                     return a.gap > b.gap;
                   });
  return flags;
}

namespace {

std::string Fixed3(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

}  // namespace

std::string SubgroupReportToCsv(const SubgroupReport& report) {
  std::string out = "Group,Category,Accuracy,Precision,Recall,Size\n";
  for (const auto& attr : report.attributes) {
    for (const auto& g : attr.groups) {
      const std::optional<double> acc =
          g.size ? std::optional<double>(g.report.accuracy) : std::nullopt;
      out += csv::JoinRow({attr.attribute, g.label, Fixed3(acc),
                           Fixed3(g.report.precision), Fixed3(g.report.recall),
                           std::to_string(g.size)});
      out += '\n';
    }
  }
  out += csv::JoinRow({"Overall", "All", Fixed3(report.overall.accuracy),
                       Fixed3(report.overall.precision),
                       Fixed3(report.overall.recall),
                       std::to_string(report.total)});
  out += '\n';
  return out;
}

std::string DisparityFlagsToCsv(const std::vector<DisparityFlag>& flags) {
  std::string out =
      "attribute,group,metric,group_value,overall_value,gap,group_size,"
      "severity\n";
  for (const auto& f : flags) {
    out += csv::JoinRow({f.attribute, f.group, f.metric,
                         csv::FormatNumber(f.group_value),
                         csv::FormatNumber(f.overall_value),
                         csv::FormatNumber(f.gap), std::to_string(f.group_size),
                         SeverityName(f.severity)});
    out += "\n";
  }
  return out;
}

}  // namespace pcosrisk
