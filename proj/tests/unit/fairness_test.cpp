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

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "pcosrisk/error.hpp"
#include "pcosrisk/fairness.hpp"
#include "pcosrisk/random.hpp"

namespace pcosrisk {
namespace {

SubgroupAssignment OneAttribute(std::string name,
                                std::vector<std::string> groups,
                                std::vector<std::size_t> labels) {
  SubgroupAssignment a;
  a.attributes = {std::move(name)};
  a.groups = {std::move(groups)};
  a.labels = {std::move(labels)};
  return a;
}

TEST(AuditTest, HandFixtureSplitsConfusionByGroup) {
  // A: TP, TN. B: FP, FN.
  const PredictionSet ps({0.9, 0.1, 0.8, 0.2}, {1, 0, 0, 1});
  const SubgroupReport r =
      AuditByGroup(ps, OneAttribute("G", {"A", "B"}, {0, 0, 1, 1}));
  ASSERT_EQ(r.attributes.size(), 1u);
  const auto& groups = r.attributes[0].groups;
  EXPECT_EQ(groups[0].report.accuracy, 1.0);
  EXPECT_EQ(groups[1].report.accuracy, 0.0);
  EXPECT_EQ(groups[1].report.fp, 1u);
  EXPECT_EQ(groups[1].report.fn, 1u);
  EXPECT_EQ(r.overall.accuracy, 0.5);
  EXPECT_EQ(r.total, 4u);
}

TEST(AuditTest, SingleGroupEqualsOverall) {
  const PredictionSet ps({0.9, 0.4, 0.7, 0.2, 0.6}, {1, 1, 0, 0, 1});
  const SubgroupReport r =
      AuditByGroup(ps, OneAttribute("All", {"all"}, {0, 0, 0, 0, 0}));
  const ClassificationReport& g = r.attributes[0].groups[0].report;
  EXPECT_EQ(g.tp, r.overall.tp);
  EXPECT_EQ(g.fp, r.overall.fp);
  EXPECT_EQ(g.tn, r.overall.tn);
  EXPECT_EQ(g.fn, r.overall.fn);
  EXPECT_EQ(g.accuracy, r.overall.accuracy);
  EXPECT_EQ(g.precision, r.overall.precision);
  EXPECT_EQ(g.recall, r.overall.recall);
}

TEST(AuditTest, EmptyGroupIsReportedWithUndefinedMetrics) {
  const PredictionSet ps({0.9, 0.1}, {1, 0});
  const SubgroupReport r =
      AuditByGroup(ps, OneAttribute("G", {"A", "B", "C"}, {0, 2, }));
  const auto& b = r.attributes[0].groups[1];
  EXPECT_EQ(b.label, "B");
  EXPECT_EQ(b.size, 0u);
  EXPECT_FALSE(b.report.precision.has_value());
  EXPECT_FALSE(b.report.recall.has_value());
}

TEST(AuditTest, MisalignedInputsAreArgumentError) {
  const PredictionSet ps({0.9, 0.1}, {1, 0});
  try {
    AuditByGroup(ps, OneAttribute("G", {"A"}, {0, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArgument);
  }
}

TEST(AuditTest, WeightedGroupAccuracyEqualsOverall) {
  Rng rng(8);
  const std::size_t n = 400;
  std::vector<double> p(n);
  std::vector<int> y(n);
  SubgroupAssignment a;
  a.attributes = {"X", "Y"};
  a.groups = {{"x0", "x1", "x2"}, {"y0", "y1", "y2", "y3", "y4"}};
  a.labels.assign(2, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = UniformUnit(rng);
    y[i] = UniformUnit(rng) < 0.4;
    a.labels[0][i] = UniformIndex(rng, 3);
    a.labels[1][i] = UniformIndex(rng, 5);
  }
  const SubgroupReport r = AuditByGroup(PredictionSet(p, y), a);
  for (const auto& attr : r.attributes) {
    double weighted = 0.0;
    std::size_t total = 0;
    for (const auto& g : attr.groups) {
      weighted += g.report.accuracy * static_cast<double>(g.size);
      total += g.size;
    }
    EXPECT_EQ(total, n);
    EXPECT_NEAR(weighted / n, r.overall.accuracy, 1e-12) << attr.attribute;
  }
}

TEST(AuditTest, OrderIndependent) {
  const std::vector<double> p = {0.9, 0.2, 0.7, 0.6, 0.3, 0.8};
  const std::vector<int> y = {1, 0, 0, 1, 1, 1};
  const std::vector<std::size_t> g = {0, 1, 0, 1, 0, 1};
  const SubgroupReport fwd =
      AuditByGroup(PredictionSet(p, y), OneAttribute("G", {"A", "B"}, g));
  const SubgroupReport rev = AuditByGroup(
      PredictionSet({p.rbegin(), p.rend()}, {y.rbegin(), y.rend()}),
      OneAttribute("G", {"A", "B"}, {g.rbegin(), g.rend()}));
  EXPECT_EQ(SubgroupReportToCsv(fwd), SubgroupReportToCsv(rev));
}

// Builds a report directly so flag rules can be probed in isolation.
SubgroupReport ReportWith(double overall_acc,
                          std::vector<std::pair<std::size_t, double>> groups) {
  SubgroupReport r;
  r.overall.accuracy = overall_acc;
  AttributeResult attr;
  attr.attribute = "Age";
  int k = 0;
  for (auto [size, acc] : groups) {
    GroupResult g;
    g.label = "g" + std::to_string(k++);
    g.size = size;
    g.report.accuracy = acc;
    attr.groups.push_back(g);
    r.total += size;
  }
  r.attributes.push_back(attr);
  return r;
}

TEST(FlagTest, UniformPerformanceRaisesNoWarnings) {
  const auto flags = FlagDisparities(ReportWith(0.9, {{50, 0.9}, {40, 0.9}}));
  EXPECT_TRUE(std::none_of(flags.begin(), flags.end(), [](const auto& f) {
    return f.severity == Severity::kWarn;
  }));
}

TEST(FlagTest, LargeGapOnLargeGroupWarns) {
  const auto flags =
      FlagDisparities(ReportWith(0.9, {{13, 0.692}, {80, 0.93}}), 0.10, 10);
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_EQ(flags[0].group, "g0");
  EXPECT_EQ(flags[0].metric, "accuracy");
  EXPECT_EQ(flags[0].severity, Severity::kWarn);
  EXPECT_NEAR(flags[0].gap, 0.9 - 0.692, 1e-12);
}

TEST(FlagTest, TinyGroupOnlyGetsInfoFlag) {
  const auto flags = FlagDisparities(ReportWith(0.9, {{2, 0.0}, {60, 0.93}}));
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_EQ(flags[0].severity, Severity::kInfo);
  EXPECT_EQ(flags[0].group_size, 2u);
}

TEST(FlagTest, UndefinedMetricsAreNotFlagged) {
  SubgroupReport r = ReportWith(0.9, {{30, 0.9}});
  r.overall.precision = 0.9;
  r.attributes[0].groups[0].report.precision.reset();
  EXPECT_TRUE(FlagDisparities(r).empty());
}

TEST(FlagTest, SortedByGapDescending) {
  const auto flags = FlagDisparities(
      ReportWith(0.9, {{20, 0.75}, {20, 0.5}, {20, 0.7}, {20, 0.95}}));
  ASSERT_EQ(flags.size(), 3u);
  for (std::size_t i = 1; i < flags.size(); ++i) {
    EXPECT_GE(flags[i - 1].gap, flags[i].gap);
  }
  EXPECT_EQ(flags[0].group, "g1");
}

TEST(FlagTest, CsvHeaderIsStable) {
  const std::string csv = DisparityFlagsToCsv({});
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "attribute,group,metric,group_value,overall_value,gap,group_size,"
            "severity");
}

}  // namespace
}  // namespace pcosrisk
