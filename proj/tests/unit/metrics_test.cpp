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
#include <cmath>
#include <functional>
#include <vector>

#include "pcosrisk/error.hpp"
#include "pcosrisk/metrics.hpp"
#include "pcosrisk/random.hpp"
#include "oracles.hpp"

namespace pcosrisk {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIo;
}

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double Logit(double p) { return std::log(p / (1.0 - p)); }

using testing::CalibratedSample;

TEST(PredictionSetTest, RejectsOutOfRangeProbability) {
  EXPECT_THROW(PredictionSet({1.2}, {1}), Error);
  EXPECT_THROW(PredictionSet({0.5}, {2}), Error);
  EXPECT_THROW(PredictionSet({0.5, 0.1}, {1}), Error);
}

TEST(BrierTest, PerfectPredictionIsZero) {
  EXPECT_EQ(BrierScore(PredictionSet({1, 0, 1}, {1, 0, 1})), 0.0);
}

TEST(BrierTest, HandFixture) {
  EXPECT_NEAR(BrierScore(PredictionSet({0.9, 0.2, 0.6}, {1, 0, 1})), 0.07,
              1e-12);
}

TEST(BrierTest, SymmetricUnderLabelFlip) {
  const PredictionSet a = CalibratedSample(200, 1);
  std::vector<double> q;
  std::vector<int> z;
  for (std::size_t i = 0; i < a.size(); ++i) {
    q.push_back(1.0 - a.p()[i]);
    z.push_back(1 - a.y()[i]);
  }
  const double b = BrierScore(a);
  EXPECT_NEAR(b, BrierScore(PredictionSet(q, z)), 1e-12);
  EXPECT_GE(b, 0.0);
  EXPECT_LE(b, 1.0);
}

TEST(EceTest, PerfectConfidentPredictionsGiveZero) {
  EXPECT_EQ(ExpectedCalibrationError(PredictionSet({1, 0, 1, 0}, {1, 0, 1, 0}),
                                     10),
            0.0);
}

TEST(EceTest, SingleOccupiedBinFixture) {
  const PredictionSet ps({0.8, 0.8, 0.2, 0.8}, {1, 1, 0, 0});
  EXPECT_NEAR(ExpectedCalibrationError(ps, 10), 0.05, 1e-12);
  EXPECT_NEAR(ExpectedCalibrationError(ps, 15), 0.05, 1e-12);
}

TEST(EceTest, PositiveClassModeFixture) {
  const PredictionSet ps({0.8, 0.8, 0.8, 0.8}, {1, 1, 1, 0});
  EXPECT_NEAR(ExpectedCalibrationError(ps, 10, EceMode::kPositiveClass), 0.05,
              1e-12);
}

TEST(EceTest, TwoBinsWeightedByOccupancy) {
  // Bin around 0.6: conf 0.6, acc 1/2. Bin around 0.9: conf 0.9, acc 1.
  const PredictionSet ps({0.6, 0.4, 0.9, 0.9}, {1, 1, 1, 1});
  const double expected = 0.5 * std::abs(0.5 - 0.6) + 0.5 * std::abs(1 - 0.9);
  EXPECT_NEAR(ExpectedCalibrationError(ps, 10), expected, 1e-12);
}

TEST(EceTest, InvariantUnderPermutation) {
  const PredictionSet a = CalibratedSample(300, 4);
  std::vector<double> p(a.p().rbegin(), a.p().rend());
  std::vector<int> y(a.y().rbegin(), a.y().rend());
  EXPECT_NEAR(ExpectedCalibrationError(a, 15),
              ExpectedCalibrationError(PredictionSet(p, y), 15), 1e-12);
}

TEST(EceTest, ZeroBinsIsArgumentError) {
  EXPECT_EQ(CodeOf([] {
              ExpectedCalibrationError(PredictionSet({0.5}, {1}), 0);
            }),
            ErrorCode::kArgument);
}

TEST(ReliabilityTest, BinEdgesAreHalfOpenWithClosedTop) {
  EXPECT_EQ(BinIndex(0.0, 0, 1, 10), 0u);
  EXPECT_EQ(BinIndex(0.1, 0, 1, 10), 1u);
  EXPECT_EQ(BinIndex(0.0999, 0, 1, 10), 0u);
  EXPECT_EQ(BinIndex(0.95, 0, 1, 10), 9u);
  EXPECT_EQ(BinIndex(1.0, 0, 1, 10), 9u);
}

TEST(ReliabilityTest, ConstantHalfOccupiesOneBin) {
  const BinnedReliability r =
      ReliabilityCurve(PredictionSet({0.5, 0.5, 0.5, 0.5}, {1, 0, 0, 0}), 10);
  std::size_t occupied = 0;
  for (const auto& b : r.bins) {
    if (b.count == 0) continue;
    ++occupied;
    EXPECT_EQ(b.mean_predicted, 0.5);
    EXPECT_EQ(b.observed_rate, 0.25);
  }
  EXPECT_EQ(occupied, 1u);
}

TEST(ReliabilityTest, CalibratedSampleStaysNearDiagonal) {
  const PredictionSet ps = CalibratedSample(20000, 99);
  const BinnedReliability r = ReliabilityCurve(ps, 10);
  std::size_t total = 0;
  for (const auto& b : r.bins) {
    total += b.count;
    if (b.count == 0) continue;
    const double se = std::sqrt(b.mean_predicted * (1 - b.mean_predicted) /
                                static_cast<double>(b.count));
    EXPECT_LE(std::abs(b.observed_rate - b.mean_predicted), 3 * se)
        << "bin [" << b.lower << ", " << b.upper << ")";
  }
  EXPECT_EQ(total, ps.size());
  EXPECT_EQ(r.total, ps.size());
}

TEST(CalibrationSlopeTest, CalibratedSampleHasUnitSlope) {
  const CalibrationFit fit = CalibrationSlope(CalibratedSample(20000, 7));
  EXPECT_GE(fit.slope, 0.9);
  EXPECT_LE(fit.slope, 1.1);
}

TEST(CalibrationSlopeTest, OverconfidentPredictionsShrinkSlope) {
  const PredictionSet base = CalibratedSample(20000, 8);
  std::vector<double> squared, doubled;
  for (double p : base.p()) {
    const double l = Logit(p);
    squared.push_back(Sigmoid(std::copysign(l * l, l)));
    doubled.push_back(Sigmoid(2.0 * l));
  }
  const std::vector<int> y(base.y().begin(), base.y().end());
  EXPECT_LT(CalibrationSlope(PredictionSet(squared, y)).slope, 1.0);
  // Doubling every logit halves the slope by construction.
  EXPECT_NEAR(CalibrationSlope(PredictionSet(doubled, y)).slope, 0.5, 0.05);
}

TEST(CalibrationSlopeTest, DegenerateInputsAreFitErrors) {
  EXPECT_EQ(CodeOf([] {
              CalibrationSlope(PredictionSet({0.3, 0.3, 0.3}, {1, 0, 1}));
            }),
            ErrorCode::kFit);
  EXPECT_EQ(CodeOf([] {
              CalibrationSlope(PredictionSet({0.3, 0.6, 0.9}, {1, 1, 1}));
            }),
            ErrorCode::kFit);
}

TEST(NetBenefitTest, HandFixture) {
  EXPECT_NEAR(NetBenefit(30, 10, 100, 0.5), 0.2, 1e-12);
}

TEST(NetBenefitTest, MonotoneInCounts) {
  for (double t : {0.1, 0.4, 0.7}) {
    EXPECT_LE(NetBenefit(10, 5, 100, t), NetBenefit(11, 5, 100, t));
    EXPECT_GE(NetBenefit(10, 5, 100, t), NetBenefit(10, 6, 100, t));
  }
}

TEST(DecisionCurveTest, ThresholdAboveAllScoresIsTreatNone) {
  const PredictionSet ps({0.1, 0.3, 0.2}, {0, 1, 0});
  const double t[] = {0.5};
  const auto curve = DecisionCurve(ps, t);
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_EQ(curve[0].tp, 0u);
  EXPECT_EQ(curve[0].fp, 0u);
  EXPECT_EQ(curve[0].net_benefit, 0.0);
  EXPECT_EQ(curve[0].treat_none, 0.0);
}

TEST(DecisionCurveTest, TreatAllPolicyMatchesClosedForm) {
  const PredictionSet base = CalibratedSample(500, 3);
  const std::vector<double> ones(base.size(), 1.0);
  const PredictionSet all(ones, std::vector<int>(base.y().begin(), base.y().end()));
  double prevalence = 0;
  for (int y : base.y()) prevalence += y;
  prevalence /= base.size();
  const auto thresholds = DefaultDcaThresholds();
  for (const auto& pt : DecisionCurve(all, thresholds)) {
    const double closed =
        prevalence - (1 - prevalence) * pt.threshold / (1 - pt.threshold);
    EXPECT_NEAR(pt.net_benefit, closed, 1e-12);
    EXPECT_NEAR(pt.treat_all, closed, 1e-12);
  }
}

TEST(DecisionCurveTest, ThresholdOnBoundaryIsArgumentError) {
  const PredictionSet ps({0.4}, {1});
  for (double bad : {0.0, 1.0}) {
    const double t[] = {bad};
    EXPECT_EQ(CodeOf([&] { DecisionCurve(ps, t); }), ErrorCode::kArgument);
  }
}

TEST(ClassificationReportTest, ConfusionMatrixArithmetic) {
  const std::vector<int> y = {1, 1, 1, 0, 1, 1, 0, 0, 0, 0};
  const std::vector<int> yh = {1, 1, 1, 1, 0, 0, 0, 0, 0, 0};
  const ClassificationReport r = Classify(y, yh);
  EXPECT_EQ(r.tp, 3u);
  EXPECT_EQ(r.fp, 1u);
  EXPECT_EQ(r.fn, 2u);
  EXPECT_EQ(r.tn, 4u);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.7);
  EXPECT_DOUBLE_EQ(*r.precision, 0.75);
  EXPECT_DOUBLE_EQ(*r.recall, 0.6);
}

TEST(ClassificationReportTest, PerfectAndUndefinedCases) {
  const ClassificationReport perfect = Classify(std::vector<int>{1, 0},
                                                std::vector<int>{1, 0});
  EXPECT_EQ(perfect.accuracy, 1.0);
  EXPECT_EQ(*perfect.precision, 1.0);
  EXPECT_EQ(*perfect.recall, 1.0);
  const ClassificationReport none = Classify(std::vector<int>{0, 0},
                                             std::vector<int>{0, 0});
  EXPECT_FALSE(none.precision.has_value());
  EXPECT_FALSE(none.recall.has_value());
}

TEST(ClassificationReportTest, DefaultDecisionThresholdIsOneHalf) {
  const ClassificationReport r =
      ClassificationReportOf(PredictionSet({0.5, 0.49}, {1, 0}));
  EXPECT_EQ(r.tp, 1u);
  EXPECT_EQ(r.tn, 1u);
}

}  // namespace
}  // namespace pcosrisk
