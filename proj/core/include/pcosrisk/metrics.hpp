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

#ifndef PCOSRISK_METRICS_HPP_
#define PCOSRISK_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pcosrisk {

// Aligned probabilities, true labels and predicted classes.
class PredictionSet {
 public:
  // Predicted class defaults to [p >= 0.5].
  PredictionSet(std::vector<double> p, std::vector<int> y);
  PredictionSet(std::vector<double> p, std::vector<int> y,
                std::vector<int> y_hat);

  std::size_t size() const { return p_.size(); }
  std::span<const double> p() const { return p_; }
  std::span<const int> y() const { return y_; }
  std::span<const int> y_hat() const { return y_hat_; }

  PredictionSet Subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<double> p_;
  std::vector<int> y_;
  std::vector<int> y_hat_;
};

double BrierScore(const PredictionSet& ps);

enum class EceMode {
  // conf = max(p, 1 - p) binned on [0.5, 1], acc = 1(y_hat == y).
  kConfidence,
  // conf = p binned on [0, 1], acc = observed positive rate.
  kPositiveClass,
};

double ExpectedCalibrationError(const PredictionSet& ps, int bins,
                                EceMode mode = EceMode::kConfidence);

struct ReliabilityBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double mean_predicted = 0.0;   // conf(B_m) over p
  double observed_rate = 0.0;    // fraction of positives
  double accuracy = 0.0;         // fraction with y_hat == y
};

struct BinnedReliability {
  std::vector<ReliabilityBin> bins;
  std::size_t total = 0;
};

// Bin m covers [m/M, (m+1)/M); the last bin also holds 1.0.
std::size_t BinIndex(double value, double lo, double hi, int bins);
BinnedReliability ReliabilityCurve(const PredictionSet& ps, int bins);

struct CalibrationFit {
  double slope = 0.0;
  double intercept = 0.0;
  int iterations = 0;
};

// Logistic regression of y on logit(clip(p, eps, 1 - eps)) by Newton's
// method to gradient tolerance 1e-8.
CalibrationFit CalibrationSlope(const PredictionSet& ps, double eps = 1e-6);

struct NetBenefitPoint {
  double threshold = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t n = 0;
  double net_benefit = 0.0;
  double treat_all = 0.0;
  double treat_none = 0.0;
};

double NetBenefit(std::size_t tp, std::size_t fp, std::size_t n,
                  double threshold);
double TreatAllNetBenefit(double prevalence, double threshold);

// Positive call iff p >= threshold. Thresholds must lie strictly in (0, 1).
std::vector<NetBenefitPoint> DecisionCurve(const PredictionSet& ps,
                                           std::span<const double> thresholds);
std::vector<double> DefaultDcaThresholds();

struct ClassificationReport {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0.0;
  std::optional<double> precision;  // unset when nothing predicted positive
  std::optional<double> recall;     // unset when no actual positives

  std::size_t total() const { return tp + fp + tn + fn; }
};

ClassificationReport Classify(std::span<const int> y,
                              std::span<const int> y_hat);
ClassificationReport ClassificationReportOf(const PredictionSet& ps);

// CSV exports (documented headers).
// bin,lower,upper,count,mean_predicted,observed_rate,accuracy
std::string ReliabilityToCsv(const BinnedReliability& curve);
// threshold,tp,fp,n,net_benefit,treat_all,treat_none
std::string DecisionCurveToCsv(const std::vector<NetBenefitPoint>& curve);

}  // namespace pcosrisk

#endif  // PCOSRISK_METRICS_HPP_
