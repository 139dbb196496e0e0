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

#ifndef PCOSRISK_CALIBRATION_HPP_
#define PCOSRISK_CALIBRATION_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pcosrisk/dataset.hpp"
#include "pcosrisk/models.hpp"

namespace pcosrisk {

// Weighted least-squares monotone (non-decreasing) fit of `values` in the
// given order, by pool-adjacent-violators. Weights must be positive.
std::vector<double> PoolAdjacentViolators(std::span<const double> values,
                                          std::span<const double> weights);

// Piecewise-linear monotone map: clamps to the end values outside
// [x.front(), x.back()].
struct IsotonicCalibrator {
  std::vector<double> x;  // strictly increasing
  std::vector<double> y;  // non-decreasing, in [0, 1]

  double Apply(double score) const;
};

// Labels ordered by score; equal scores are pooled into one weighted point
// before PAV, so every distinct score becomes a breakpoint.
IsotonicCalibrator FitIsotonic(std::span<const double> scores,
                               std::span<const int> labels);

// p = 1 / (1 + exp(a * s + b)).
struct PlattCalibrator {
  double a = 0.0;
  double b = 0.0;
  int iterations = 0;

  double Apply(double score) const;
};

// Smoothed targets (N+ + 1)/(N+ + 2) and 1/(N- + 2).
struct PlattTargets {
  double positive = 0.0;
  double negative = 0.0;
};
PlattTargets SmoothedTargets(std::size_t n_pos, std::size_t n_neg);

// Newton's method with backtracking on the smoothed-target log-likelihood.
// Stops once the gradient norm is <= tol; throws Error(kConvergence) after
// max_iter iterations and Error(kFit) on single-class input.
PlattCalibrator FitPlatt(std::span<const double> scores,
                         std::span<const int> labels, int max_iter = 100,
                         double tol = 1e-10);

enum class CalibrationMethod { kIsotonic, kPlatt };
std::string CalibrationMethodName(CalibrationMethod method);

using Calibrator = std::variant<IsotonicCalibrator, PlattCalibrator>;
double ApplyCalibrator(const Calibrator& calibrator, double score);

struct CalibratedPair {
  BaseModel model;
  Calibrator calibrator;
};

// One (base model, calibrator) pair per fold: the model is trained on the
// other folds and the calibrator on the held-out fold. Predictions average
// the pair outputs.
struct CalibratedModel {
  CalibrationMethod method = CalibrationMethod::kIsotonic;
  ModelKind kind = ModelKind::kRandomForest;
  std::size_t num_features = 0;
  std::uint64_t seed = 0;
  std::vector<CalibratedPair> pairs;
  // Held-out training-row indices per fold.
  std::vector<std::vector<std::size_t>> folds;

  double Predict(std::span<const double> x) const;
  std::vector<double> PairOutputs(std::span<const double> x) const;
  int PredictClass(std::span<const double> x) const {
    return Predict(x) >= 0.5;
  }
};

CalibratedModel FitCalibratedModel(const LearnerSpec& learner,
                                   const LabeledDataset& train,
                                   CalibrationMethod method, int folds,
                                   std::uint64_t seed);

}  // namespace pcosrisk

#endif  // PCOSRISK_CALIBRATION_HPP_
