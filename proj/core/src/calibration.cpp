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

#include "pcosrisk/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcosrisk/error.hpp"

namespace pcosrisk {

std::vector<double> PoolAdjacentViolators(std::span<const double> values,
                                          std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw Error(ErrorCode::kArgument, "values and weights differ in length");
  }
  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    blocks.push_back({values[i], weights[i], 1});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean >= blocks.back().mean) {
      const Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double w = prev.weight + top.weight;
      prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / w;
      prev.weight = w;
      prev.count += top.count;
    }
  }
  std::vector<double> fit;
  fit.reserve(values.size());
  for (const auto& b : blocks) fit.insert(fit.end(), b.count, b.mean);
  return fit;
}

double IsotonicCalibrator::Apply(double score) const {
  if (x.empty()) throw Error(ErrorCode::kModel, "isotonic calibrator unfit");
  if (score <= x.front()) return y.front();
  if (score >= x.back()) return y.back();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(x.begin(), x.end(), score) - x.begin());
  const std::size_t lo = hi - 1;
  if (score == x[lo]) return y[lo];
  const double t = (score - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + t * (y[hi] - y[lo]);
}

IsotonicCalibrator FitIsotonic(std::span<const double> scores,
                               std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kArgument, "scores and labels differ in length");
  }
  if (scores.empty()) {
    throw Error(ErrorCode::kArgument, "isotonic fit needs at least one point");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return scores[a] < scores[b];
  });
  IsotonicCalibrator cal;
  std::vector<double> means, weights;
  for (std::size_t k = 0; k < order.size();) {
    const double s = scores[order[k]];
    double sum = 0.0;
    std::size_t count = 0;
    for (; k < order.size() && scores[order[k]] == s; ++k, ++count) {
      sum += labels[order[k]];
    }
    cal.x.push_back(s);
    means.push_back(sum / static_cast<double>(count));
    weights.push_back(static_cast<double>(count));
  }
  cal.y = PoolAdjacentViolators(means, weights);
  return cal;
}

double PlattCalibrator::Apply(double score) const {
  const double z = a * score + b;
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

PlattTargets SmoothedTargets(std::size_t n_pos, std::size_t n_neg) {
  return {(static_cast<double>(n_pos) + 1.0) / (static_cast<double>(n_pos) + 2.0),
          1.0 / (static_cast<double>(n_neg) + 2.0)};
}

PlattCalibrator FitPlatt(std::span<const double> scores,
                         std::span<const int> labels, int max_iter,
                         double tol) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kArgument, "scores and labels differ in length");
  }
  std::size_t n_pos = 0;
  for (int y : labels) n_pos += y == 1;
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::kFit, "Platt scaling needs both classes");
  }
  const PlattTargets targets = SmoothedTargets(n_pos, n_neg);
  std::vector<double> t(labels.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = labels[i] == 1 ? targets.positive : targets.negative;
  }

  // Negative log-likelihood in the stable form of Lin, Lin and Weng (2007).
  auto objective = [&](double a, double b) {
    double f = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double z = a * scores[i] + b;
      f += z >= 0.0 ? t[i] * z + std::log1p(std::exp(-z))
                    : (t[i] - 1.0) * z + std::log1p(std::exp(z));
    }
    return f;
  };

  PlattCalibrator cal;
  cal.a = 0.0;
  cal.b = std::log((static_cast<double>(n_neg) + 1.0) /
                   (static_cast<double>(n_pos) + 1.0));
  double f = objective(cal.a, cal.b);
  constexpr double kSigma = 1e-12;  // keeps the Hessian positive definite

  for (int it = 0; it < max_iter; ++it) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double z = cal.a * scores[i] + cal.b;
      double p, q;
      if (z >= 0.0) {
        p = std::exp(-z) / (1.0 + std::exp(-z));
        q = 1.0 / (1.0 + std::exp(-z));
      } else {
        p = 1.0 / (1.0 + std::exp(z));
        q = std::exp(z) / (1.0 + std::exp(z));
      }
      const double d2 = p * q;
      h11 += scores[i] * scores[i] * d2;
      h22 += d2;
      h21 += scores[i] * d2;
      const double d1 = t[i] - p;
      g1 += scores[i] * d1;
      g2 += d1;
    }
    if (std::hypot(g1, g2) <= tol) {
      cal.iterations = it;
      return cal;
    }
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;

    double step = 1.0;
    bool moved = false;
    while (step >= 1e-12) {
      const double na = cal.a + step * da, nb = cal.b + step * db;
      const double nf = objective(na, nb);
      if (nf < f + 1e-4 * step * gd) {
        cal.a = na;
        cal.b = nb;
        f = nf;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      // Line search stalls only at numerical optimum.
      cal.iterations = it;
      if (std::hypot(g1, g2) <= std::sqrt(tol)) return cal;
      throw Error(ErrorCode::kConvergence,
                  "Platt line search failed after " + std::to_string(it) +
                      " iterations");
    }
  }
  throw Error(ErrorCode::kConvergence,
              "Platt scaling did not converge in " + std::to_string(max_iter) +
                  " iterations");
}

std::string CalibrationMethodName(CalibrationMethod method) {
  return method == CalibrationMethod::kIsotonic ? "iso" : "platt";
}

double ApplyCalibrator(const Calibrator& calibrator, double score) {
  return std::visit([&](const auto& c) { return c.Apply(score); }, calibrator);
}

std::vector<double> CalibratedModel::PairOutputs(
    std::span<const double> x) const {
  if (x.size() != num_features) {
    throw Error(ErrorCode::kArgument,
                "feature vector has dimension " + std::to_string(x.size()) +
                    ", model expects " + std::to_string(num_features));
  }
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    out.push_back(ApplyCalibrator(pair.calibrator,
                                  CalibrationInput(pair.model, x)));
  }
  return out;
}

double CalibratedModel::Predict(std::span<const double> x) const {
  const auto outputs = PairOutputs(x);
  double sum = 0.0;
  for (double p : outputs) sum += p;
  return std::clamp(sum / static_cast<double>(outputs.size()), 0.0, 1.0);
}

CalibratedModel FitCalibratedModel(const LearnerSpec& learner,
                                   const LabeledDataset& train,
                                   CalibrationMethod method, int folds,
                                   std::uint64_t seed) {
  if (folds < 2) {
    throw Error(ErrorCode::kArgument, "calibration needs at least 2 folds",
                "folds");
  }
  const std::size_t pos = train.PositiveCount();
  if (pos == 0 || pos == train.rows()) {
    throw Error(ErrorCode::kFit, "calibration needs both classes in training");
  }
  CalibratedModel model;
  model.method = method;
  model.kind = KindOf(learner);
  model.num_features = train.cols();
  model.seed = seed;
  model.folds = StratifiedKFold(train.labels(), folds, seed);

  for (std::size_t f = 0; f < model.folds.size(); ++f) {
    const auto& held_out = model.folds[f];
    const LabeledDataset fit_rows =
        train.Subset(Complement(held_out, train.rows()));
    const LabeledDataset cal_rows = train.Subset(held_out);
    const std::size_t cal_pos = cal_rows.PositiveCount();
    if (cal_pos == 0 || cal_pos == cal_rows.rows()) {
      throw Error(ErrorCode::kFit,
                  "calibration fold " + std::to_string(f) +
                      " lacks one of the classes",
                  "fold " + std::to_string(f));
    }
    BaseModel base = FitLearner(learner, fit_rows, seed);
    std::vector<double> scores(cal_rows.rows());
    for (std::size_t i = 0; i < cal_rows.rows(); ++i) {
      scores[i] = CalibrationInput(base, cal_rows.row(i));
    }
    Calibrator cal =
        method == CalibrationMethod::kIsotonic
            ? Calibrator(FitIsotonic(scores, cal_rows.labels()))
            : Calibrator(FitPlatt(scores, cal_rows.labels()));
    model.pairs.push_back({std::move(base), std::move(cal)});
  }
  return model;
}

}  // namespace pcosrisk
