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

#ifndef PCOSRISK_MODELS_HPP_
#define PCOSRISK_MODELS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pcosrisk/dataset.hpp"
#include "pcosrisk/tree.hpp"

namespace pcosrisk {

struct ForestParams {
  int n_estimators = 100;
  int max_depth = 8;
  int min_samples_leaf = 1;
  // 0 selects floor(sqrt(d)).
  int max_features = 0;
  std::uint64_t seed = 0;
  // Training parallelism; the fitted forest does not depend on it.
  int num_threads = 1;
};

struct RandomForestModel {
  ForestParams params;
  int feature_subsample = 0;
  std::size_t num_features = 0;
  std::vector<DecisionTree> trees;
  std::vector<std::uint64_t> tree_seeds;

  // Mean of per-tree leaf positive fractions.
  double PredictProba(std::span<const double> x) const;
};

// Bootstrap row sample of tree `seed`: n draws with replacement, taken first
// from the tree's generator so the sample can be replayed.
std::vector<std::size_t> BootstrapSample(std::size_t n, std::uint64_t seed);

RandomForestModel FitRandomForest(const LabeledDataset& data,
                                  const ForestParams& params);

struct GbtParams {
  int n_estimators = 100;
  int max_depth = 3;
  double learning_rate = 0.1;
  double l2 = 1.0;
  int min_samples_leaf = 1;
  // Row subsampling per round; 1 disables it and makes `seed` inert.
  double subsample = 1.0;
  std::uint64_t seed = 0;
};

struct GradientBoostedModel {
  GbtParams params;
  std::size_t num_features = 0;
  double initial_score = 0.0;
  std::vector<DecisionTree> trees;
  // Mean training log-loss after initialisation and after each round.
  std::vector<double> train_loss;

  double Score(std::span<const double> x) const;
  double PredictProba(std::span<const double> x) const;
};

// Stagewise logistic boosting. Single-class data yields a constant model
// whose probability is the prevalence.
GradientBoostedModel FitGradientBoosted(const LabeledDataset& data,
                                        const GbtParams& params);

struct SvmParams {
  double c = 1.0;
  double gamma = 0.1;
  double tol = 1e-3;
  int max_iter = 200000;
};

struct SvmModel {
  SvmParams params;
  std::size_t num_features = 0;
  std::vector<std::vector<double>> support_vectors;
  // alpha_i * y_i with y in {-1, +1}.
  std::vector<double> dual_coef;
  double bias = 0.0;
  int iterations = 0;
  bool converged = false;

  double Decision(std::span<const double> x) const;
};

// SMO over pairs chosen by the maximal-violating-pair rule with second-order
// gain, on a precomputed RBF kernel. Throws Error(kFit) on single-class data.
SvmModel FitSvmRbf(const LabeledDataset& data, const SvmParams& params);

// Full dual solution for diagnostics: alpha per training row and the bias.
struct SvmDual {
  std::vector<double> alpha;
  double bias = 0.0;
};
SvmDual SolveSvmDual(const LabeledDataset& data, const SvmParams& params,
                     int* iterations = nullptr, bool* converged = nullptr);

double RbfKernel(std::span<const double> a, std::span<const double> b,
                 double gamma);

// ---------------------------------------------------------------------------

enum class ModelKind { kRandomForest, kGradientBoosted, kSvm };

using BaseModel = std::variant<RandomForestModel, GradientBoostedModel,
                               SvmModel>;
using LearnerSpec = std::variant<ForestParams, GbtParams, SvmParams>;

ModelKind KindOf(const BaseModel& model);
ModelKind KindOf(const LearnerSpec& spec);
std::string ModelKindName(ModelKind kind);
std::size_t NumFeatures(const BaseModel& model);

// Forest: probability. Boosting: log-odds. SVM: signed margin.
double PredictScore(const BaseModel& model, std::span<const double> x);
// Throws Error(kModel) for the SVM, whose probability needs calibration.
double PredictProba(const BaseModel& model, std::span<const double> x);
// Input fed to calibrators: probability for trees, margin for the SVM.
double CalibrationInput(const BaseModel& model, std::span<const double> x);
int PredictClass(const BaseModel& model, std::span<const double> x);

// Fits `spec` with its seed replaced by `seed` (SVM has none).
BaseModel FitLearner(const LearnerSpec& spec, const LabeledDataset& data,
                     std::uint64_t seed);

// ---------------------------------------------------------------------------

struct GridEntry {
  std::map<std::string, double> params;
  double mean_accuracy = 0.0;
  std::vector<double> fold_accuracy;
  bool failed = false;
  std::string error;
};

struct CvResult {
  int folds = 5;
  std::vector<GridEntry> entries;
  std::size_t selected = 0;
};

std::map<std::string, double> DescribeSpec(const LearnerSpec& spec);

// Stratified k-fold accuracy for each grid point; the first entry with the
// maximal mean wins. Failed points are recorded and skipped.
CvResult GridSearch(const std::vector<LearnerSpec>& grid,
                    const LabeledDataset& data, int folds, std::uint64_t seed);

// Grid search, then refit of the winner on all rows.
std::pair<RandomForestModel, CvResult> TrainRandomForest(
    const LabeledDataset& data, const std::vector<ForestParams>& grid,
    int folds, std::uint64_t seed);

std::vector<ForestParams> DefaultForestGrid();
std::vector<GbtParams> DefaultGbtGrid();
std::vector<SvmParams> DefaultSvmGrid(std::size_t num_features);

}  // namespace pcosrisk

#endif  // PCOSRISK_MODELS_HPP_
