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

#include "pcosrisk/models.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "pcosrisk/error.hpp"
#include "pcosrisk/random.hpp"

namespace pcosrisk {
namespace {

// |logit| used for a single-class boosting model; sigmoid(40) rounds to 1.
constexpr double kMaxLogit = 40.0;

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double MeanLogLoss(std::span<const double> scores, std::span<const int> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    sum += Softplus(scores[i]) - (y[i] == 1 ? scores[i] : 0.0);
  }
  return sum / static_cast<double>(scores.size());
}

std::vector<std::size_t> DrawBootstrap(Rng& rng, std::size_t n) {
  std::vector<std::size_t> sample(n);
  for (auto& s : sample) s = UniformIndex(rng, n);
  return sample;
}

void CheckDimension(std::size_t got, std::size_t want) {
  if (got != want) {
    throw Error(ErrorCode::kArgument,
                "feature vector has dimension " + std::to_string(got) +
                    ", model expects " + std::to_string(want));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Random forest

double RandomForestModel::PredictProba(std::span<const double> x) const {
  CheckDimension(x.size(), num_features);
  double sum = 0.0;
  for (const auto& t : trees) sum += t.Predict(x);
  return sum / static_cast<double>(trees.size());
}

std::vector<std::size_t> BootstrapSample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return DrawBootstrap(rng, n);
}

RandomForestModel FitRandomForest(const LabeledDataset& data,
                                  const ForestParams& params) {
  if (data.empty()) {
    throw Error(ErrorCode::kArgument, "cannot train a forest on no rows");
  }
  if (params.n_estimators < 1) {
    throw Error(ErrorCode::kArgument, "n_estimators must be >= 1",
                "n_estimators");
  }
  const std::size_t d = data.cols();
  RandomForestModel model;
  model.params = params;
  model.num_features = d;
  model.feature_subsample =
      params.max_features > 0
          ? std::min(params.max_features, static_cast<int>(d))
          : std::max(1, static_cast<int>(std::sqrt(static_cast<double>(d))));
  const auto n_trees = static_cast<std::size_t>(params.n_estimators);
  model.trees.resize(n_trees);
  model.tree_seeds.resize(n_trees);

  const MatrixView x = MatrixView::Of(data);
  const TreeParams tree_params{params.max_depth, params.min_samples_leaf,
                               model.feature_subsample};
  auto fit_one = [&](std::size_t i) {
    const std::uint64_t seed = params.seed + i;
    Rng rng(seed);
    const auto sample = DrawBootstrap(rng, data.rows());
    model.tree_seeds[i] = seed;
    model.trees[i] =
        TrainClassificationTree(x, data.labels(), sample, tree_params, rng);
  };

  const auto threads = static_cast<std::size_t>(
      std::clamp(params.num_threads, 1, params.n_estimators));
  if (threads == 1) {
    for (std::size_t i = 0; i < n_trees; ++i) fit_one(i);
    return model;
  }
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n_trees; i += threads) fit_one(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return model;
}

// ---------------------------------------------------------------------------
// Gradient boosting

double GradientBoostedModel::Score(std::span<const double> x) const {
  CheckDimension(x.size(), num_features);
  double s = initial_score;
  for (const auto& t : trees) s += params.learning_rate * t.Predict(x);
  return s;
}

double GradientBoostedModel::PredictProba(std::span<const double> x) const {
  return Sigmoid(Score(x));
}

GradientBoostedModel FitGradientBoosted(const LabeledDataset& data,
                                        const GbtParams& params) {
  if (data.empty()) {
    throw Error(ErrorCode::kArgument, "cannot boost on no rows");
  }
  if (!(params.learning_rate > 0.0 && params.learning_rate <= 1.0)) {
    throw Error(ErrorCode::kArgument, "learning_rate must lie in (0, 1]",
                "learning_rate");
  }
  if (params.n_estimators < 1) {
    throw Error(ErrorCode::kArgument, "n_estimators must be >= 1",
                "n_estimators");
  }
  if (!(params.subsample > 0.0 && params.subsample <= 1.0)) {
    throw Error(ErrorCode::kArgument, "subsample must lie in (0, 1]",
                "subsample");
  }
  const std::size_t n = data.rows();
  const auto y = data.labels();
  const std::size_t pos = data.PositiveCount();

  GradientBoostedModel model;
  model.params = params;
  model.num_features = data.cols();
  if (pos == 0 || pos == n) {
    model.initial_score = pos == n ? kMaxLogit : -kMaxLogit;
    std::vector<double> f(n, model.initial_score);
    model.train_loss.push_back(MeanLogLoss(f, y));
    return model;
  }
  const double prevalence = static_cast<double>(pos) / static_cast<double>(n);
  model.initial_score = std::log(prevalence / (1.0 - prevalence));

  const MatrixView x = MatrixView::Of(data);
  const TreeParams tree_params{params.max_depth, params.min_samples_leaf,
                               std::nullopt};
  std::vector<double> f(n, model.initial_score), grad(n), hess(n), step(n),
      trial(n);
  double loss = MeanLogLoss(f, y);
  model.train_loss.push_back(loss);
  Rng rng(params.seed);

  for (int round = 0; round < params.n_estimators; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = Sigmoid(f[i]);
      grad[i] = p - y[i];
      hess[i] = std::max(p * (1.0 - p), 1e-16);
    }
    DecisionTree tree;
    if (params.subsample < 1.0) {
      const auto m = std::max<std::size_t>(
          1, static_cast<std::size_t>(params.subsample * n));
      std::vector<std::size_t> rows(n);
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      Shuffle(rows.begin(), rows.end(), rng);
      rows.resize(m);
      std::sort(rows.begin(), rows.end());
      std::vector<double> sub_x, sub_g, sub_h;
      for (std::size_t r : rows) {
        auto xr = x.row(r);
        sub_x.insert(sub_x.end(), xr.begin(), xr.end());
        sub_g.push_back(grad[r]);
        sub_h.push_back(hess[r]);
      }
      tree = TrainBoostingTree({sub_x, m, x.cols}, sub_g, sub_h, tree_params,
                               params.l2);
    } else {
      tree = TrainBoostingTree(x, grad, hess, tree_params, params.l2);
    }

    for (std::size_t i = 0; i < n; ++i) {
      step[i] = params.learning_rate * tree.Predict(x.row(i));
    }
    // Leaf values are Newton directions, so a short enough step descends.
    double shrink = 1.0;
    double new_loss = 0.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = f[i] + shrink * step[i];
      new_loss = MeanLogLoss(trial, y);
      if (new_loss <= loss) {
        accepted = true;
        break;
      }
      shrink *= 0.5;
    }
    if (!accepted) break;
    if (shrink != 1.0) {
      std::vector<TreeNode> nodes = tree.nodes();
      for (auto& node : nodes) node.value *= shrink;
      tree = DecisionTree(std::move(nodes), tree.num_features());
    }
    f.swap(trial);
    loss = new_loss;
    model.trees.push_back(std::move(tree));
    model.train_loss.push_back(loss);
  }
  return model;
}

// ---------------------------------------------------------------------------
// RBF SVM

double RbfKernel(std::span<const double> a, std::span<const double> b,
                 double gamma) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

double SvmModel::Decision(std::span<const double> x) const {
  CheckDimension(x.size(), num_features);
  double s = bias;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) {
    s += dual_coef[i] * RbfKernel(support_vectors[i], x, params.gamma);
  }
  return s;
}

SvmDual SolveSvmDual(const LabeledDataset& data, const SvmParams& params,
                     int* iterations, bool* converged) {
  const std::size_t n = data.rows();
  if (n == 0) throw Error(ErrorCode::kFit, "cannot train an SVM on no rows");
  const std::size_t pos = data.PositiveCount();
  if (pos == 0 || pos == n) {
    throw Error(ErrorCode::kFit, "SVM training needs both classes");
  }
  if (!(params.c > 0.0) || !(params.gamma > 0.0)) {
    throw Error(ErrorCode::kArgument, "C and gamma must be positive");
  }
  const double c = params.c;
  constexpr double kTau = 1e-12;

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = data.labels()[i] == 1 ? 1.0 : -1.0;
  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = RbfKernel(data.row(i), data.row(j), params.gamma);
      k[i * n + j] = v;
      k[j * n + i] = v;
    }
  }

  std::vector<double> alpha(n, 0.0), grad(n, -1.0);
  auto in_up = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
  };

  int iter = 0;
  bool done = false;
  for (; iter < params.max_iter; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(t) && -y[t] * grad[t] >= gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    }
    double gmin = std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    if (i < n) {
      for (std::size_t t = 0; t < n; ++t) {
        if (!in_low(t)) continue;
        const double v = -y[t] * grad[t];
        gmin = std::min(gmin, v);
        const double diff = gmax - v;
        if (diff > 0) {
          double quad = k[i * n + i] + k[t * n + t] - 2.0 * k[i * n + t];
          if (quad <= 0) quad = kTau;
          const double obj = -(diff * diff) / quad;
          if (obj <= best_obj) {
            best_obj = obj;
            j = t;
          }
        }
      }
    }
    if (i == n || j == n || gmax - gmin < params.tol) {
      done = true;
      break;
    }

    const double old_ai = alpha[i], old_aj = alpha[j];
    const double qij = y[i] * y[j] * k[i * n + j];
    if (y[i] != y[j]) {
      double quad = k[i * n + i] + k[j * n + j] + 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = k[i * n + i] + k[j * n + j] - 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * k[i * n + t] * dai + y[j] * k[j * n + t] * daj);
    }
  }

  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free)
                                : (ub + lb) / 2.0;
  if (iterations) *iterations = iter;
  if (converged) *converged = done;
  return {std::move(alpha), -rho};
}

SvmModel FitSvmRbf(const LabeledDataset& data, const SvmParams& params) {
  SvmModel model;
  model.params = params;
  model.num_features = data.cols();
  SvmDual dual =
      SolveSvmDual(data, params, &model.iterations, &model.converged);
  model.bias = dual.bias;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (dual.alpha[i] <= 0.0) continue;
    auto r = data.row(i);
    model.support_vectors.emplace_back(r.begin(), r.end());
    model.dual_coef.push_back(data.labels()[i] == 1 ? dual.alpha[i]
                                                    : -dual.alpha[i]);
  }
  return model;
}

// ---------------------------------------------------------------------------
// Polymorphic helpers

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

ModelKind KindOf(const BaseModel& model) {
  return static_cast<ModelKind>(model.index());
}

ModelKind KindOf(const LearnerSpec& spec) {
  return static_cast<ModelKind>(spec.index());
}

std::string ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRandomForest: return "rf";
    case ModelKind::kGradientBoosted: return "gbt";
    case ModelKind::kSvm: return "svm";
  }
  return "unknown";
}

std::size_t NumFeatures(const BaseModel& model) {
  return std::visit([](const auto& m) { return m.num_features; }, model);
}

double PredictScore(const BaseModel& model, std::span<const double> x) {
  return std::visit(
      Overloaded{
          [&](const RandomForestModel& m) { return m.PredictProba(x); },
          [&](const GradientBoostedModel& m) { return m.Score(x); },
          [&](const SvmModel& m) { return m.Decision(x); }},
      model);
}

double PredictProba(const BaseModel& model, std::span<const double> x) {
  return std::visit(
      Overloaded{
          [&](const RandomForestModel& m) { return m.PredictProba(x); },
          [&](const GradientBoostedModel& m) { return m.PredictProba(x); },
          [&](const SvmModel&) -> double {
            throw Error(ErrorCode::kModel,
                        "SVM probabilities require a calibrator");
          }},
      model);
}

double CalibrationInput(const BaseModel& model, std::span<const double> x) {
  return KindOf(model) == ModelKind::kSvm ? PredictScore(model, x)
                                          : PredictProba(model, x);
}

int PredictClass(const BaseModel& model, std::span<const double> x) {
  if (KindOf(model) == ModelKind::kSvm) return PredictScore(model, x) >= 0.0;
  return PredictProba(model, x) >= 0.5;
}

BaseModel FitLearner(const LearnerSpec& spec, const LabeledDataset& data,
                     std::uint64_t seed) {
  return std::visit(
      Overloaded{[&](ForestParams p) -> BaseModel {
                   p.seed = seed;
                   return FitRandomForest(data, p);
                 },
                 [&](GbtParams p) -> BaseModel {
                   p.seed = seed;
                   return FitGradientBoosted(data, p);
                 },
                 [&](const SvmParams& p) -> BaseModel {
                   return FitSvmRbf(data, p);
                 }},
      spec);
}

std::map<std::string, double> DescribeSpec(const LearnerSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ForestParams& p) {
            return std::map<std::string, double>{
                {"max_depth", p.max_depth},
                {"n_estimators", p.n_estimators},
                {"min_samples_leaf", p.min_samples_leaf},
                {"max_features", p.max_features}};
          },
          [](const GbtParams& p) {
            return std::map<std::string, double>{
                {"max_depth", p.max_depth},
                {"n_estimators", p.n_estimators},
                {"learning_rate", p.learning_rate},
                {"l2", p.l2},
                {"subsample", p.subsample}};
          },
          [](const SvmParams& p) {
            return std::map<std::string, double>{{"C", p.c},
                                                 {"gamma", p.gamma},
                                                 {"tol", p.tol}};
          }},
      spec);
}

CvResult GridSearch(const std::vector<LearnerSpec>& grid,
                    const LabeledDataset& data, int folds, std::uint64_t seed) {
  if (grid.empty()) throw Error(ErrorCode::kArgument, "empty grid", "grid");
  const auto fold_sets = StratifiedKFold(data.labels(), folds, seed);
  CvResult result;
  result.folds = folds;
  for (const auto& spec : grid) {
    GridEntry entry;
    entry.params = DescribeSpec(spec);
    try {
      for (const auto& held_out : fold_sets) {
        const auto train = data.Subset(Complement(held_out, data.rows()));
        const auto test = data.Subset(held_out);
        const BaseModel model = FitLearner(spec, train, seed);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < test.rows(); ++i) {
          correct += PredictClass(model, test.row(i)) == test.labels()[i];
        }
        entry.fold_accuracy.push_back(static_cast<double>(correct) /
                                      static_cast<double>(test.rows()));
      }
      entry.mean_accuracy =
          std::accumulate(entry.fold_accuracy.begin(),
                          entry.fold_accuracy.end(), 0.0) /
          static_cast<double>(entry.fold_accuracy.size());
    } catch (const Error& e) {
      entry.failed = true;
      entry.error = e.what();
      entry.fold_accuracy.clear();
    }
    result.entries.push_back(std::move(entry));
  }
  bool any = false;
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const auto& e = result.entries[i];
    if (e.failed) continue;
    if (!any || e.mean_accuracy > result.entries[result.selected].mean_accuracy) {
      result.selected = i;
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::kFit, "every grid point failed");
  return result;
}

std::pair<RandomForestModel, CvResult> TrainRandomForest(
    const LabeledDataset& data, const std::vector<ForestParams>& grid,
    int folds, std::uint64_t seed) {
  std::vector<LearnerSpec> specs;
  for (auto p : grid) {
    p.seed = seed;
    specs.emplace_back(p);
  }
  CvResult cv = GridSearch(specs, data, folds, seed);
  ForestParams best = grid[cv.selected];
  best.seed = seed;
  return {FitRandomForest(data, best), std::move(cv)};
}

std::vector<ForestParams> DefaultForestGrid() {
  std::vector<ForestParams> grid;
  for (int depth : {4, 6, 8, 10, 12}) {
    for (int trees : {100, 200, 400}) {
      ForestParams p;
      p.max_depth = depth;
      p.n_estimators = trees;
      grid.push_back(p);
    }
  }
  return grid;
}

std::vector<GbtParams> DefaultGbtGrid() {
  std::vector<GbtParams> grid;
  for (int depth : {2, 3, 4, 6}) {
    for (int rounds : {50, 100, 200}) {
      GbtParams p;
      p.max_depth = depth;
      p.n_estimators = rounds;
      p.learning_rate = 0.1;
      grid.push_back(p);
    }
  }
  return grid;
}

std::vector<SvmParams> DefaultSvmGrid(std::size_t num_features) {
  const double base = 1.0 / static_cast<double>(std::max<std::size_t>(
                                1, num_features));
  std::vector<SvmParams> grid;
  for (double c : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (double g : {0.25, 0.5, 1.0, 2.0}) {
      SvmParams p;
      p.c = c;
      p.gamma = g * base;
      grid.push_back(p);
    }
  }
  return grid;
}

}  // namespace pcosrisk
