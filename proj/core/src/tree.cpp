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

#include "pcosrisk/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcosrisk/error.hpp"

namespace pcosrisk {

DecisionTree::DecisionTree(std::vector<TreeNode> nodes,
                           std::size_t num_features)
    : nodes_(std::move(nodes)), num_features_(num_features) {
  if (nodes_.empty()) throw Error(ErrorCode::kModel, "tree has no nodes");
  std::vector<int> parents(nodes_.size(), 0);
  const int n = static_cast<int>(nodes_.size());
  for (int i = 0; i < n; ++i) {
    const TreeNode& node = nodes_[static_cast<std::size_t>(i)];
    if (node.is_leaf()) continue;
    if (static_cast<std::size_t>(node.feature) >= num_features_) {
      throw Error(ErrorCode::kModel, "node " + std::to_string(i) +
                                         " splits on an unknown feature");
    }
    // Children must follow their parent, which rules out cycles.
    for (int child : {node.left, node.right}) {
      if (child <= i || child >= n) {
        throw Error(ErrorCode::kModel,
                    "node " + std::to_string(i) + " has a bad child index");
      }
      ++parents[static_cast<std::size_t>(child)];
    }
    if (node.cover > 0.0) {
      const double sum = nodes_[static_cast<std::size_t>(node.left)].cover +
                         nodes_[static_cast<std::size_t>(node.right)].cover;
      if (std::abs(sum - node.cover) > 1e-9 * std::max(1.0, node.cover)) {
        throw Error(ErrorCode::kModel, "child covers of node " +
                                           std::to_string(i) +
                                           " do not sum to the parent");
      }
    }
  }
  if (parents[0] != 0) throw Error(ErrorCode::kModel, "root has a parent");
  for (std::size_t i = 1; i < parents.size(); ++i) {
    if (parents[i] != 1) {
      throw Error(ErrorCode::kModel,
                  "node " + std::to_string(i) + " is not referenced once");
    }
  }
}

int DecisionTree::LeafIndex(std::span<const double> x) const {
  if (x.size() != num_features_) {
    throw Error(ErrorCode::kArgument,
                "feature vector has dimension " + std::to_string(x.size()) +
                    ", model expects " + std::to_string(num_features_));
  }
  int i = 0;
  while (!nodes_[static_cast<std::size_t>(i)].is_leaf()) {
    const TreeNode& node = nodes_[static_cast<std::size_t>(i)];
    i = x[static_cast<std::size_t>(node.feature)] <= node.threshold
            ? node.left
            : node.right;
  }
  return i;
}

double DecisionTree::Predict(std::span<const double> x) const {
  return nodes_[static_cast<std::size_t>(LeafIndex(x))].value;
}

int DecisionTree::Depth() const {
  std::vector<int> depth(nodes_.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    best = std::max(best, depth[i]);
    if (!nodes_[i].is_leaf()) {
      depth[static_cast<std::size_t>(nodes_[i].left)] = depth[i] + 1;
      depth[static_cast<std::size_t>(nodes_[i].right)] = depth[i] + 1;
    }
  }
  return best;
}

bool DecisionTree::HasCover() const {
  return std::all_of(nodes_.begin(), nodes_.end(),
                     [](const TreeNode& n) { return n.cover > 0.0; });
}

namespace {

// Midpoint that still separates a from b after rounding.
double SplitPoint(double a, double b) {
  const double mid = a + (b - a) * 0.5;
  return mid < b ? mid : a;
}

constexpr double kGainEpsilon = 1e-12;

class ClassificationBuilder {
 public:
  ClassificationBuilder(MatrixView x, std::span<const int> labels,
                        const TreeParams& params, Rng& rng)
      : x_(x), labels_(labels), params_(params), rng_(rng) {
    all_features_.resize(x.cols);
    std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
  }

  std::vector<TreeNode> Build(std::vector<std::size_t> sample) {
    nodes_.clear();
    Grow(sample, 0, sample.size(), 0);
    return std::move(nodes_);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = -1.0;
  };

  int Grow(std::vector<std::size_t>& idx, std::size_t begin, std::size_t end,
           int depth) {
    const std::size_t n = end - begin;
    std::size_t pos = 0;
    for (std::size_t k = begin; k < end; ++k) pos += labels_[idx[k]] == 1;

    const int id = static_cast<int>(nodes_.size());
    TreeNode node;
    node.cover = static_cast<double>(n);
    node.value = static_cast<double>(pos) / static_cast<double>(n);
    nodes_.push_back(node);

    const auto min_leaf = static_cast<std::size_t>(
        std::max(1, params_.min_samples_leaf));
    if (pos == 0 || pos == n || depth >= params_.max_depth ||
        n < 2 * min_leaf) {
      return id;
    }
    const Split split = FindSplit(idx, begin, end, pos, min_leaf);
    if (split.feature < 0) return id;

    const auto f = static_cast<std::size_t>(split.feature);
    auto mid_it = std::stable_partition(
        idx.begin() + static_cast<std::ptrdiff_t>(begin),
        idx.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::size_t r) { return x_.at(r, f) <= split.threshold; });
    const auto mid = static_cast<std::size_t>(mid_it - idx.begin());

    const int left = Grow(idx, begin, mid, depth + 1);
    const int right = Grow(idx, mid, end, depth + 1);
    TreeNode& self = nodes_[static_cast<std::size_t>(id)];
    self.feature = split.feature;
    self.threshold = split.threshold;
    self.left = left;
    self.right = right;
    return id;
  }

  std::vector<std::size_t> CandidateFeatures() {
    if (!params_.feature_subsample ||
        *params_.feature_subsample >= static_cast<int>(x_.cols)) {
      return all_features_;
    }
    const auto m = static_cast<std::size_t>(
        std::max(1, *params_.feature_subsample));
    std::vector<std::size_t> pool = all_features_;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + UniformIndex(rng_, pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  Split FindSplit(const std::vector<std::size_t>& idx, std::size_t begin,
                  std::size_t end, std::size_t pos, std::size_t min_leaf) {
    const std::size_t n = end - begin;
    const double nd = static_cast<double>(n);
    const double p = static_cast<double>(pos) / nd;
    const double parent_gini = 1.0 - p * p - (1.0 - p) * (1.0 - p);

    Split best;
    std::vector<std::pair<double, int>> column(n);
    for (std::size_t f : CandidateFeatures()) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t r = idx[begin + k];
        column[k] = {x_.at(r, f), labels_[r]};
      }
      std::sort(column.begin(), column.end());
      std::size_t left_pos = 0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        left_pos += column[k].second == 1;
        if (column[k].first == column[k + 1].first) continue;
        const std::size_t nl = k + 1;
        const std::size_t nr = n - nl;
        if (nl < min_leaf || nr < min_leaf) continue;
        const double pl = static_cast<double>(left_pos) / nl;
        const double pr = static_cast<double>(pos - left_pos) / nr;
        const double gl = 1.0 - pl * pl - (1.0 - pl) * (1.0 - pl);
        const double gr = 1.0 - pr * pr - (1.0 - pr) * (1.0 - pr);
        const double gain =
            parent_gini - (static_cast<double>(nl) * gl +
                           static_cast<double>(nr) * gr) / nd;
        if (gain > best.gain + kGainEpsilon) {
          best.feature = static_cast<int>(f);
          best.threshold = SplitPoint(column[k].first, column[k + 1].first);
          best.gain = gain;
        }
      }
    }
    return best;
  }

  MatrixView x_;
  std::span<const int> labels_;
  const TreeParams& params_;
  Rng& rng_;
  std::vector<std::size_t> all_features_;
  std::vector<TreeNode> nodes_;
};

class BoostingBuilder {
 public:
  BoostingBuilder(MatrixView x, std::span<const double> grad,
                  std::span<const double> hess, const TreeParams& params,
                  double l2)
      : x_(x), grad_(grad), hess_(hess), params_(params), l2_(l2) {}

  std::vector<TreeNode> Build() {
    std::vector<std::size_t> idx(x_.rows);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Grow(idx, 0, idx.size(), 0);
    return std::move(nodes_);
  }

 private:
  double Score(double g, double h) const { return g * g / (h + l2_); }

  int Grow(std::vector<std::size_t>& idx, std::size_t begin, std::size_t end,
           int depth) {
    const std::size_t n = end - begin;
    double g = 0.0, h = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      g += grad_[idx[k]];
      h += hess_[idx[k]];
    }
    const int id = static_cast<int>(nodes_.size());
    TreeNode node;
    node.cover = static_cast<double>(n);
    node.value = -g / (h + l2_);
    nodes_.push_back(node);

    const auto min_leaf = static_cast<std::size_t>(
        std::max(1, params_.min_samples_leaf));
    if (depth >= params_.max_depth || n < 2 * min_leaf) return id;

    int best_f = -1;
    double best_t = 0.0, best_gain = kGainEpsilon;
    const double parent = Score(g, h);
    std::vector<std::pair<double, std::size_t>> column(n);
    for (std::size_t f = 0; f < x_.cols; ++f) {
      for (std::size_t k = 0; k < n; ++k) {
        column[k] = {x_.at(idx[begin + k], f), idx[begin + k]};
      }
      std::sort(column.begin(), column.end());
      double gl = 0.0, hl = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        gl += grad_[column[k].second];
        hl += hess_[column[k].second];
        if (column[k].first == column[k + 1].first) continue;
        if (k + 1 < min_leaf || n - k - 1 < min_leaf) continue;
        const double gain = Score(gl, hl) + Score(g - gl, h - hl) - parent;
        if (gain > best_gain + kGainEpsilon) {
          best_gain = gain;
          best_f = static_cast<int>(f);
          best_t = SplitPoint(column[k].first, column[k + 1].first);
        }
      }
    }
    if (best_f < 0) return id;

    const auto f = static_cast<std::size_t>(best_f);
    auto mid_it = std::stable_partition(
        idx.begin() + static_cast<std::ptrdiff_t>(begin),
        idx.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::size_t r) { return x_.at(r, f) <= best_t; });
    const auto mid = static_cast<std::size_t>(mid_it - idx.begin());
    const int left = Grow(idx, begin, mid, depth + 1);
    const int right = Grow(idx, mid, end, depth + 1);
    TreeNode& self = nodes_[static_cast<std::size_t>(id)];
    self.feature = best_f;
    self.threshold = best_t;
    self.left = left;
    self.right = right;
    return id;
  }

  MatrixView x_;
  std::span<const double> grad_;
  std::span<const double> hess_;
  const TreeParams& params_;
  double l2_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree TrainClassificationTree(MatrixView x, std::span<const int> labels,
                                     std::span<const std::size_t> sample,
                                     const TreeParams& params, Rng& rng) {
  if (sample.empty() || x.rows == 0) {
    throw Error(ErrorCode::kArgument, "cannot train a tree on no rows");
  }
  if (params.max_depth < 1) {
    throw Error(ErrorCode::kArgument, "max_depth must be >= 1", "max_depth");
  }
  ClassificationBuilder builder(x, labels, params, rng);
  return DecisionTree(
      builder.Build(std::vector<std::size_t>(sample.begin(), sample.end())),
      x.cols);
}

DecisionTree TrainDecisionTree(const LabeledDataset& data,
                               const TreeParams& params, Rng& rng) {
  if (data.empty()) {
    throw Error(ErrorCode::kArgument, "cannot train a tree on no rows");
  }
  std::vector<std::size_t> all(data.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return TrainClassificationTree(MatrixView::Of(data), data.labels(), all,
                                 params, rng);
}

DecisionTree TrainBoostingTree(MatrixView x, std::span<const double> grad,
                               std::span<const double> hess,
                               const TreeParams& params, double l2) {
  if (x.rows == 0) {
    throw Error(ErrorCode::kArgument, "cannot train a tree on no rows");
  }
  BoostingBuilder builder(x, grad, hess, params, l2);
  return DecisionTree(builder.Build(), x.cols);
}

}  // namespace pcosrisk
