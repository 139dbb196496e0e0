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

#ifndef PCOSRISK_TREE_HPP_
#define PCOSRISK_TREE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pcosrisk/dataset.hpp"
#include "pcosrisk/random.hpp"

namespace pcosrisk {

// Dense row-major matrix view.
struct MatrixView {
  std::span<const double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::span<const double> row(std::size_t i) const {
    return data.subspan(i * cols, cols);
  }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static MatrixView Of(const LabeledDataset& d) {
    return {d.values(), d.rows(), d.cols()};
  }
};

// Internal nodes send x[feature] <= threshold left. `cover` is the number of
// training rows (with bootstrap multiplicity) that reached the node; `value`
// is the positive fraction for classification trees and the leaf weight for
// boosting trees.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double cover = 0.0;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
};

class DecisionTree {
 public:
  DecisionTree() = default;
  // Validates structure; throws Error(kModel) on a malformed node array.
  DecisionTree(std::vector<TreeNode> nodes, std::size_t num_features);

  double Predict(std::span<const double> x) const;
  int LeafIndex(std::span<const double> x) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t num_features() const { return num_features_; }
  int Depth() const;
  bool HasCover() const;

 private:
  std::vector<TreeNode> nodes_;
  std::size_t num_features_ = 0;
};

struct TreeParams {
  int max_depth = 8;
  int min_samples_leaf = 1;
  // Features examined per split; nullopt means all.
  std::optional<int> feature_subsample;
};

// Greedy Gini CART over the rows listed in `sample` (repeats allowed).
// Thresholds are midpoints between adjacent distinct values. Zero-gain splits
// are taken on impure nodes; ties go to the lowest feature, then the lowest
// threshold.
DecisionTree TrainClassificationTree(MatrixView x, std::span<const int> labels,
                                     std::span<const std::size_t> sample,
                                     const TreeParams& params, Rng& rng);

DecisionTree TrainDecisionTree(const LabeledDataset& data,
                               const TreeParams& params, Rng& rng);

// Second-order boosting tree: split gain on gradient/hessian sums with L2
// penalty `l2`; leaf value = -G / (H + l2).
DecisionTree TrainBoostingTree(MatrixView x, std::span<const double> grad,
                               std::span<const double> hess,
                               const TreeParams& params, double l2);

}  // namespace pcosrisk

#endif  // PCOSRISK_TREE_HPP_
