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

#include "pcosrisk/shap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>

#include "pcosrisk/csv.hpp"
#include "pcosrisk/error.hpp"

namespace pcosrisk {
namespace {

struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

void ExtendPath(PathElement* path, int depth, double zero_fraction,
                double one_fraction, int feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].pweight +=
        one_fraction * path[i].pweight * (i + 1) / static_cast<double>(depth + 1);
    path[i].pweight = zero_fraction * path[i].pweight * (depth - i) /
                      static_cast<double>(depth + 1);
  }
}

void UnwindPath(PathElement* path, int depth, int path_index) {
  const double one = path[path_index].one_fraction;
  const double zero = path[path_index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0.0) {
      const double tmp = path[i].pweight;
      path[i].pweight = next_one_portion * (depth + 1) /
                        static_cast<double>((i + 1) * one);
      next_one_portion = tmp - path[i].pweight * zero * (depth - i) /
                                   static_cast<double>(depth + 1);
    } else {
      path[i].pweight = path[i].pweight * (depth + 1) /
                        static_cast<double>(zero * (depth - i));
    }
  }
  for (int i = path_index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

double UnwoundPathSum(const PathElement* path, int depth, int path_index) {
  const double one = path[path_index].one_fraction;
  const double zero = path[path_index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  double total = 0.0;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0.0) {
      const double tmp =
          next_one_portion * (depth + 1) / static_cast<double>((i + 1) * one);
      total += tmp;
      next_one_portion = path[i].pweight -
                         tmp * zero * ((depth - i) /
                                       static_cast<double>(depth + 1));
    } else if (zero != 0.0) {
      total += (path[i].pweight / zero) /
               ((depth - i) / static_cast<double>(depth + 1));
    }
  }
  return total;
}

class ShapRecursion {
 public:
  ShapRecursion(const DecisionTree& tree, std::span<const double> x,
                std::vector<double>& phi)
      : nodes_(tree.nodes()), x_(x), phi_(phi) {
    const int depth = tree.Depth();
    storage_.resize(static_cast<std::size_t>((depth + 2) * (depth + 3) / 2));
  }

  void Run() { Recurse(0, 0, storage_.data(), 1.0, 1.0, -1); }

 private:
  void Recurse(int node_index, int depth, PathElement* parent_path,
               double parent_zero, double parent_one, int parent_feature) {
    PathElement* path = parent_path + depth + 1;
    std::copy(parent_path, parent_path + depth + 1, path);
    ExtendPath(path, depth, parent_zero, parent_one, parent_feature);

    const TreeNode& node = nodes_[static_cast<std::size_t>(node_index)];
    if (node.is_leaf()) {
      for (int i = 1; i <= depth; ++i) {
        const double w = UnwoundPathSum(path, depth, i);
        const PathElement& el = path[i];
        phi_[static_cast<std::size_t>(el.feature)] +=
            w * (el.one_fraction - el.zero_fraction) * node.value;
      }
      return;
    }

    const bool go_left =
        x_[static_cast<std::size_t>(node.feature)] <= node.threshold;
    const int hot = go_left ? node.left : node.right;
    const int cold = go_left ? node.right : node.left;
    const double hot_zero =
        nodes_[static_cast<std::size_t>(hot)].cover / node.cover;
    const double cold_zero =
        nodes_[static_cast<std::size_t>(cold)].cover / node.cover;
    double incoming_zero = 1.0;
    double incoming_one = 1.0;

    int path_index = 0;
    for (; path_index <= depth; ++path_index) {
      if (path[path_index].feature == node.feature) break;
    }
    if (path_index != depth + 1) {
      incoming_zero = path[path_index].zero_fraction;
      incoming_one = path[path_index].one_fraction;
      UnwindPath(path, depth, path_index);
      depth -= 1;
    }
    Recurse(hot, depth + 1, path, hot_zero * incoming_zero, incoming_one,
            node.feature);
    Recurse(cold, depth + 1, path, cold_zero * incoming_zero, 0.0,
            node.feature);
  }

  const std::vector<TreeNode>& nodes_;
  std::span<const double> x_;
  std::vector<double>& phi_;
  std::vector<PathElement> storage_;
};

void RequireCover(const DecisionTree& tree) {
  if (!tree.HasCover()) {
    throw Error(ErrorCode::kModel,
                "tree lacks training cover counts required for attribution");
  }
}

void CheckDimension(const DecisionTree& tree, std::span<const double> x) {
  if (x.size() != tree.num_features()) {
    throw Error(ErrorCode::kArgument,
                "feature vector has dimension " + std::to_string(x.size()) +
                    ", model expects " +
                    std::to_string(tree.num_features()));
  }
}

}  // namespace

double ExpectedValue(const DecisionTree& tree) {
  RequireCover(tree);
  const auto& nodes = tree.nodes();
  double sum = 0.0;
  for (const auto& n : nodes) {
    if (n.is_leaf()) sum += n.value * n.cover;
  }
  return sum / nodes.front().cover;
}

AttributionSet TreeShap(const DecisionTree& tree, std::span<const double> x) {
  CheckDimension(tree, x);
  RequireCover(tree);
  AttributionSet out;
  out.phi.assign(tree.num_features(), 0.0);
  out.base_value = ExpectedValue(tree);
  out.output = tree.Predict(x);
  out.feature_values.assign(x.begin(), x.end());
  ShapRecursion(tree, x, out.phi).Run();
  return out;
}

AttributionSet TreeShap(const RandomForestModel& forest,
                        std::span<const double> x) {
  if (forest.trees.empty()) throw Error(ErrorCode::kModel, "empty forest");
  AttributionSet out;
  out.phi.assign(forest.num_features, 0.0);
  for (const auto& tree : forest.trees) {
    const AttributionSet t = TreeShap(tree, x);
    for (std::size_t j = 0; j < out.phi.size(); ++j) out.phi[j] += t.phi[j];
    out.base_value += t.base_value;
  }
  const double n = static_cast<double>(forest.trees.size());
  for (double& v : out.phi) v /= n;
  out.base_value /= n;
  out.output = forest.PredictProba(x);
  out.feature_values.assign(x.begin(), x.end());
  return out;
}

AttributionSet BruteForceShap(const DecisionTree& tree,
                              std::span<const double> x,
                              std::size_t max_features) {
  CheckDimension(tree, x);
  RequireCover(tree);
  const auto& nodes = tree.nodes();
  std::set<int> used;
  for (const auto& n : nodes) {
    if (!n.is_leaf()) used.insert(n.feature);
  }
  if (used.size() > max_features) {
    throw Error(ErrorCode::kCostGuard,
                "brute-force Shapley limited to " +
                    std::to_string(max_features) + " features, tree uses " +
                    std::to_string(used.size()));
  }
  const std::vector<int> features(used.begin(), used.end());
  const std::size_t m = features.size();
  std::vector<int> slot(tree.num_features(), -1);
  for (std::size_t k = 0; k < m; ++k) {
    slot[static_cast<std::size_t>(features[k])] = static_cast<int>(k);
  }

  // Value of a coalition: features in `mask` follow x, the rest average over
  // both children by cover.
  auto value = [&](std::uint32_t mask) {
    auto rec = [&](auto&& self, int idx) -> double {
      const TreeNode& n = nodes[static_cast<std::size_t>(idx)];
      if (n.is_leaf()) return n.value;
      const int s = slot[static_cast<std::size_t>(n.feature)];
      if (mask & (1u << s)) {
        return self(self, x[static_cast<std::size_t>(n.feature)] <= n.threshold
                              ? n.left
                              : n.right);
      }
      const TreeNode& l = nodes[static_cast<std::size_t>(n.left)];
      const TreeNode& r = nodes[static_cast<std::size_t>(n.right)];
      return (l.cover * self(self, n.left) + r.cover * self(self, n.right)) /
             n.cover;
    };
    return rec(rec, 0);
  };

  const std::uint32_t subsets = 1u << m;
  std::vector<double> v(subsets);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) v[mask] = value(mask);

  // weight[s] = s! (m - s - 1)! / m!
  std::vector<double> weight(m, 0.0);
  for (std::size_t s = 0; s < m; ++s) {
    double w = 1.0 / static_cast<double>(m);
    // 1 / (m * C(m-1, s))
    for (std::size_t k = 1; k <= s; ++k) {
      w *= static_cast<double>(k) / static_cast<double>(m - k);
    }
    weight[s] = w;
  }

  AttributionSet out;
  out.phi.assign(tree.num_features(), 0.0);
  out.base_value = v[0];
  out.output = tree.Predict(x);
  out.feature_values.assign(x.begin(), x.end());
  for (std::size_t k = 0; k < m; ++k) {
    const std::uint32_t bit = 1u << k;
    double phi = 0.0;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      if (mask & bit) continue;
      const auto s = static_cast<std::size_t>(std::popcount(mask));
      phi += weight[s] * (v[mask | bit] - v[mask]);
    }
    out.phi[static_cast<std::size_t>(features[k])] = phi;
  }
  return out;
}

GlobalImportance ComputeGlobalImportance(const RandomForestModel& forest,
                                         const LabeledDataset& data) {
  if (data.empty()) {
    throw Error(ErrorCode::kArgument, "global importance needs rows");
  }
  GlobalImportance gi;
  gi.feature_names = data.feature_names();
  gi.mean_abs_phi.assign(data.cols(), 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const AttributionSet att = TreeShap(forest, data.row(i));
    for (std::size_t j = 0; j < att.phi.size(); ++j) {
      gi.mean_abs_phi[j] += std::abs(att.phi[j]);
    }
  }
  for (double& v : gi.mean_abs_phi) v /= static_cast<double>(data.rows());
  gi.ranking.resize(data.cols());
  for (std::size_t j = 0; j < gi.ranking.size(); ++j) gi.ranking[j] = j;
  std::stable_sort(gi.ranking.begin(), gi.ranking.end(),
                   [&](std::size_t a, std::size_t b) {
                     return gi.mean_abs_phi[a] > gi.mean_abs_phi[b];
                   });
  return gi;
}

std::string GlobalImportanceToCsv(const GlobalImportance& importance) {
  std::string out = "feature,mean_abs_shap,rank\n";
  for (std::size_t r = 0; r < importance.ranking.size(); ++r) {
    const std::size_t j = importance.ranking[r];
    out += csv::JoinRow({importance.feature_names[j],
                         csv::FormatNumber(importance.mean_abs_phi[j]),
                         std::to_string(r + 1)});
    out += '\n';
  }
  return out;
}

Explanation TopKExplanation(const AttributionSet& attribution, std::size_t k,
                            const std::vector<std::string>& names,
                            std::span<const double> raw_values) {
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < attribution.phi.size(); ++j) {
    if (attribution.phi[j] != 0.0) order.push_back(j);
  }
  Explanation out;
  out.all_zero = order.empty();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(attribution.phi[a]) > std::abs(attribution.phi[b]);
  });
  if (order.size() > k) order.resize(k);
  for (std::size_t j : order) {
    Contribution c;
    c.feature = j;
    c.name = j < names.size() ? names[j] : "feature " + std::to_string(j);
    c.phi = attribution.phi[j];
    if (j < raw_values.size()) {
      c.value = raw_values[j];
    } else if (j < attribution.feature_values.size()) {
      c.value = attribution.feature_values[j];
    }
    c.direction = c.phi > 0 ? "raises risk" : "lowers risk";
    out.items.push_back(std::move(c));
  }
  return out;
}

}  // namespace pcosrisk
