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

// Microbenchmarks for the numerical kernels on Kerala-schema synthetic data.

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

#include "pcosrisk/calibration.hpp"
#include "pcosrisk/dataset.hpp"
#include "pcosrisk/metrics.hpp"
#include "pcosrisk/models.hpp"
#include "pcosrisk/random.hpp"
#include "pcosrisk/shap.hpp"
#include "pcosrisk/synthetic.hpp"

namespace pcosrisk {
namespace {

const LabeledDataset& Scaled(std::size_t rows) {
  static std::map<std::size_t, LabeledDataset> cache;
  auto it = cache.find(rows);
  if (it == cache.end()) {
    const SchemaManifest manifest = LoadManifest(
        std::string(PCOSRISK_BENCH_CONFIG_DIR) + "/kerala_manifest.json");
    const LabeledDataset raw =
        LoadDataset(SyntheticKeralaCsv(rows, 11), manifest);
    it = cache.emplace(rows, ApplyScaler(FitScaler(raw), raw)).first;
  }
  return it->second;
}

void BM_PoolAdjacentViolators(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<double> v(n), w(n, 1.0);
  for (double& x : v) x = UniformUnit(rng) < 0.3 ? 1.0 : 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(PoolAdjacentViolators(v, w));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PoolAdjacentViolators)->RangeMultiplier(4)->Range(64, 16384)
    ->Complexity(benchmark::oN);

void BM_FitRandomForest(benchmark::State& state) {
  const LabeledDataset& data = Scaled(541);
  ForestParams p;
  p.n_estimators = static_cast<int>(state.range(0));
  p.max_depth = 8;
  p.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitRandomForest(data, p));
  }
}
BENCHMARK(BM_FitRandomForest)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_FitGradientBoosted(benchmark::State& state) {
  const LabeledDataset& data = Scaled(541);
  GbtParams p;
  p.n_estimators = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitGradientBoosted(data, p));
  }
}
BENCHMARK(BM_FitGradientBoosted)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_FitSvmRbf(benchmark::State& state) {
  const LabeledDataset& data = Scaled(static_cast<std::size_t>(state.range(0)));
  SvmParams p;
  p.c = 1.0;
  p.gamma = 1.0 / static_cast<double>(data.cols());
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitSvmRbf(data, p));
  }
}
BENCHMARK(BM_FitSvmRbf)->Arg(270)->Arg(541)->Unit(benchmark::kMillisecond);

void BM_TreeShapForest(benchmark::State& state) {
  const LabeledDataset& data = Scaled(541);
  ForestParams p;
  p.n_estimators = 100;
  p.max_depth = static_cast<int>(state.range(0));
  p.seed = 3;
  const RandomForestModel forest = FitRandomForest(data, p);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(TreeShap(forest, data.row(i)));
    i = (i + 1) % data.rows();
  }
}
BENCHMARK(BM_TreeShapForest)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_ExpectedCalibrationError(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  std::vector<double> p(n);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = UniformUnit(rng);
    y[i] = UniformUnit(rng) < p[i];
  }
  const PredictionSet ps(std::move(p), std::move(y));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExpectedCalibrationError(ps, 15));
  }
}
BENCHMARK(BM_ExpectedCalibrationError)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace pcosrisk

BENCHMARK_MAIN();
