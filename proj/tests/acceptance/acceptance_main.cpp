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

// Acceptance driver. Each criterion prints indented detail lines followed by
// one summary line "PASS|FAIL|SKIP <criterion>: ...". Exit status is 0 when
// every selected criterion passes, 77 when the only non-passing ones were
// skipped for lack of the dataset, and 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "pcosrisk/bundle.hpp"
#include "pcosrisk/calibration.hpp"
#include "pcosrisk/clinical.hpp"
#include "pcosrisk/csv.hpp"
#include "pcosrisk/dataset.hpp"
#include "pcosrisk/error.hpp"
#include "pcosrisk/fairness.hpp"
#include "pcosrisk/metrics.hpp"
#include "pcosrisk/pipeline.hpp"
#include "pcosrisk/random.hpp"
#include "pcosrisk/shap.hpp"
#include "pcosrisk/synthetic.hpp"

namespace pcosrisk::acceptance {
namespace {

namespace fs = std::filesystem;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::string summary;
};

// Published reference values.
struct TableOneRow {
  const char* tag;
  double accuracy;
  double brier;
  double ece;
};
constexpr TableOneRow kTableOne[] = {
    {"svm-iso", 0.8991, 0.0764, 0.0541},  {"rf-iso", 0.8991, 0.0678, 0.0666},
    {"gbt-iso", 0.8899, 0.0733, 0.0663},  {"svm-platt", 0.8899, 0.0831, 0.0779},
    {"rf-platt", 0.9083, 0.0713, 0.0813}, {"gbt-platt", 0.9083, 0.0717, 0.0957},
};
constexpr double kAccuracyTol = 0.04;
constexpr double kBrierTol = 0.025;
constexpr double kEceTol = 0.035;
constexpr double kMaxTrainSeconds = 300.0;

constexpr double kUnder25Accuracy = 0.692;
constexpr double kUnder25Tol = 0.10;
constexpr double kNormalRecallFloor = 0.75;

std::string Fmt(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string Sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

void Detail(const std::string& line) { std::cout << "  " << line << "\n"; }

std::string ConfigFile(const std::string& name) {
  return std::string(PCOSRISK_ACCEPTANCE_CONFIG_DIR) + "/" + name;
}

std::optional<std::string> FindDataset() {
  if (const char* env = std::getenv("PCOSRISK_DATA"); env && *env) {
    if (fs::exists(env)) return std::string(env);
    Detail(std::string("PCOSRISK_DATA=") + env + " does not exist");
  }
  for (const char* name : {"pcos_kerala.csv", "PCOS_data.csv"}) {
    const fs::path p = fs::path(PCOSRISK_ACCEPTANCE_SOURCE_DIR) / "data" / name;
    if (fs::exists(p)) return p.string();
  }
  return std::nullopt;
}

fs::path WorkDir() {
  const fs::path dir = fs::temp_directory_path() /
                       ("pcosrisk_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

// Trains the full default pipeline at most once per process and per source.
class Runs {
 public:
  Runs()
      : manifest_(LoadManifest(ConfigFile("kerala_manifest.json"))),
        clinical_(LoadClinicalConfig(ConfigFile("rotterdam_criteria.json"))),
        data_path_(FindDataset()) {}

  const SchemaManifest& manifest() const { return manifest_; }
  const ClinicalConfig& clinical() const { return clinical_; }
  bool has_real_data() const { return data_path_.has_value(); }
  const std::string& real_data_path() const { return *data_path_; }

  const PipelineResult& Real() {
    if (!real_) {
      real_ = Train(LoadDatasetFile(*data_path_, manifest_), &real_seconds_);
    }
    return *real_;
  }
  double real_seconds() const { return real_seconds_; }

  // Written once; used when the real dataset is absent.
  const std::string& SyntheticPath() {
    if (synthetic_path_.empty()) {
      synthetic_path_ = (WorkDir() / "synthetic_541.csv").string();
      std::ofstream(synthetic_path_, std::ios::binary)
          << SyntheticKeralaCsv(541, 42);
    }
    return synthetic_path_;
  }

  const PipelineResult& Synthetic() {
    if (!synthetic_) {
      double seconds = 0;
      synthetic_ =
          Train(LoadDatasetFile(SyntheticPath(), manifest_), &seconds);
    }
    return *synthetic_;
  }

  const PipelineResult& Best() { return has_real_data() ? Real() : Synthetic(); }
  std::string BestSource() const {
    return has_real_data() ? "dataset " + *data_path_
                           : "synthetic 541-row data (dataset not found)";
  }
  std::string BestDataPath() {
    return has_real_data() ? *data_path_ : SyntheticPath();
  }

 private:
  PipelineResult Train(const LabeledDataset& data, double* seconds) {
    PipelineOptions options;
    options.seed = 42;
    const auto start = std::chrono::steady_clock::now();
    PipelineResult r = TrainPipeline(data, manifest_, clinical_, options);
    *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
                   .count();
    return r;
  }

  SchemaManifest manifest_;
  ClinicalConfig clinical_;
  std::optional<std::string> data_path_;
  std::optional<PipelineResult> real_;
  std::optional<PipelineResult> synthetic_;
  double real_seconds_ = 0;
  std::string synthetic_path_;
};

Outcome Blocked() {
  return {Status::kSkip, "BLOCKED: dataset not found (set PCOSRISK_DATA or "
                         "place data/pcos_kerala.csv in the source tree)"};
}

Outcome TableOne(Runs& runs) {
  if (!runs.has_real_data()) return Blocked();
  const PipelineResult& r = runs.Real();
  int failures = 0;
  for (const TableOneRow& ref : kTableOne) {
    const PredictionSet& ps = r.test_predictions.at(ref.tag);
    const double acc = ClassificationReportOf(ps).accuracy;
    const double brier = BrierScore(ps);
    const double ece10 = ExpectedCalibrationError(ps, 10);
    const double ece15 = ExpectedCalibrationError(ps, 15);
    const bool acc_ok = std::abs(acc - ref.accuracy) <= kAccuracyTol;
    const bool brier_ok = std::abs(brier - ref.brier) <= kBrierTol;
    const bool ece_ok = std::abs(ece10 - ref.ece) <= kEceTol ||
                        std::abs(ece15 - ref.ece) <= kEceTol;
    const bool ok = acc_ok && brier_ok && ece_ok;
    failures += !ok;
    Detail(std::string(ok ? "ok   " : "MISS ") + ref.tag + " accuracy " +
           Fmt(acc) + " (ref " + Fmt(ref.accuracy) + ") brier " + Fmt(brier) +
           " (ref " + Fmt(ref.brier) + ") ece10 " + Fmt(ece10) + " ece15 " +
           Fmt(ece15) + " (ref " + Fmt(ref.ece) + ")");
  }
  const bool fast = runs.real_seconds() < kMaxTrainSeconds;
  Detail("training time " + Fmt(runs.real_seconds(), 1) + " s (limit " +
         Fmt(kMaxTrainSeconds, 0) + " s)");
  const bool pass = failures == 0 && fast;
  return {pass ? Status::kPass : Status::kFail,
          std::to_string(6 - failures) + "/6 combinations within tolerance, " +
              Fmt(runs.real_seconds(), 1) + " s"};
}

const GroupResult* FindGroup(const SubgroupReport& report,
                             const std::string& attribute,
                             const std::string& label) {
  for (const auto& a : report.attributes) {
    if (a.attribute != attribute) continue;
    for (const auto& g : a.groups) {
      if (g.label == label) return &g;
    }
  }
  return nullptr;
}

const AttributeResult* FindAttribute(const SubgroupReport& report,
                                     const std::string& attribute) {
  for (const auto& a : report.attributes) {
    if (a.attribute == attribute) return &a;
  }
  return nullptr;
}

std::string Opt(const std::optional<double>& v) {
  return v ? Fmt(*v, 3) : std::string("undefined");
}

Outcome TableTwo(Runs& runs) {
  if (!runs.has_real_data()) return Blocked();
  const PipelineResult& r = runs.Real();
  const SubgroupReport report =
      AuditByGroup(r.test_predictions.at("rf-iso"), r.test_groups);
  const GroupResult* under25 = FindGroup(report, "Age", "<25");
  const GroupResult* mid = FindGroup(report, "Age", "25-35");
  const GroupResult* normal = FindGroup(report, "BMI", "Normal");
  const GroupResult* obese = FindGroup(report, "BMI", "Obese");
  const AttributeResult* bmi = FindAttribute(report, "BMI");
  if (!under25 || !mid || !normal || !obese || !bmi) {
    return {Status::kFail, "expected Age/BMI groups missing from the audit"};
  }
  for (const auto* a : {FindAttribute(report, "Age"), bmi}) {
    for (const auto& g : a->groups) {
      Detail(a->attribute + " " + g.label + " n=" + std::to_string(g.size) +
             " accuracy " + Fmt(g.report.accuracy, 3) + " precision " +
             Opt(g.report.precision) + " recall " + Opt(g.report.recall));
    }
  }

  int passed = 0;
  auto check = [&](bool ok, const std::string& what) {
    passed += ok;
    Detail(std::string(ok ? "ok   " : "MISS ") + what);
  };
  check(under25->size > 0 &&
            std::abs(under25->report.accuracy - kUnder25Accuracy) <=
                kUnder25Tol,
        "<25 accuracy " + Fmt(under25->report.accuracy, 3) + " within " +
            Fmt(kUnder25Tol, 2) + " of " + Fmt(kUnder25Accuracy, 3));
  check(under25->size > 0 && mid->size > 0 &&
            under25->report.accuracy < mid->report.accuracy,
        "<25 accuracy " + Fmt(under25->report.accuracy, 3) +
            " below 25-35 accuracy " + Fmt(mid->report.accuracy, 3));
  bool obese_top = obese->report.precision.has_value();
  for (const auto& g : bmi->groups) {
    if (&g == obese || !g.report.precision) continue;
    obese_top = obese_top && *obese->report.precision >= *g.report.precision;
  }
  check(obese_top, "Obese precision " + Opt(obese->report.precision) +
                       " >= every other BMI group's precision");
  check(normal->report.recall && *normal->report.recall >= kNormalRecallFloor,
        "Normal recall " + Opt(normal->report.recall) + " >= " +
            Fmt(kNormalRecallFloor, 2));
  return {passed == 4 ? Status::kPass : Status::kFail,
          std::to_string(passed) + "/4 checks hold"};
}

Outcome ShapRanking(Runs& runs) {
  if (!runs.has_real_data()) return Blocked();
  const GlobalImportance& gi = runs.Real().bundle.importance;
  std::vector<std::string> top;
  for (std::size_t i = 0; i < std::min<std::size_t>(5, gi.ranking.size());
       ++i) {
    const std::size_t f = gi.ranking[i];
    top.push_back(gi.feature_names[f]);
    Detail(std::to_string(i + 1) + ". " + gi.feature_names[f] + " " +
           Fmt(gi.mean_abs_phi[f]));
  }
  auto in_top = [&](const std::string& name) {
    return std::find(top.begin(), top.end(), name) != top.end();
  };
  const bool follicle = in_top("Follicle No. (L)") || in_top("Follicle No. (R)");
  const bool weight = in_top("Weight gain(Y/N)");
  const bool cycle = in_top("Cycle(R/I)");
  Detail(std::string("follicle count ") + (follicle ? "present" : "absent") +
         ", weight gain " + (weight ? "present" : "absent") +
         ", cycle irregularity " + (cycle ? "present" : "absent"));
  const bool ok = follicle && weight && cycle;
  return {ok ? Status::kPass : Status::kFail,
          std::to_string(int{follicle} + int{weight} + int{cycle}) +
              "/3 required features in the top 5"};
}

Outcome Dca(Runs& runs) {
  if (!runs.has_real_data()) return Blocked();
  std::vector<double> thresholds;
  for (int i = 30; i <= 60; ++i) thresholds.push_back(i / 100.0);
  const auto curve =
      DecisionCurve(runs.Real().test_predictions.at("rf-iso"), thresholds);
  int violations = 0;
  for (const NetBenefitPoint& pt : curve) {
    const bool ok = pt.net_benefit >= pt.treat_all - 1e-12 &&
                    pt.net_benefit >= pt.treat_none - 1e-12;
    violations += !ok;
    if (!ok) {
      Detail("MISS threshold " + Fmt(pt.threshold, 2) + " model " +
             Fmt(pt.net_benefit) + " treat-all " + Fmt(pt.treat_all) +
             " treat-none " + Fmt(pt.treat_none));
    }
  }
  const auto worst = std::min_element(
      curve.begin(), curve.end(), [](const auto& a, const auto& b) {
        return a.net_benefit - std::max(a.treat_all, a.treat_none) <
               b.net_benefit - std::max(b.treat_all, b.treat_none);
      });
  Detail("smallest margin over the better reference: " +
         Fmt(worst->net_benefit - std::max(worst->treat_all, worst->treat_none)) +
         " at threshold " + Fmt(worst->threshold, 2));
  return {violations == 0 ? Status::kPass : Status::kFail,
          std::to_string(curve.size() - static_cast<std::size_t>(violations)) +
              "/" + std::to_string(curve.size()) +
              " thresholds in [0.30, 0.60] dominate both references"};
}

// --- oracles -----------------------------------------------------------------

bool PavOracle() {
  Rng rng(20260101);
  double worst = 0;
  for (int instance = 0; instance < 200; ++instance) {
    const std::size_t n = 1 + UniformIndex(rng, 8);
    std::vector<double> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse values make ties and equal-mean blocks common.
      v[i] = instance % 2 ? UniformUnit(rng)
                          : static_cast<double>(UniformIndex(rng, 4)) / 3.0;
      w[i] = 0.5 + 1.5 * UniformUnit(rng);
    }
    const auto fit = PoolAdjacentViolators(v, w);
    const auto oracle = testing::BruteForceIsotonic(v, w);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(fit[i] - oracle[i]));
    }
  }
  const bool ok = worst <= 1e-9;
  Detail(std::string(ok ? "ok   " : "MISS ") +
         "PAV vs brute force, 200 instances of <= 8 points: max diff " +
         Sci(worst) + " (tol 1e-9)");
  return ok;
}

bool TreeShapOracle() {
  Rng rng(20260202);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const int depth = 1 + static_cast<int>(UniformIndex(rng, 4));
    const int features = 1 + static_cast<int>(UniformIndex(rng, 12));
    const DecisionTree tree = testing::RandomTree(rng, depth, features);
    std::vector<double> x(static_cast<std::size_t>(features));
    for (double& v : x) v = 2.0 * UniformUnit(rng) - 1.0;
    const AttributionSet a = TreeShap(tree, x);
    const std::vector<double> oracle = testing::EnumeratedShapley(tree, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::abs(a.phi[i] - oracle[i]));
    }
  }
  const bool ok = worst <= 1e-8;
  Detail(std::string(ok ? "ok   " : "MISS ") +
         "TreeSHAP vs enumerated Shapley, 100 trees (depth <= 4, <= 12 "
         "features): max diff " + Sci(worst) + " (tol 1e-8)");
  return ok;
}

bool LocalAccuracyOracle(Runs& runs) {
  const PipelineResult& r = runs.Best();
  const RandomForestModel& rf = r.bundle.explainer;
  double worst = 0;
  for (std::size_t i = 0; i < r.test_scaled.rows(); ++i) {
    const auto x = r.test_scaled.row(i);
    const AttributionSet a = TreeShap(rf, x);
    double sum = a.base_value;
    for (double p : a.phi) sum += p;
    worst = std::max(worst, std::abs(sum - rf.PredictProba(x)));
  }
  const bool ok = worst <= 1e-8;
  Detail(std::string(ok ? "ok   " : "MISS ") + "local accuracy on all " +
         std::to_string(r.test_scaled.rows()) + " test rows of " +
         runs.BestSource() + ": max diff " + Sci(worst) + " (tol 1e-8)");
  return ok;
}

bool FixtureOracles() {
  const double brier = BrierScore(PredictionSet({0.9, 0.2, 0.6}, {1, 0, 1}));
  const PredictionSet ece_case({0.8, 0.8, 0.2, 0.8}, {1, 1, 0, 0});
  const double ece10 = ExpectedCalibrationError(ece_case, 10);
  const double ece15 = ExpectedCalibrationError(ece_case, 15);
  const double nb = NetBenefit(30, 10, 100, 0.5);
  const double worst =
      std::max({std::abs(brier - 0.07), std::abs(ece10 - 0.05),
                std::abs(ece15 - 0.05), std::abs(nb - 0.2)});
  const bool ok = worst <= 1e-12;
  Detail(std::string(ok ? "ok   " : "MISS ") + "fixtures brier " +
         Fmt(brier, 12) + " ece " + Fmt(ece10, 12) + " net benefit " +
         Fmt(nb, 12) + ": max diff " + Sci(worst) + " (tol 1e-12)");
  return ok;
}

bool WeightedMeanOracle(Runs& runs) {
  const PipelineResult& r = runs.Best();
  double worst = 0;
  for (const auto& [tag, ps] : r.test_predictions) {
    const SubgroupReport report = AuditByGroup(ps, r.test_groups);
    for (const auto& a : report.attributes) {
      double weighted = 0;
      std::size_t n = 0;
      for (const auto& g : a.groups) {
        weighted += static_cast<double>(g.size) * g.report.accuracy;
        n += g.size;
      }
      worst = std::max(worst, std::abs(weighted / static_cast<double>(n) -
                                       report.overall.accuracy));
    }
  }
  const bool ok = worst <= 1e-12;
  Detail(std::string(ok ? "ok   " : "MISS ") +
         "size-weighted subgroup accuracy equals overall accuracy for every "
         "attribute and model: max diff " + Sci(worst) + " (tol 1e-12)");
  return ok;
}

bool CalibrationSlopeOracle() {
  const CalibrationFit fit =
      CalibrationSlope(testing::CalibratedSample(20000, 2026));
  const bool ok = fit.slope >= 0.9 && fit.slope <= 1.1;
  Detail(std::string(ok ? "ok   " : "MISS ") +
         "calibration slope on 20000 calibrated samples: " + Fmt(fit.slope) +
         " (want [0.9, 1.1])");
  return ok;
}

Outcome Oracles(Runs& runs) {
  const std::vector<std::function<bool()>> suites = {
      PavOracle,
      TreeShapOracle,
      [&] { return LocalAccuracyOracle(runs); },
      FixtureOracles,
      [&] { return WeightedMeanOracle(runs); },
      CalibrationSlopeOracle,
  };
  int passed = 0;
  for (const auto& s : suites) passed += s();
  const int total = static_cast<int>(suites.size());
  std::string summary = std::to_string(passed) + "/" + std::to_string(total) +
                        " oracle suites pass";
  if (!runs.has_real_data()) {
    summary += "; held-out rows come from synthetic data (dataset not found)";
  }
  return {passed == total ? Status::kPass : Status::kFail, summary};
}

// --- determinism -------------------------------------------------------------

std::string ReadBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int RunCliTrain(const std::string& data, const std::string& bundle) {
  const std::string cmd = std::string("\"") + PCOSRISK_ACCEPTANCE_CLI +
                          "\" train --quiet --seed 42 --data \"" + data +
                          "\" --bundle \"" + bundle + "\" > /dev/null";
  return std::system(cmd.c_str());
}

double MaxPredictionDiff(const ModelBundle& a, const ModelBundle& b,
                         const LabeledDataset& rows) {
  double worst = 0;
  for (const auto& [tag, model] : a.models) {
    for (std::size_t i = 0; i < rows.rows(); ++i) {
      worst = std::max(worst, std::abs(PredictCalibrated(a, rows.row(i), tag) -
                                       PredictCalibrated(b, rows.row(i), tag)));
    }
  }
  return worst;
}

Outcome Determinism(Runs& runs) {
  const std::string data = runs.BestDataPath();
  Detail("training data: " + runs.BestSource());
  const fs::path dir = WorkDir();
  const std::string first = (dir / "first.pcosb").string();
  const std::string second = (dir / "second.pcosb").string();
  if (RunCliTrain(data, first) != 0 || RunCliTrain(data, second) != 0) {
    return {Status::kFail, "pcosrisk train exited with an error"};
  }
  const std::string a = ReadBytes(first);
  const std::string b = ReadBytes(second);
  const bool identical = !a.empty() && a == b;
  Detail(std::string(identical ? "ok   " : "MISS ") + "two `train --seed 42` "
         "runs: " + std::to_string(a.size()) + " and " +
         std::to_string(b.size()) + " bytes, " +
         (identical ? "identical" : "different"));

  // Round trip of an in-memory bundle through the on-disk format.
  PipelineResult r = runs.Best();
  ModelBundle& original = r.bundle;
  const std::string bytes = SerializeBundle(original);
  const ModelBundle restored = DeserializeBundle(bytes);
  const double diff = MaxPredictionDiff(original, restored, r.test_raw);
  const bool round_trip = diff <= 1e-15;
  Detail(std::string(round_trip ? "ok   " : "MISS ") +
         "round trip over " + std::to_string(original.models.size()) +
         " models x " + std::to_string(r.test_raw.rows()) +
         " test rows: max diff " + Sci(diff) + " (tol 1e-15)");

  // Informational: the CLI and the library agree for the same inputs.
  Detail(std::string("info library bundle ") +
         (bytes == a ? "matches" : "differs from") + " the CLI bundle");

  fs::remove_all(dir);
  return {identical && round_trip ? Status::kPass : Status::kFail,
          std::string(identical ? "bundles byte-identical" : "bundles differ") +
              ", round-trip max diff " + Sci(diff)};
}

// --- Rotterdam ---------------------------------------------------------------

// A value that makes `rule` hold (want = true) or fail.
double RuleValue(const CriterionRule& rule, bool want) {
  const double v = rule.value;
  switch (rule.op) {
    case CompareOp::kGreaterEqual: return want ? v : v - 1.0;
    case CompareOp::kGreater: return want ? v + 1.0 : v;
    case CompareOp::kLessEqual: return want ? v : v + 1.0;
    case CompareOp::kLess: return want ? v - 1.0 : v;
    case CompareOp::kEqual: return want ? v : v + 1.0;
  }
  return v;
}

void SetCriterion(const CriterionSpec& spec, bool want, FeatureMap& f) {
  for (const CriterionRule& rule : spec.rules) {
    f[rule.column] = RuleValue(rule, want);
  }
}

Outcome Rotterdam(Runs& runs) {
  const ClinicalConfig& cfg = runs.clinical();
  int correct = 0;
  int met = 0;
  for (int mask = 0; mask < 8; ++mask) {
    const bool o = mask & 1, h = mask & 2, p = mask & 4;
    FeatureMap f;
    SetCriterion(cfg.oligo_anovulation, o, f);
    SetCriterion(cfg.hyperandrogenism, h, f);
    SetCriterion(cfg.pcom, p, f);
    const RotterdamAssessment a = EvaluateRotterdam(f, cfg);
    const int count = int{o} + int{h} + int{p};
    const bool ok = a.oligo_anovulation.met() == o &&
                    a.hyperandrogenism.met() == h && a.pcom.met() == p &&
                    a.criteria_met_count == count &&
                    a.meets_threshold == (count >= 2);
    correct += ok;
    met += a.meets_threshold;
    Detail(std::string(ok ? "ok   " : "MISS ") + "O=" + std::to_string(o) +
           " H=" + std::to_string(h) + " P=" + std::to_string(p) +
           " -> meets_threshold " + (a.meets_threshold ? "true" : "false"));
  }
  const bool pass = correct == 8 && met == 4;
  return {pass ? Status::kPass : Status::kFail,
          std::to_string(correct) + "/8 rows correct, threshold met for " +
              std::to_string(met) + " combinations"};
}

const std::vector<std::pair<std::string, std::function<Outcome(Runs&)>>>&
Criteria() {
  static const std::vector<
      std::pair<std::string, std::function<Outcome(Runs&)>>>
      all = {{"table1", TableOne},         {"table2", TableTwo},
             {"shap_ranking", ShapRanking}, {"dca", Dca},
             {"oracles", Oracles},          {"determinism", Determinism},
             {"rotterdam", Rotterdam}};
  return all;
}

int Main(int argc, char** argv) {
  CLI::App app{"pcosrisk acceptance criteria"};
  std::vector<std::string> selected;
  std::vector<std::string> names;
  for (const auto& [name, fn] : Criteria()) names.push_back(name);
  app.add_option("--criterion", selected, "Criterion to run (default: all)")
      ->check(CLI::IsMember(names));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = names;

  Runs runs;
  int failed = 0, skipped = 0;
  for (const auto& [name, fn] : Criteria()) {
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) {
      continue;
    }
    std::cout << "[" << name << "]\n";
    Outcome out;
    try {
      out = fn(runs);
    } catch (const Error& e) {
      out = {Status::kFail, std::string(ErrorCodeName(e.code())) + ": " +
                                e.what()};
    } catch (const std::exception& e) {
      out = {Status::kFail, e.what()};
    }
    const char* word = out.status == Status::kPass   ? "PASS"
                       : out.status == Status::kFail ? "FAIL"
                                                     : "SKIP";
    std::cout << word << " " << name << ": " << out.summary << std::endl;
    failed += out.status == Status::kFail;
    skipped += out.status == Status::kSkip;
  }
  if (failed > 0) return 1;
  return skipped > 0 ? 77 : 0;
}

}  // namespace
}  // namespace pcosrisk::acceptance

int main(int argc, char** argv) {
  return pcosrisk::acceptance::Main(argc, argv);
}
