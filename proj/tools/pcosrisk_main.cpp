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

// pcosrisk: train, evaluate, audit, explain, report and serve PCOS risk
// bundles from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "pcosrisk/bundle.hpp"
#include "pcosrisk/csv.hpp"
#include "pcosrisk/error.hpp"
#include "pcosrisk/pipeline.hpp"
#include "pcosrisk/service.hpp"
#include "pcosrisk/synthetic.hpp"

namespace fs = std::filesystem;
using namespace pcosrisk;

namespace {

struct Options {
  std::string data;
  std::string predictions;
  std::string manifest =
      std::string(PCOSRISK_DEFAULT_CONFIG_DIR) + "/kerala_manifest.json";
  std::string criteria =
      std::string(PCOSRISK_DEFAULT_CONFIG_DIR) + "/rotterdam_criteria.json";
  std::uint64_t seed = 42;
  std::string bundle;
  std::string model;
  int bins = 10;
  std::string bind;
  double gap_threshold = 0.10;
  std::size_t min_group = 10;
  std::string out = ".";
  std::size_t row = 0;
  std::size_t top_k = 10;
  std::size_t rows = 541;
  bool quiet = false;
};

std::string EnvOr(const char* name, const std::string& value) {
  if (!value.empty()) return value;
  const char* env = std::getenv(name);
  return env ? std::string(env) : std::string();
}

std::string BundlePath(const Options& o) {
  const std::string path = EnvOr("PCOSRISK_BUNDLE", o.bundle);
  if (path.empty()) {
    throw Error(ErrorCode::kArgument,
                "no bundle given (--bundle or PCOSRISK_BUNDLE)", "bundle");
  }
  return path;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string(),
                        path.string());
  out << text;
}

fs::path OutDir(const Options& o) {
  fs::path dir(o.out);
  fs::create_directories(dir);
  return dir;
}

std::string Tag(const ModelBundle& b, const Options& o) {
  const std::string tag = o.model.empty() ? b.default_model : o.model;
  b.Model(tag);  // throws kNotFound for an unknown tag
  return tag;
}

int Train(const Options& o) {
  if (o.data.empty()) {
    throw Error(ErrorCode::kArgument, "train needs --data", "data");
  }
  const SchemaManifest manifest = LoadManifest(o.manifest);
  const ClinicalConfig clinical = LoadClinicalConfig(o.criteria);
  const LabeledDataset data = LoadDatasetFile(o.data, manifest);
  PipelineOptions options;
  options.seed = o.seed;
  options.bins = o.bins;
  options.policy.gap_threshold = o.gap_threshold;
  options.policy.min_group = o.min_group;
  if (!o.quiet) {
    options.log = [](const std::string& line) { std::cerr << line << "\n"; };
  }
  PipelineResult result = TrainPipeline(data, manifest, clinical, options);
  const std::string path = BundlePath(o);
  const std::string hash = SaveBundle(result.bundle, path);
  std::cout << MetricTable(result.bundle.metrics);
  std::cout << "bundle " << path << " sha256:" << hash << "\n";
  return 0;
}

PredictionSet PredictionsFromCsv(const std::string& path) {
  const csv::Table t = csv::Parse(ReadText(path));
  std::size_t pc = t.header.size(), yc = t.header.size();
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    const std::string h = NormalizeColumnName(t.header[c]);
    if (h == "p") pc = c;
    if (h == "y") yc = c;
  }
  if (pc == t.header.size() || yc == t.header.size()) {
    throw Error(ErrorCode::kSchema, "predictions file needs columns p and y",
                path);
  }
  std::vector<double> p;
  std::vector<int> y;
  for (const auto& row : t.rows) {
    try {
      p.push_back(std::stod(row.at(pc)));
      y.push_back(std::stoi(row.at(yc)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kValidation,
                  "unreadable prediction row " + std::to_string(p.size()),
                  path);
    }
  }
  return PredictionSet(std::move(p), std::move(y));
}

int Evaluate(const Options& o) {
  std::string tag = "predictions";
  std::optional<PredictionSet> ps;
  if (!o.predictions.empty()) {
    ps.emplace(PredictionsFromCsv(o.predictions));
  } else {
    if (o.data.empty()) {
      throw Error(ErrorCode::kArgument, "evaluate needs --data or --predictions",
                  "data");
    }
    const ModelBundle b = LoadBundle(BundlePath(o));
    tag = Tag(b, o);
    const LabeledDataset data = LoadDatasetFile(o.data, b.manifest);
    if (data.feature_names() != b.feature_names) {
      throw Error(ErrorCode::kSchema, "data columns differ from the bundle's");
    }
    std::vector<double> p(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
      p[i] = PredictCalibrated(b, data.row(i), tag);
    }
    ps.emplace(std::move(p),
               std::vector<int>(data.labels().begin(), data.labels().end()));
  }
  const ClassificationReport r = ClassificationReportOf(*ps);
  auto opt = [](std::optional<double> v) {
    return v ? csv::FormatNumber(*v) : std::string("undefined");
  };
  std::cout << "model " << tag << "\n"
            << "n " << ps->size() << "\n"
            << "accuracy " << csv::FormatNumber(r.accuracy) << "\n"
            << "precision " << opt(r.precision) << "\n"
            << "recall " << opt(r.recall) << "\n"
            << "brier " << csv::FormatNumber(BrierScore(*ps)) << "\n"
            << "ece " << csv::FormatNumber(ExpectedCalibrationError(*ps, o.bins))
            << "\n";
  try {
    std::cout << "calibration_slope "
              << csv::FormatNumber(CalibrationSlope(*ps).slope) << "\n";
  } catch (const Error& e) {
    std::cout << "calibration_slope undefined (" << e.what() << ")\n";
  }
  const fs::path dir = OutDir(o);
  WriteText(dir / ("reliability_" + tag + ".csv"),
            ReliabilityToCsv(ReliabilityCurve(*ps, o.bins)));
  WriteText(dir / ("dca_" + tag + ".csv"),
            DecisionCurveToCsv(DecisionCurve(*ps, DefaultDcaThresholds())));
  return 0;
}

int Audit(const Options& o, bool gap_given) {
  const ModelBundle b = LoadBundle(BundlePath(o));
  std::cout << SubgroupReportToCsv(b.fairness);
  const auto flags =
      gap_given ? FlagDisparities(b.fairness, o.gap_threshold, o.min_group)
                : b.flags;
  std::cout << "\n" << DisparityFlagsToCsv(flags);
  return 0;
}

int Explain(const Options& o) {
  const ModelBundle b = LoadBundle(BundlePath(o));
  if (o.data.empty()) {
    throw Error(ErrorCode::kArgument, "explain needs --data and --row", "data");
  }
  const LabeledDataset data = LoadDatasetFile(o.data, b.manifest);
  if (o.row >= data.rows()) {
    throw Error(ErrorCode::kArgument,
                "row " + std::to_string(o.row) + " is out of range (" +
                    std::to_string(data.rows()) + " clean rows)",
                "row");
  }
  const auto raw = data.row(o.row);
  const AttributionSet att = ExplainProfile(b, raw);
  const Explanation e = TopKExplanation(att, o.top_k, b.feature_names, raw);
  std::cout << "row " << o.row << " (source line "
            << data.source_rows()[o.row] << ")\n"
            << "risk(" << b.default_model << ") "
            << csv::FormatNumber(PredictCalibrated(b, raw, b.default_model))
            << "\nbase_value " << csv::FormatNumber(att.base_value)
            << "\nforest_output " << csv::FormatNumber(att.output) << "\n"
            << "feature,value,phi,direction\n";
  for (const auto& c : e.items) {
    std::cout << csv::JoinRow({c.name, csv::FormatNumber(c.value),
                               csv::FormatNumber(c.phi), c.direction})
              << "\n";
  }
  if (e.all_zero) std::cout << "(all attributions are zero)\n";
  return 0;
}

int Report(const Options& o) {
  const ModelBundle b = LoadBundle(BundlePath(o));
  const fs::path dir = OutDir(o);
  WriteText(dir / "metrics.csv", MetricSummaryToCsv(b.metrics));
  WriteText(dir / "fairness.csv", SubgroupReportToCsv(b.fairness));
  WriteText(dir / "flags.csv", DisparityFlagsToCsv(b.flags));
  WriteText(dir / "importance.csv", GlobalImportanceToCsv(b.importance));
  for (const auto& [tag, curve] : b.reliability) {
    WriteText(dir / ("reliability_" + tag + ".csv"), ReliabilityToCsv(curve));
  }
  for (const auto& [tag, curve] : b.dca) {
    WriteText(dir / ("dca_" + tag + ".csv"), DecisionCurveToCsv(curve));
  }
  std::cout << MetricTable(b.metrics) << "report files written to "
            << dir.string() << "\n";
  return 0;
}

int Serve(const Options& o) {
  auto bundle = std::make_shared<const ModelBundle>(LoadBundle(BundlePath(o)));
  const std::string bind = EnvOr("PCOSRISK_BIND", o.bind);
  const BindAddress address =
      bind.empty() ? BindAddress{} : ParseBindAddress(bind);
  HttpService service(bundle);
  const int port = service.Start(address);
  std::cout << "serving bundle sha256:" << bundle->hash << " on "
            << address.host << ":" << port << std::endl;
  service.Wait();
  return 0;
}

int Synth(const Options& o) {
  if (o.data.empty()) {
    throw Error(ErrorCode::kArgument, "synth needs --data (output path)", "data");
  }
  WriteText(o.data, SyntheticKeralaCsv(o.rows, o.seed));
  return 0;
}

void PrintError(const Error& e) {
  const ApiError api = ToApiError(e);
  nlohmann::json err{{"code", api.code}, {"message", api.message}};
  err["field"] = api.field.empty() ? nlohmann::json(nullptr)
                                   : nlohmann::json(api.field);
  std::cerr << nlohmann::json{{"error", err}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calibrated, fairness-audited PCOS risk screening"};
  app.require_subcommand(1);
  Options o;

  auto add_bundle = [&](CLI::App* c) {
    c->add_option("--bundle", o.bundle, "Bundle path (or PCOSRISK_BUNDLE)");
  };

  auto* train = app.add_subcommand("train", "Train all models and save a bundle");
  train->add_option("--data", o.data, "Input CSV")->required();
  train->add_option("--manifest", o.manifest, "Schema manifest JSON");
  train->add_option("--criteria", o.criteria, "Rotterdam criteria JSON");
  train->add_option("--seed", o.seed, "Random seed");
  train->add_option("--bins", o.bins, "Reliability bins M")->check(CLI::PositiveNumber);
  train->add_option("--gap-threshold", o.gap_threshold, "Disparity flag gap");
  train->add_option("--min-group", o.min_group, "Minimum group size for warnings");
  train->add_flag("--quiet", o.quiet, "No progress output");
  add_bundle(train);

  auto* evaluate = app.add_subcommand("evaluate", "Metrics and plot data");
  evaluate->add_option("--data", o.data, "Labelled CSV to score");
  evaluate->add_option("--predictions", o.predictions, "CSV with p,y columns");
  evaluate->add_option("--model", o.model, "Model tag, e.g. rf-iso");
  evaluate->add_option("--bins", o.bins, "Reliability bins M")->check(CLI::PositiveNumber);
  evaluate->add_option("--out", o.out, "Output directory");
  add_bundle(evaluate);

  auto* audit = app.add_subcommand("audit", "Subgroup performance table");
  auto* gap = audit->add_option("--gap-threshold", o.gap_threshold,
                                "Recompute flags with this gap");
  audit->add_option("--min-group", o.min_group, "Minimum group size for warnings");
  add_bundle(audit);

  auto* explain = app.add_subcommand("explain", "Attribution table for one row");
  explain->add_option("--data", o.data, "CSV holding the row")->required();
  explain->add_option("--row", o.row, "Zero-based clean-row index");
  explain->add_option("--top-k", o.top_k, "Rows in the table");
  add_bundle(explain);

  auto* report = app.add_subcommand("report", "Write all plot-data files");
  report->add_option("--out", o.out, "Output directory");
  add_bundle(report);

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--bind", o.bind, "host:port (or PCOSRISK_BIND)");
  add_bundle(serve);

  auto* synth = app.add_subcommand("synth", "Write a synthetic demo dataset");
  synth->add_option("--data", o.data, "Output CSV path")->required();
  synth->add_option("--rows", o.rows, "Row count");
  synth->add_option("--seed", o.seed, "Random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return Train(o);
    if (evaluate->parsed()) return Evaluate(o);
    if (audit->parsed()) return Audit(o, gap->count() > 0);
    if (explain->parsed()) return Explain(o);
    if (report->parsed()) return Report(o);
    if (serve->parsed()) return Serve(o);
    if (synth->parsed()) return Synth(o);
  } catch (const Error& e) {
    PrintError(e);
    return 1;
  } catch (const std::exception& e) {
    PrintError(Error(ErrorCode::kIo, e.what()));
    return 1;
  }
  return 0;
}
