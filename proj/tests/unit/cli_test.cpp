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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pcosrisk/bundle.hpp"
#include "test_util.hpp"

namespace pcosrisk {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunResult RunCli(const std::string& args) {
  static int counter = 0;
  const fs::path err = testing::TempPath("cli_stderr_" + std::to_string(counter++));
  const std::string cmd =
      std::string("\"") + PCOSRISK_CLI_PATH + "\" " + args + " 2>\"" +
      err.string() + "\"";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = Slurp(err);
  return r;
}

std::string Quote(const fs::path& p) { return "\"" + p.string() + "\""; }

// One small synthetic table and one bundle trained from it, shared by the
// tests below.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(testing::TempPath("cli"));
    fs::create_directories(*dir_);
    data_ = new fs::path(*dir_ / "synthetic.csv");
    bundle_ = new fs::path(*dir_ / "model.pcosb");
    synth_ = new RunResult(
        RunCli("synth --data " + Quote(*data_) + " --rows 160 --seed 3"));
    train_ = new RunResult(RunCli("train --quiet --seed 7 --data " + Quote(*data_) +
                               " --bundle " + Quote(*bundle_)));
  }
  static void TearDownTestSuite() {
    delete dir_;
    delete data_;
    delete bundle_;
    delete synth_;
    delete train_;
  }
  static fs::path* dir_;
  static fs::path* data_;
  static fs::path* bundle_;
  static RunResult* synth_;
  static RunResult* train_;
};
fs::path* CliTest::dir_ = nullptr;
fs::path* CliTest::data_ = nullptr;
fs::path* CliTest::bundle_ = nullptr;
RunResult* CliTest::synth_ = nullptr;
RunResult* CliTest::train_ = nullptr;

TEST_F(CliTest, TrainPrintsSixRowTableAndBundleHash) {
  ASSERT_EQ(synth_->exit_code, 0) << synth_->err;
  ASSERT_EQ(train_->exit_code, 0) << train_->err;
  for (const char* model : {"RF", "GBT", "SVM"}) {
    EXPECT_NE(train_->out.find(model), std::string::npos) << model;
  }
  const ModelBundle b = LoadBundle(bundle_->string());
  EXPECT_NE(train_->out.find("sha256:" + b.hash), std::string::npos);
  EXPECT_EQ(b.info.seed, 7u);
}

TEST_F(CliTest, AuditPrintsSubgroupTable) {
  const RunResult r = RunCli("audit --bundle " + Quote(*bundle_));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("Group,Category,Accuracy,Precision,Recall", 0), 0u);
  EXPECT_NE(r.out.find("attribute,group,metric"), std::string::npos);
  EXPECT_NE(r.out.find("Age,<25"), std::string::npos);
}

TEST_F(CliTest, EvaluatePredictionsFileMatchesHandOracle) {
  const fs::path preds = *dir_ / "preds.csv";
  std::ofstream(preds) << "p,y\n0.9,1\n0.2,0\n0.6,1\n";
  const RunResult r = RunCli("evaluate --predictions " + Quote(preds) +
                          " --out " + Quote(*dir_ / "eval"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string key;
  double value = -1;
  bool found = false;
  while (lines >> key) {
    if (key == "brier") {
      lines >> value;
      found = true;
      break;
    }
    std::getline(lines, key);
  }
  ASSERT_TRUE(found) << r.out;
  EXPECT_NEAR(value, 0.07, 1e-12);
  EXPECT_TRUE(fs::exists(*dir_ / "eval" / "reliability_predictions.csv"));
  EXPECT_TRUE(fs::exists(*dir_ / "eval" / "dca_predictions.csv"));
}

TEST_F(CliTest, EvaluateOnDataWritesPlotFiles) {
  const RunResult r = RunCli("evaluate --bundle " + Quote(*bundle_) + " --data " +
                          Quote(*data_) + " --model gbt-platt --bins 15 --out " +
                          Quote(*dir_ / "eval2"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("model gbt-platt"), std::string::npos);
  const std::string rel = Slurp(*dir_ / "eval2" / "reliability_gbt-platt.csv");
  EXPECT_EQ(std::count(rel.begin(), rel.end(), '\n'), 16);
}

TEST_F(CliTest, ExplainPrintsAttributionTable) {
  const RunResult r = RunCli("explain --bundle " + Quote(*bundle_) + " --data " +
                          Quote(*data_) + " --row 4 --top-k 4");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("row 4"), std::string::npos);
}

TEST_F(CliTest, ReportWritesEveryArtifact) {
  const fs::path out = *dir_ / "report";
  const RunResult r =
      RunCli("report --bundle " + Quote(*bundle_) + " --out " + Quote(out));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  for (const char* f : {"metrics.csv", "fairness.csv", "flags.csv",
                        "importance.csv", "reliability_rf-iso.csv",
                        "dca_svm-platt.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
}

TEST_F(CliTest, BundlePathFallsBackToEnvironment) {
  const RunResult r = RunCli("audit");
  EXPECT_NE(r.exit_code, 0);
  const std::string cmd_env =
      "env PCOSRISK_BUNDLE=" + Quote(*bundle_) + " \"" + PCOSRISK_CLI_PATH +
      "\" audit > /dev/null 2>&1";
  EXPECT_EQ(std::system(cmd_env.c_str()), 0);
}

TEST(CliErrorTest, FailureExitsNonZeroWithJsonError) {
  const RunResult r = RunCli("train --quiet --data /nonexistent/table.csv --bundle " +
                          testing::TempPath("never.pcosb"));
  EXPECT_EQ(r.exit_code, 1);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"]["code"], "io_error");
  EXPECT_FALSE(j["error"]["message"].get<std::string>().empty());
}

TEST(CliErrorTest, SchemaErrorNamesColumn) {
  const fs::path bad = testing::TempPath("bad_table.csv");
  std::ofstream(bad) << "a,b\n1,2\n";
  const RunResult r = RunCli("train --quiet --data " + Quote(bad) + " --bundle " +
                          testing::TempPath("never2.pcosb"));
  EXPECT_EQ(r.exit_code, 1);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"]["code"], "schema_error");
  EXPECT_EQ(j["error"]["field"], "PCOS (Y/N)");
}

}  // namespace
}  // namespace pcosrisk
