// Copyright 2026 The htxai Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <nlohmann/json.hpp>
#include <sstream>

#include "gtest/gtest.h"
#include "htxai/features.h"
#include "htxai/file_util.h"
#include "test_util.h"

namespace htxai {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "htxai");
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::ScratchDir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    WriteTextFile(Path("train.csv"), DatasetToCsv(testing::ToyDataset(300, 12, 1)));
    WriteTextFile(Path("test.csv"), DatasetToCsv(testing::ToyDataset(90, 10, 2)));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  void Train(std::vector<std::string> extra = {}) {
    std::vector<std::string> args = {"train", "--features", Path("train.csv"), "-o", Path("model.json"),
                                     "--n-estimators", "20"};
    args.insert(args.end(), extra.begin(), extra.end());
    const RunResult r = Cli(args);
    ASSERT_EQ(r.code, 0) << r.err;
  }

  fs::path dir_;
};

TEST_F(CliTest, ExtractWritesOneRowPerNet) {
  const RunResult r = Cli({"extract", "--netlist", testing::DataPath("fix10.v"), "--labels",
                           testing::DataPath("fix10_labels.json"), "-o", Path("f.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Dataset d = DatasetFromCsv(ReadTextFile(Path("f.csv")));
  EXPECT_EQ(d.size(), 10u);
  EXPECT_EQ(d.class_counts().n_trojan, 2u);
  const json meta = json::parse(ReadTextFile(Path("f.csv.meta.json")));
  EXPECT_EQ(meta["rows"], 10);
  EXPECT_EQ(meta["circuits"][0]["circuit"], "fix10");
  EXPECT_EQ(meta["inputs"].size(), 2u);
}

TEST_F(CliTest, ExtractWarnsOnUnknownLabel) {
  WriteTextFile(Path("labels.json"), R"({"fix10": ["n8", "nope"]})");
  const RunResult r = Cli({"extract", "--netlist", testing::DataPath("fix10.v"), "--labels", Path("labels.json"),
                           "-o", Path("f.csv")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("UnknownNet"), std::string::npos);
  EXPECT_EQ(json::parse(ReadTextFile(Path("f.csv.meta.json")))["warnings"].size(), 1u);
}

TEST_F(CliTest, MissingLibraryIsUsageErrorNamingPath) {
  const std::string missing = Path("no_such_lib.json");
  const RunResult r = Cli({"extract", "--netlist", testing::DataPath("fix10.v"), "--library", missing, "-o", Path("f.csv")});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
}

TEST_F(CliTest, MalformedNetlistIsBadInput) {
  WriteTextFile(Path("bad.v"), "module m (a);\n  input a;\n  FOO g (.A(a));\nendmodule\n");
  EXPECT_EQ(Cli({"extract", "--netlist", Path("bad.v"), "-o", Path("f.csv")}).code, cli::kBadInput);
}

TEST_F(CliTest, TrainReportsClassWeight) {
  const RunResult r = Cli({"train", "--features", Path("train.csv"), "-o", Path("model.json"), "--n-estimators", "20",
                           "--report", Path("report.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("positive_class_weight=25\n"), std::string::npos) << r.out;
  const json report = json::parse(ReadTextFile(Path("report.json")));
  EXPECT_EQ(report["positive_class_weight"], 25.0);
  EXPECT_EQ(report["config"]["n-estimators"], 20);
  EXPECT_EQ(report["model"]["sha256"], Sha256Hex(ReadTextFile(Path("model.json"))));
}

TEST_F(CliTest, TrainEnsembleHas31Members) {
  Train({"--ensemble", Path("ensemble.json")});
  const json e = json::parse(ReadTextFile(Path("ensemble.json")));
  EXPECT_EQ(e["members"].size(), 31u);
}

TEST_F(CliTest, SingleClassTraining) {
  WriteTextFile(Path("one.csv"), DatasetToCsv(testing::ToyDataset(20, 0, 3)));
  EXPECT_EQ(Cli({"train", "--features", Path("one.csv"), "-o", Path("m.json")}).code, cli::kSingleClass);
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  WriteTextFile(Path("cfg.json"), R"({"train": {"max-depth": 2, "n-estimators": 7}})");
  const RunResult r = Cli({"--config", Path("cfg.json"), "train", "--features", Path("train.csv"), "-o",
                           Path("model.json"), "--report", Path("report.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = json::parse(ReadTextFile(Path("report.json")));
  EXPECT_EQ(report["config"]["max-depth"], 2);
  EXPECT_EQ(report["model"]["trees"], 7);
}

TEST_F(CliTest, ShapOnEveryRow) {
  Train();
  const RunResult r = Cli({"explain", "--method", "shap", "--model", Path("model.json"), "--features", Path("test.csv"),
                           "--train", Path("train.csv"), "-o", Path("x.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json x = json::parse(ReadTextFile(Path("x.json")));
  EXPECT_EQ(x["records"].size(), 100u);
  EXPECT_EQ(x["summary"]["coverage"], 1.0);
  EXPECT_LT(x["summary"]["max_local_accuracy_error"].get<double>(), 1e-9);
  EXPECT_EQ(x["records"][0]["ranking"].size(), 5u);
}

TEST_F(CliTest, OtherMethodsProduceRecords) {
  Train({"--ensemble", Path("ensemble.json")});
  for (const std::string method : {"lime", "gradient", "case"}) {
    const RunResult r = Cli({"explain", "--method", method, "--model", Path("model.json"), "--features",
                             Path("test.csv"), "--train", Path("train.csv"), "-o", Path("x.json"), "--n-samples", "200"});
    ASSERT_EQ(r.code, 0) << method << r.err;
    EXPECT_EQ(json::parse(ReadTextFile(Path("x.json")))["records"].size(), 100u) << method;
  }
  const RunResult r = Cli({"explain", "--method", "property", "--model", Path("ensemble.json"), "--features",
                           Path("test.csv"), "-o", Path("x.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json x = json::parse(ReadTextFile(Path("x.json")));
  EXPECT_EQ(x["records"][0]["confidence"].size(), 2u);

  const RunResult knn = Cli({"explain", "--method", "case", "--case-mode", "knn", "--features", Path("test.csv"),
                             "--train", Path("train.csv"), "-o", Path("x.json"), "--k", "3"});
  ASSERT_EQ(knn.code, 0) << knn.err;
  const json k = json::parse(ReadTextFile(Path("x.json")));
  EXPECT_EQ(k["records"][0]["neighbors"].size(), 3u);
  EXPECT_TRUE(k["records"][0]["probability"].is_null());
}

TEST_F(CliTest, MethodModelMismatch) {
  Train({"--ensemble", Path("ensemble.json")});
  EXPECT_EQ(Cli({"explain", "--method", "property", "--model", Path("model.json"), "--features", Path("test.csv"),
                 "-o", Path("x.json")})
                .code,
            cli::kModelMismatch);
  EXPECT_EQ(Cli({"explain", "--method", "shap", "--model", Path("ensemble.json"), "--features", Path("test.csv"),
                 "--train", Path("train.csv"), "-o", Path("x.json")})
                .code,
            cli::kModelMismatch);
}

TEST_F(CliTest, CorruptModel) {
  WriteTextFile(Path("bad.json"), R"({"schema": "htxai.boosted_trees", "version": 99})");
  EXPECT_EQ(Cli({"evaluate", "--model", Path("bad.json"), "--features", Path("test.csv"), "--bootstrap", "0"}).code,
            cli::kBadModel);
}

TEST_F(CliTest, ConfusionMetrics) {
  const RunResult r = Cli({"evaluate", "--confusion", "24", "28", "22", "11318", "--bootstrap", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tp=24 fp=28 fn=22 tn=11318 precision=0.4615 recall=0.5217 f1=0.4898 accuracy=0.9956 "
                       "fpr=0.0025"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, TwoThresholdsGivePairedTest) {
  Train();
  const RunResult r = Cli({"evaluate", "--model", Path("model.json"), "--features", Path("test.csv"), "--threshold",
                           "0.5", "--threshold", "0.99", "--bootstrap", "200", "-o", Path("eval.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json e = json::parse(ReadTextFile(Path("eval.json")));
  ASSERT_EQ(e["evaluations"].size(), 2u);
  EXPECT_EQ(e["evaluations"][1]["threshold"], 0.99);
  EXPECT_EQ(e["pairwise"].size(), 1u);
  EXPECT_EQ(e["bonferroni"]["k"], 1);
  EXPECT_TRUE(e["evaluations"][0]["metrics"]["f1"].contains("ci"));
  EXPECT_TRUE(e.contains("sweep"));
}

TEST_F(CliTest, BootstrapIsSeeded) {
  Train();
  std::vector<std::string> args = {"evaluate", "--model", Path("model.json"), "--features", Path("test.csv"),
                                   "--bootstrap", "300", "--seed", "5", "-o", Path("eval.json")};
  ASSERT_EQ(Cli(args).code, 0);
  const std::string first = ReadTextFile(Path("eval.json"));
  ASSERT_EQ(Cli(args).code, 0);
  EXPECT_EQ(ReadTextFile(Path("eval.json")), first);
}

TEST_F(CliTest, CompareLengthMismatch) {
  Train();
  ASSERT_EQ(Cli({"evaluate", "--model", Path("model.json"), "--features", Path("test.csv"), "--bootstrap", "0",
                 "--predictions-out", Path("a.csv")})
                .code,
            0);
  ASSERT_EQ(Cli({"evaluate", "--model", Path("model.json"), "--features", Path("train.csv"), "--bootstrap", "0",
                 "--predictions-out", Path("b.csv")})
                .code,
            0);
  EXPECT_EQ(Cli({"evaluate", "--compare", Path("a.csv"), Path("b.csv"), "--bootstrap", "0"}).code,
            cli::kLengthMismatch);
  const RunResult same = Cli({"evaluate", "--compare", Path("a.csv"), Path("a.csv"), "--bootstrap", "0"});
  ASSERT_EQ(same.code, 0) << same.err;
  EXPECT_NE(same.out.find("chi2=0.0000 p=1"), std::string::npos) << same.out;
}

TEST_F(CliTest, SweepFromPredictions) {
  Train();
  ASSERT_EQ(Cli({"evaluate", "--model", Path("model.json"), "--features", Path("test.csv"), "--bootstrap", "0",
                 "--predictions-out", Path("p.csv")})
                .code,
            0);
  const RunResult r = Cli({"sweep", "--predictions", Path("p.csv"), "-o", Path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("best threshold ", 0), 0u);
  EXPECT_GE(json::parse(ReadTextFile(Path("s.json")))["sweep"]["rows"].size(), 2u);
}

TEST_F(CliTest, BenchgenInfeasibleAndDeterministic) {
  EXPECT_EQ(Cli({"benchgen", "-o", Path("c0"), "--gates", "10", "5"}).code, cli::kInfeasible);
  const std::vector<std::string> base = {"--n-circuits", "4", "--gates", "30", "60", "--seed", "11"};
  auto gen = [&](const std::string& sub) {
    std::vector<std::string> args = {"benchgen", "-o", Path(sub)};
    args.insert(args.end(), base.begin(), base.end());
    const RunResult r = Cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return ReadTextFile(Path(sub + "/manifest.json"));
  };
  EXPECT_EQ(gen("c1"), gen("c2"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, cli::kUsage);
  EXPECT_EQ(Cli({"train"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"evaluate", "--confusion", "1", "2", "3", "4", "--threshold", "1.5"}).code, cli::kUsage);
  EXPECT_EQ(Cli({"--version"}).code, cli::kOk);
}

}  // namespace
}  // namespace htxai
