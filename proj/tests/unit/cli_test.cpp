// Copyright 2026 The mipll Authors.
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mipll/error.hpp"
#include "mipll_tools/cli.hpp"
#include "mipll_tools/config.hpp"
#include "mipll_tools/experiment.hpp"

namespace mipll::tools {
namespace {

namespace fs = std::filesystem;

const std::string kData = MIPLL_TEST_DATA_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Value of `key=` in a space-separated line.
double field(const std::string& line, const std::string& key) {
  const auto at = line.find(key + "=");
  if (at == std::string::npos) throw std::runtime_error("no " + key + " in: " + line);
  return std::stod(line.substr(at + key.size() + 1));
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string str(const std::string& leaf = "") const { return (path_ / leaf).string(); }

 private:
  fs::path path_;
};

// Small enough to train in well under a second.
const std::vector<std::string> kTiny{"--set", "per_class=40", "--set", "test_per_class=20",
                                     "--set", "m_P=200",      "--set", "epochs=3"};

std::vector<std::string> with_tiny(std::vector<std::string> args) {
  args.insert(args.end(), kTiny.begin(), kTiny.end());
  return args;
}

TEST(Cli, CheckSumIsUnambiguous) {
  const CliRun r = run({"check", "--expr", "y1+y2", "--arity", "2", "--labels", "10", "--conditions",
                     "M,1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("condition=M verdict=true"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("condition=1 verdict=true"), std::string::npos) << r.out;
}

TEST(Cli, CheckXorReportsWitness) {
  const CliRun r =
      run({"check", "--expr", "(y1 != y2)", "--arity", "2", "--labels", "2", "--conditions", "M"});
  EXPECT_EQ(r.code, kExitConditionFailed);
  EXPECT_NE(r.out.find("condition=M verdict=false witness=(1,1)->(0,0)"), std::string::npos)
      << r.out;
}

TEST(Cli, CheckOperatorMulti) {
  const CliRun wide = run({"check", "--spec", kData + "/operator19.spec", "--conditions", "multi"});
  EXPECT_EQ(wide.code, kExitConditionFailed) << wide.out << wide.err;
  const CliRun narrow = run({"check", "--spec", kData + "/operator39.spec", "--conditions", "multi"});
  EXPECT_EQ(narrow.code, kExitOk) << narrow.out << narrow.err;
}

TEST(Cli, CheckSpaceFromWeightValues) {
  const CliRun r = run({"check", "--arity", "2", "--labels", "10", "--weight-values", "1,2,3,4,5",
                     "--conditions", "space"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("condition=space verdict=true"), std::string::npos) << r.out;
}

TEST(Cli, MissingSpecIsInputError) {
  const CliRun r = run({"check", "--spec", kData + "/does-not-exist.spec", "--conditions", "M"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({"check", "--expr", "y1+", "--arity", "2", "--labels", "3"}).code,
            kExitInputError);
  EXPECT_EQ(run({"bounds", "no_such_bound"}).code, kExitInputError);
  EXPECT_EQ(run({"bounds", "risk_transfer_M", "t=1e-4"}).code, kExitInputError);
}

TEST(Cli, BoundsRiskTransfer) {
  const CliRun r = run({"bounds", "risk_transfer_M", "t=1e-4", "c=10", "M=2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "0.1\n");
}

TEST(Cli, BoundsSampleComplexityAndFlags) {
  const CliRun thm1 =
      run({"bounds", "sample_complexity_thm1", "c=10", "M=2", "eps=0.1", "delta=0.1", "d_F=10"});
  EXPECT_EQ(thm1.code, kExitOk) << thm1.err;
  EXPECT_EQ(thm1.out.substr(0, thm1.out.find(' ')), "6553228");
  const CliRun prop1 =
      run({"bounds", "sample_complexity_prop1", "c=10", "M=2", "eps=0.1", "delta=0.1", "d_F=10"});
  EXPECT_NE(prop1.out.find("valid=false"), std::string::npos) << prop1.out;
  const CliRun thm3 = run({"bounds", "sample_complexity_thm3", "blocks=2:10,1:2", "dims=10,5",
                        "eps=0.1", "delta=0.1", "R=0.5", "form=proof"});
  EXPECT_EQ(thm3.code, kExitOk) << thm3.err;
  EXPECT_NEAR(field(thm3.out, "raw"), 6.7826534887690468e+7, 1e-3);
}

TEST(Cli, MatrixSum2IsInvertible) {
  const CliRun r = run({"matrix", "--expr", "y1+y2", "--arity", "2", "--labels", "10", "--marginal",
                     "uniform", "--k", "1", "--test-invertible"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("T_1 rows=19 cols=10"), std::string::npos);
  EXPECT_NE(r.out.find("rank=10 left_invertible=true"), std::string::npos) << r.out;
}

TEST(Cli, MatrixCyclicIsSingular) {
  const CliRun r = run({"matrix", "--spec", kData + "/cyclic3.spec", "--test-invertible"});
  EXPECT_EQ(r.code, kExitConditionFailed);
  EXPECT_NE(r.out.find("rank=1 left_invertible=false"), std::string::npos) << r.out;
}

TEST(Cli, WmcWithWeightFile) {
  const CliRun r = run({"wmc", "--vectors", "2,0;0,2", "--weights", kData + "/example4.weights"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(field(r.out, "wmc"), 0.384, 1e-15);
  const CliRun brute = run({"wmc", "--vectors", "2,0;0,2", "--weights", kData + "/example4.weights",
                         "--method", "brute"});
  EXPECT_EQ(field(brute.out, "wmc"), field(r.out, "wmc"));
}

TEST(Cli, WmcOfTopKPreimage) {
  const CliRun r = run({"wmc", "--expr", "y1+y2", "--arity", "2", "--labels", "10", "--uniform", "--s",
                     "2", "--k", "3"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(field(r.out, "sl"), -std::log(field(r.out, "wmc")), 1e-12);
}

TEST(Cli, TrainIsDeterministic) {
  TempDir a("mipll_cli_train_a"), b("mipll_cli_train_b");
  const CliRun ra = run(with_tiny({"train", "--preset", "sum2", "--out", a.str()}));
  const CliRun rb = run(with_tiny({"train", "--preset", "sum2", "--out", b.str()}));
  ASSERT_EQ(ra.code, kExitOk) << ra.err;
  ASSERT_EQ(rb.code, kExitOk) << rb.err;
  EXPECT_EQ(slurp(a.path() / "history.csv"), slurp(b.path() / "history.csv"));
  EXPECT_EQ(slurp(a.path() / "summary.txt"), slurp(b.path() / "summary.txt"));
  EXPECT_EQ(slurp(a.path() / "model.txt"), slurp(b.path() / "model.txt"));
  EXPECT_EQ(ra.out.rfind("final_acc=", 0), 0u) << ra.out;
  EXPECT_NE(ra.out.find(" partial01="), std::string::npos);
  EXPECT_NE(ra.out.find(" thm2_bound="), std::string::npos);

  const CliRun other = run(with_tiny({"--seed", "7", "train", "--preset", "sum2", "--out", b.str()}));
  ASSERT_EQ(other.code, kExitOk) << other.err;
  EXPECT_NE(slurp(a.path() / "history.csv"), slurp(b.path() / "history.csv"));
}

TEST(Cli, TrainRejectsBadConfig) {
  TempDir d("mipll_cli_bad");
  // The bad override must follow the tiny ones, which set m_P themselves.
  std::vector<std::string> zero_bags = with_tiny({"train", "--preset", "sum2", "--out", d.str()});
  zero_bags.insert(zero_bags.end(), {"--set", "m_P=0"});
  EXPECT_EQ(run(zero_bags).code, kExitInputError);
  EXPECT_EQ(run({"train", "--preset", "no-such-preset", "--out", d.str()}).code, kExitInputError);
  EXPECT_EQ(run({"train", "--preset", "sum2", "--set", "bogus_key=1", "--out", d.str()}).code,
            kExitInputError);
  EXPECT_EQ(run({"train", "--out", d.str()}).code, kExitInputError);
}

TEST(Cli, TrainConfigFile) {
  TempDir d("mipll_cli_cfg");
  std::ofstream(d.path() / "run.cfg") << "mode = single\nfamily = product\narity = 2\nlabels = 3\n"
                                         "per_class = 30\ntest_per_class = 10\nm_P = 100\n"
                                         "epochs = 2\nk = 2\n";
  const CliRun r = run({"train", "--config", d.str("run.cfg"), "--out", d.str("out")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(d.path() / "out" / "history.csv"));
}

TEST(Cli, TrainUnknownAndMultiSummaries) {
  TempDir d("mipll_cli_modes");
  const CliRun unknown = run(with_tiny({"train", "--preset", "weighted-sum-unknown", "--out", d.str()}));
  ASSERT_EQ(unknown.code, kExitOk) << unknown.err;
  EXPECT_NE(unknown.out.find("posterior_weights=("), std::string::npos) << unknown.out;
  EXPECT_NE(unknown.out.find("space_unambiguous="), std::string::npos) << unknown.out;
  const CliRun multi = run(with_tiny({"train", "--preset", "operator", "--out", d.str()}));
  ASSERT_EQ(multi.code, kExitOk) << multi.err;
  EXPECT_EQ(multi.out.rfind("final_acc=", 0), 0u) << multi.out;
}

TEST(Cli, SweepWritesOneRowPerPoint) {
  TempDir d("mipll_cli_sweep");
  const CliRun r = run(with_tiny({"sweep", "--preset", "sum2", "--axis", "M", "--values", "2,3",
                               "--seeds", "0,1", "--out", d.str()}));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string csv = slurp(d.path() / "sweep.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "axis,value,seed,final_acc,partial01,topk_risk,thm2_bound");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_NE(csv.find("\nM,3,1,"), std::string::npos);
}

TEST(Cli, SweepOverKLowersTopKRisk) {
  // Single runs can swap order at k = 3 vs 5; the seed average must not.
  TempDir d("mipll_cli_sweep_k");
  const CliRun r = run({"sweep", "--preset", "sum2", "--set", "per_class=100", "--set",
                        "test_per_class=20", "--set", "m_P=1000", "--set", "epochs=20", "--axis",
                        "k", "--values", "1,3,5", "--seeds", "0,1,2,3,4", "--out", d.str()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream csv(slurp(d.path() / "sweep.csv"));
  std::string line;
  std::getline(csv, line);
  std::map<int, std::vector<double>> by_k;
  while (std::getline(csv, line)) {
    const std::vector<std::string> cells = split(line, ',');
    by_k[std::stoi(cells[1])].push_back(std::stod(cells[5]));
  }
  ASSERT_EQ(by_k.size(), 3u);
  double prev = INFINITY;
  for (const auto& [k, risks] : by_k) {
    ASSERT_EQ(risks.size(), 5u);
    double mean = 0.0;
    for (double x : risks) mean += x / risks.size();
    EXPECT_LE(mean, prev) << "k=" << k;
    prev = mean;
  }
}

TEST(Cli, SweepValidation) {
  TempDir d("mipll_cli_sweep_bad");
  EXPECT_EQ(run({"sweep", "--preset", "sum2", "--axis", "k", "--values", "", "--out", d.str()}).code,
            kExitInputError);
  EXPECT_EQ(run({"sweep", "--preset", "sum2", "--axis", "lr", "--values", "1", "--out", d.str()})
                .code,
            kExitInputError);
  EXPECT_EQ(run({"sweep", "--preset", "xor", "--axis", "M", "--values", "2", "--out", d.str()}).code,
            kExitInputError);
}

TEST(Config, ParsesAndTracksUnreadKeys) {
  KeyValueConfig kv = KeyValueConfig::parse("# c\na = 1\nb=2.5 # trailing\n\nlist = 1, 2,3\n");
  EXPECT_EQ(kv.get_int("a", 0), 1);
  EXPECT_DOUBLE_EQ(kv.get_double("b", 0), 2.5);
  EXPECT_EQ(kv.get_int_list("list"), (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(kv.unread_keys().empty());
  kv.set_assignment("extra=x");
  EXPECT_EQ(kv.unread_keys(), (std::vector<std::string>{"extra"}));
  EXPECT_THROW(kv.set_assignment("novalue"), InvalidInput);
  EXPECT_THROW(KeyValueConfig::parse("just words\n"), InvalidInput);
  EXPECT_THROW(parse_int("12x", "n"), InvalidInput);
}

TEST(Config, ParseBlocks) {
  const auto blocks = parse_blocks("2:7:3, 1:2");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].count, 2);
  EXPECT_EQ(blocks[0].space.size(), 7);
  EXPECT_EQ(blocks[0].space.offset(), 3);
  EXPECT_EQ(blocks[1].space.offset(), 0);
  EXPECT_THROW(parse_blocks("2"), InvalidInput);
  EXPECT_THROW(parse_blocks("0:3"), InvalidInput);
}

TEST(Config, EveryPresetLoads) {
  for (const char* name :
       {"sum2", "sum3", "sum4", "product", "xor", "operator", "weighted-sum-unknown"}) {
    EXPECT_NO_THROW(experiment_from_config(load_preset(name))) << name;
  }
}

}  // namespace
}  // namespace mipll::tools
