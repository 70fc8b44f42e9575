// Copyright 2026 The symfill Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "symfill/fill_structure.hpp"
#include "symfill/matrix_market.hpp"

namespace fs = std::filesystem;
using namespace symfill;

namespace {

const std::string kData = SYMFILL_DATA_DIR;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("symfill_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, FactorizeExampleRowEight) {
  const CliResult r = cli({"factorize", kData + "/example.mtx", "-o", path("ex")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("ex.structure"));
  const FillStructure fs = read_structure_text(in);
  EXPECT_EQ(std::vector<vertex_t>(fs.lower(8).begin(), fs.lower(8).end()), (std::vector<vertex_t>{1, 2, 3, 4, 5, 7}));
  EXPECT_EQ(std::vector<vertex_t>(fs.upper(8).begin(), fs.upper(8).end()), (std::vector<vertex_t>{9}));
  const std::string fills = slurp(path("ex.fills"));
  EXPECT_NE(fills.find("8 3\n8 4\n8 5\n"), std::string::npos) << fills;
  const auto stats = nlohmann::json::parse(slurp(path("ex.stats.json")));
  EXPECT_EQ(stats["fills"], 7);
  EXPECT_TRUE(fs::exists(path("ex.supernodes")));
}

TEST_F(CliTest, OracleStructureIsByteIdentical) {
  ASSERT_EQ(cli({"factorize", kData + "/example.mtx", "-o", path("g"), "--emit", "structure"}).code, 0);
  ASSERT_EQ(cli({"factorize", kData + "/example.mtx", "-o", path("o"), "--emit", "structure", "--algorithm",
                 "oracle"})
                .code,
            0);
  EXPECT_EQ(slurp(path("g.structure")), slurp(path("o.structure")));
  EXPECT_FALSE(fs::exists(path("g.stats.json")));
}

TEST_F(CliTest, DiagonalOnlyHasNoFills) {
  const CliResult r = cli({"factorize", kData + "/diagonal.mtx", "-o", path("d")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("d.structure"));
  const FillStructure fs = read_structure_text(in);
  EXPECT_EQ(to_graph(fs), load_matrix_market(kData + "/diagonal.mtx"));
  EXPECT_EQ(nlohmann::json::parse(slurp(path("d.stats.json")))["fills"], 0);
}

TEST_F(CliTest, StatsSchemaIsStableAcrossAlgorithms) {
  std::vector<std::string> keys;
  for (const char* algorithm : {"fill1", "fill2", "gsofa", "oracle"}) {
    ASSERT_EQ(cli({"factorize", kData + "/example.mtx", "-o", path(algorithm), "--algorithm", algorithm}).code, 0);
    const auto stats = nlohmann::ordered_json::parse(slurp(path(std::string(algorithm) + ".stats.json")));
    std::vector<std::string> these;
    for (const auto& item : stats.items()) these.push_back(item.key());
    if (keys.empty()) keys = these;
    EXPECT_EQ(these, keys) << algorithm;
    EXPECT_EQ(stats["fills"], 7) << algorithm;
  }
}

TEST_F(CliTest, VerifyExamplePasses) {
  const CliResult r = cli({"verify", kData + "/example.mtx"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(CliTest, VerifyReportsInjectedFault) {
  const CliResult r = cli({"verify", "--random", "48", "--seed", "7", "--inject-fault"});
  EXPECT_EQ(r.code, 4);
  const auto at = r.out.find("injected fault in row ");
  ASSERT_NE(at, std::string::npos) << r.out;
  const std::string row = r.out.substr(at + 22, r.out.find('\n', at) - at - 22);
  EXPECT_NE(r.out.find("gsofa differs"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("row " + row + ":"), std::string::npos) << r.out;
}

TEST_F(CliTest, VerifyRandomMatricesPass) {
  const CliResult r = cli({"verify", "--random", "48", "--count", "200", "--chunk-size", "8", "--max-supernode", "4",
                     "--concurrent-per-worker", "6", "--workers-per-node", "2", "--checked"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(CliTest, BenchReportsTepsConsistently) {
  ASSERT_EQ(cli({"generate", "-n", "400", "--degree", "5", "--seed", "2", "-o", path("m.mtx")}).code, 0);
  const CliResult r = cli({"bench", path("m.mtx"), "--workers-per-node", "2", "--budget-sweep", "--frontier-floor", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"teps", "traversed_edges", "per_worker_edges", "fills", "supernodes", "spill_events",
                          "iterations", "high_water_mark", "effective_concurrency"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  const double expected = j["traversed_edges"].get<double>() / j["fill_seconds"].get<double>();
  EXPECT_NEAR(j["teps"].get<double>(), expected, 1e-9 * expected);
  EXPECT_EQ(j["per_worker_edges"].size(), 2u);
  ASSERT_EQ(j["budget_sweep"].size(), 3u);
  for (const auto& entry : j["budget_sweep"]) {
    ASSERT_TRUE(entry.contains("identical")) << entry.dump();
    EXPECT_TRUE(entry["identical"].get<bool>());
  }
  EXPECT_GT(j["budget_sweep"][2]["spill_events"].get<int>(), 0);
}

TEST_F(CliTest, WorkerCountKeepsFills) {
  ASSERT_EQ(cli({"generate", "-n", "300", "--seed", "4", "-o", path("m.mtx")}).code, 0);
  const auto one = nlohmann::json::parse(cli({"bench", path("m.mtx"), "--runs", "1"}).out);
  const auto eight = nlohmann::json::parse(cli({"bench", path("m.mtx"), "--runs", "1", "--workers-per-node", "8"}).out);
  EXPECT_EQ(one["fills"], eight["fills"]);
}

TEST_F(CliTest, PermutationsApply) {
  {
    std::ofstream p(path("rev.perm"));
    for (int k = 9; k >= 0; --k) p << k << '\n';
  }
  const CliResult r = cli({"factorize", kData + "/example.mtx", "-o", path("p"), "--row-perm", path("rev.perm"),
                     "--col-perm", path("rev.perm"), "--emit", "stats"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(cli({"verify", kData + "/example.mtx", "--row-perm", path("rev.perm"), "--col-perm", path("rev.perm")})
                .code,
            0);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"factorize", path("missing.mtx")}).code, 1);
  {
    std::ofstream bad(path("bad.mtx"));
    bad << "%%MatrixMarket matrix coordinate pattern general\n3 3 1\n1 x\n";
  }
  EXPECT_EQ(cli({"factorize", path("bad.mtx"), "-o", path("b")}).code, 1);
  EXPECT_EQ(cli({"factorize", kData + "/example.mtx", "-o", path("c"), "--chunk-size", "0"}).code, 2);
  EXPECT_EQ(cli({"factorize", kData + "/example.mtx", "-o", path("c"), "--budget-bytes", "64"}).code, 2);
  EXPECT_EQ(cli({"factorize", kData + "/example.mtx", "--algorithm", "nope"}).code, 1);
  EXPECT_EQ(cli({"verify", "--random", "48", "--seed", "3", "--inject-fault"}).code, 4);
}

TEST_F(CliTest, GenerateIsSeeded) {
  const CliResult a = cli({"generate", "-n", "50", "--seed", "9"});
  const CliResult b = cli({"generate", "-n", "50", "--seed", "9"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, cli({"generate", "-n", "50", "--seed", "10"}).out);
}

}  // namespace
