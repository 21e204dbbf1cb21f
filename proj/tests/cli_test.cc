// Copyright 2026 The AquaSub Authors.
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

// Runs the installed command line tool as a child process.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <random>
#include <string>

#include "aquasub/graph_store.h"
#include "aquasub/text.h"
#include "test_support.h"

namespace aquasub {
namespace {

namespace fs = std::filesystem;
using testsupport::FixturePath;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() /
           ("aquasub_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string &name) const { return (dir_ / name).string(); }

  RunResult Run(const std::string &args) const {
    std::string out = Path("stdout.txt"), err = Path("stderr.txt");
    std::string cmd = std::string("'") + AQUASUB_CLI_PATH + "' " + args + " >'" +
                      out + "' 2>'" + err + "'";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = ReadFile(out);
    r.err = ReadFile(err);
    return r;
  }

  static std::string Quote(const std::string &s) { return "'" + s + "'"; }
  static std::string Config() { return Quote(FixturePath("service.conf")); }

  fs::path dir_;
};

TEST_F(CliTest, Stats) {
  RunResult r = Run("stats --config " + Config());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("nodes\t17\n"), std::string::npos);
  EXPECT_NE(r.out.find("relation_types\t7\n"), std::string::npos);
  EXPECT_NE(r.out.find("edges\t44\n"), std::string::npos);

  RunResult j = Run("stats --json --snapshot " + Quote(FixturePath("fixture.snapshot")));
  ASSERT_EQ(j.exit_code, 0);
  EXPECT_EQ(j.out, R"({"node_count":17,"relation_type_count":7,"edge_count":44})"
                   "\n");
}

TEST_F(CliTest, RecommendDemoScenario) {
  RunResult r = Run("recommend --config " + Config() + " --recipe dairy_cream,sugar");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("total_wf 4180\n"), std::string::npos) << r.out;
  std::size_t oat = r.out.find("oat_cream");
  std::size_t soy = r.out.find("soy_cream");
  ASSERT_NE(oat, std::string::npos);
  EXPECT_LT(oat, soy);
  EXPECT_NE(r.out.find("swap dairy_cream -> oat_cream\n"), std::string::npos);
  EXPECT_NE(r.out.find("total_wf 4180 -> 1080 (delta -3100)\n"), std::string::npos);
  EXPECT_NE(r.out.find("fat 36.1 -> 12.9 (delta -23.2)\n"), std::string::npos);
  EXPECT_NE(r.out.find("substitutes for sugar: none\n"), std::string::npos);
}

TEST_F(CliTest, RecommendJsonApply) {
  RunResult r = Run("recommend --json --config " + Config() +
                    " --recipe 'heavy dairy cream,sugar' --apply dairy_cream=oat_cream");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["swaps"].size(), 1u);
  EXPECT_EQ(j["swaps"][0]["candidate"], "oat_cream");
  EXPECT_EQ(j["swaps"][0]["wf_before"], 4180);
  EXPECT_EQ(j["swaps"][0]["wf_after"], 1080);
  EXPECT_EQ(j["swaps"][0]["nutrients"][0]["name"], "fat");

  RunResult bad = Run("recommend --config " + Config() +
                      " --recipe dairy_cream --apply dairy_cream=butter");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.err.find("not_a_recommended_candidate"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Run("").exit_code, 2);
  EXPECT_EQ(Run("stats --no-such-flag").exit_code, 2);
  EXPECT_EQ(Run("ingest --out " + Quote(Path("x.tsv"))).exit_code, 2);
  EXPECT_EQ(Run("recommend --config " + Config()).exit_code, 2);
  WriteFileAtomic(Path("bad.conf"), "port=twelve\n");
  RunResult r = Run("stats --config " + Quote(Path("bad.conf")));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
  EXPECT_EQ(Run("--help").exit_code, 0);
}

TEST_F(CliTest, MalformedInputNamesTheLineAndWritesNothing) {
  WriteFileAtomic(Path("bad.nt"),
                  "<a> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <b> .\n"
                  "\n"
                  "<a> <http://www.w3.org/2000/01/rdf-schema#label> \"x .\n");
  RunResult r = Run("ingest --ntriples " + Quote(Path("bad.nt")) + " --out " +
                    Quote(Path("edges.tsv")));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("bad.nt"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(Path("edges.tsv")));

  WriteFileAtomic(Path("broken.snapshot"), "not a snapshot\n");
  RunResult s = Run("stats --snapshot " + Quote(Path("broken.snapshot")));
  EXPECT_EQ(s.exit_code, 1);
  EXPECT_NE(s.err.find("invalid_snapshot"), std::string::npos) << s.err;
}

TEST_F(CliTest, PipelineReproducesCommittedFixture) {
  ASSERT_EQ(Run("ingest --ntriples " + Quote(FixturePath("foodon.nt")) + " --kgtk " +
                Quote(FixturePath("nutrients.kgtk.tsv")) + " --wf " +
                Quote(FixturePath("water_footprint.csv")) + " --out " +
                Quote(Path("edges.tsv")))
                .exit_code,
            0);
  EXPECT_EQ(ReadFile(Path("edges.tsv")), ReadFile(FixturePath("edges.kgtk.tsv")));
  ASSERT_EQ(Run("align --edges " + Quote(Path("edges.tsv")) + " --out-links " +
                Quote(Path("links.csv")))
                .exit_code,
            0);
  EXPECT_EQ(ReadFile(Path("links.csv")), ReadFile(FixturePath("links.csv")));
  ASSERT_EQ(Run("build --edges " + Quote(Path("edges.tsv")) + " --links " +
                Quote(Path("links.csv")) + " --out " + Quote(Path("g.snapshot")))
                .exit_code,
            0);
  EXPECT_EQ(ReadFile(Path("g.snapshot")), ReadFile(FixturePath("fixture.snapshot")));
}

TEST_F(CliTest, TrainIsDeterministicAndImputeFillsGaps) {
  std::string snap = Quote(FixturePath("fixture.snapshot"));
  std::string common = "train --snapshot " + snap + " --seed 3 --epochs 30";
  ASSERT_EQ(Run(common + " --out " + Quote(Path("a.model")) + " --loss-curve " +
                Quote(Path("loss.csv")))
                .exit_code,
            0);
  ASSERT_EQ(Run(common + " --out " + Quote(Path("b.model"))).exit_code, 0);
  EXPECT_EQ(ReadFile(Path("a.model")), ReadFile(Path("b.model")));
  std::string loss = ReadFile(Path("loss.csv"));
  auto curve = SplitLines(loss);
  EXPECT_EQ(curve.front(), "epoch,mse");
  EXPECT_EQ(std::count_if(curve.begin(), curve.end(),
                          [](std::string_view l) { return !l.empty(); }),
            32);

  ASSERT_EQ(Run("impute --snapshot " + snap + " --model " +
                Quote(FixturePath("fixture.model")) + " --out " +
                Quote(Path("imputed.snapshot")))
                .exit_code,
            0);
  Graph g = LoadSnapshot(ReadFile(Path("imputed.snapshot")));
  std::size_t ingredients = g.NodesOfKind(NodeKind::kIngredient).size();
  std::size_t numeric = 0;
  for (const auto &id : g.NodesOfKind(NodeKind::kIngredient)) {
    for (Relation r : kNumericRelations) numeric += g.Outgoing(id, r).size();
  }
  EXPECT_EQ(numeric, ingredients * kNumericRelations.size());
}

}  // namespace
}  // namespace aquasub
