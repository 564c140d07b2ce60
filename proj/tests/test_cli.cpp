// Copyright 2026 The dyncoh Authors
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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dyncoh/channel_io.hpp"
#include "dyncoh/free_sets.hpp"
#include "json.hpp"

namespace dyncoh {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dyncoh_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) {
    const std::string cmd = std::string(DYNCOH_CLI_PATH) + " " + args + " >" + path("stdout.txt") +
                            " 2>" + path("stderr.txt");
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  nlohmann::json report(const std::string& name) const {
    auto j = nlohmann::json::parse(read(name));
    j.erase("wall_time_seconds");
    return j;
  }

  fs::path dir_;
};

TEST_F(Cli, GenNamedHadamardMatchesKraus) {
  ASSERT_EQ(run("gen --kind named --name hadamard --out " + path("h.json")), 0);
  EXPECT_LT((load_channel_file(path("h.json")).channel.choi() - hadamard_channel().choi()).norm(), 1e-15);
  EXPECT_EQ(run("validate " + path("h.json")), 0);
}

TEST_F(Cli, GenNamedDephasing) {
  ASSERT_EQ(run("gen --kind named --name dephasing --dims 2x2 --out " + path("d.json")), 0);
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 1.0;
  EXPECT_EQ(load_channel_file(path("d.json")).channel.choi(), expect);
}

TEST_F(Cli, GenFreeIsMember) {
  ASSERT_EQ(run("gen --kind free --class DCI --seed 7 --dims 2x3 --out " + path("f.json")), 0);
  EXPECT_EQ(run("membership " + path("f.json") + " --class DCI"), 0);
  ASSERT_EQ(run("gen --kind named --name hadamard --out " + path("h.json")), 0);
  EXPECT_EQ(run("membership " + path("h.json") + " --class DCI"), 1);
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run("gen --kind random --seed 11 --dims 3x2 --out " + path("a.json")), 0);
  ASSERT_EQ(run("gen --kind random --seed 11 --dims 3x2 --out " + path("b.json")), 0);
  EXPECT_EQ(read("a.json"), read("b.json"));
}

TEST_F(Cli, BadDimsAreInputErrors) {
  EXPECT_EQ(run("gen --kind random --dims 2by2"), 2);
  EXPECT_EQ(run("gen --kind named --name hadamard --dims 3x3"), 2);
  EXPECT_EQ(run("gen --kind nonsense"), 2);
  EXPECT_EQ(run("suite closure --trials 1 --bogus"), 2);
}

TEST_F(Cli, MeasureDephasingIsZero) {
  ASSERT_EQ(run("gen --kind named --name dephasing --out " + path("d.json")), 0);
  ASSERT_EQ(run("measure " + path("d.json") + " --class DI --divergence diamond --json " + path("r.json")), 0);
  const auto r = report("r.json");
  EXPECT_LE(r["value"].get<double>(), 1e-6);
  EXPECT_TRUE(fs::exists(path("d.optimizer.json")));
  EXPECT_NO_THROW(load_channel_file(path("d.optimizer.json")));
}

TEST_F(Cli, MeasureHadamardIsReproducible) {
  ASSERT_EQ(run("gen --kind named --name hadamard --out " + path("h.json")), 0);
  const std::string cmd = "measure " + path("h.json") + " --class DCI --divergence diamond --seed 4 --json ";
  ASSERT_EQ(run(cmd + path("r1.json")), 0);
  ASSERT_EQ(run(cmd + path("r2.json")), 0);
  auto a = report("r1.json");
  auto b = report("r2.json");
  EXPECT_NEAR(a["value"].get<double>(), 1.0, 1e-6);
  EXPECT_EQ(a["value"].get<double>(), b["value"].get<double>());
  a.erase("command");
  b.erase("command");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(Cli, MeasureMalformedFile) {
  std::ofstream(path("bad.json")) << R"({"format_version": 1, "dim_in": 1, "dim_out": 2,
    "choi": [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})";
  EXPECT_EQ(run("measure " + path("bad.json") + " --class DI"), 2);
  EXPECT_NE(read("stderr.txt").find("choi.psd"), std::string::npos);
  std::ofstream(path("junk.json")) << "{";
  EXPECT_EQ(run("measure " + path("junk.json")), 2);
  EXPECT_EQ(run("measure " + path("missing.json")), 2);
}

TEST_F(Cli, DistanceIdentityHadamard) {
  ASSERT_EQ(run("gen --kind named --name hadamard --out " + path("h.json")), 0);
  ASSERT_EQ(run("gen --kind named --name identity --out " + path("i.json")), 0);
  ASSERT_EQ(run("distance " + path("i.json") + " " + path("h.json") + " --divergence all --json " + path("r.json")),
            0);
  const auto r = report("r.json");
  EXPECT_NEAR(r["values"]["Diamond"].get<double>(), 2.0, 1e-6);
  EXPECT_NEAR(r["values"]["ChannelTrace"].get<double>(), 2.0, 1e-6);
}

TEST_F(Cli, SuiteClosurePasses) {
  EXPECT_EQ(run("suite closure --dims 2x2 --trials 100 --quiet --json " + path("r.json")), 0);
  const auto r = report("r.json");
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_EQ(r["seed"].get<std::uint64_t>(), 0u);
  for (const auto& c : r["checks"]) EXPECT_EQ(c["status"], "pass");
}

TEST_F(Cli, SuitePinskerPasses) { EXPECT_EQ(run("suite pinsker --dims 2x2 --trials 20 --quiet"), 0); }

TEST_F(Cli, SuiteReportsAreDeterministic) {
  ASSERT_EQ(run("suite convexity --trials 1 --seed 3 --json " + path("a.json")), 0);
  ASSERT_EQ(run("suite convexity --trials 1 --seed 3 --json " + path("b.json")), 0);
  auto a = report("a.json");
  auto b = report("b.json");
  // The echoed command differs only in the report path.
  a.erase("command");
  b.erase("command");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(Cli, SuiteAllSmoke) {
  EXPECT_EQ(run("suite all --trials 1 --json " + path("r.json")), 0);
  const auto r = report("r.json");
  EXPECT_GT(r["checks"].size(), 50u);
}

}  // namespace
}  // namespace dyncoh
