// Copyright 2026 The mobcache Authors
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

// Drives the mobcache binary end to end through the shell.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "mobcache/io.h"

namespace mobcache {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result Cli(const std::string& args) {
  const std::string cmd =
      std::string(MOBCACHE_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("mobcache_cli_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  static std::string Config(const std::string& name) {
    return (fs::path(MOBCACHE_CONFIG_DIR) / name).string();
  }
  // Two-helper config with capacity `c`, written next to a copy of its model.
  std::string DeskConfig(int c) const {
    WriteFile(dir_ / "desk1_model.json",
              ReadFile(Config("desk1_model.json")));
    const std::string path = Path("desk" + std::to_string(c) + ".json");
    WriteFile(path, R"({"n": 2, "d": 2,
      "catalog": {"num_files": 1, "file_size_bytes": 10},
      "helpers": {"slot_budget_bytes": 5, "cache_capacity_bytes": )" +
                        std::to_string(c) + R"(},
      "requests": {"zipf_shift": 0},
      "mobility": {"model": "desk1_model.json"}})");
    return path;
  }

  fs::path dir_;
};

TEST_F(CliTest, EstimateWorkedTrace) {
  WriteFile(Path("t.csv"),
            "user_id,timestamp_s,helper_id\nu,0,0\nu,50,1\nu,250,1\n");
  const Result r = Cli("estimate --trace " + Path("t.csv") +
                       " --slot-duration 100 --n 2 --out " + Path("m.json"));
  ASSERT_EQ(r.code, 0);
  const ModelArtifact m = ModelFromJson(ReadFile(Path("m.json")));
  EXPECT_EQ(m.model.init(), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(m.model.trans(), Matrix::FromRows({{0.0, 1.0}, {0.0, 1.0}}));
  EXPECT_EQ(m.slot_duration_s, 100.0);
}

TEST_F(CliTest, EstimateRejectsBadTraces) {
  WriteFile(Path("empty.csv"), "");
  EXPECT_EQ(Cli("estimate --trace " + Path("empty.csv") + " --n 2").code, 2);
  WriteFile(Path("header.csv"), "user_id,timestamp_s,helper_id\n");
  EXPECT_EQ(Cli("estimate --trace " + Path("header.csv") + " --n 2").code, 2);
  WriteFile(Path("bad.csv"), "user_id,timestamp_s,helper_id\nu,0,7\n");
  EXPECT_EQ(Cli("estimate --trace " + Path("bad.csv") + " --n 2").code, 2);
  EXPECT_EQ(Cli("estimate --trace " + Path("absent.csv") + " --n 2").code, 2);
  EXPECT_EQ(Cli("estimate --n 2").code, 2);
}

TEST_F(CliTest, GeneratedTraceYieldsValidModel) {
  ASSERT_EQ(Cli("generate-trace --n 9 --users 10000 --slots 5 --seed 4 "
                "--out " + Path("g.csv"))
                .code,
            0);
  ASSERT_EQ(Cli("estimate --trace " + Path("g.csv") + " --n 9 --out " +
                Path("g.json"))
                .code,
            0);
  // ModelFromJson enforces the stochastic invariants.
  const ModelArtifact m = ModelFromJson(ReadFile(Path("g.json")));
  EXPECT_EQ(m.model.num_helpers(), 9u);
}

TEST_F(CliTest, AllocateAndEvaluateDesk) {
  const Result aca = Cli("allocate --config " + DeskConfig(10) +
                         " --algorithm aca");
  ASSERT_EQ(aca.code, 0);
  EXPECT_EQ(AllocationFromJson(aca.out).allocation.x(),
            Matrix::FromRows({{1.0}, {1.0}}));

  const std::string tight = DeskConfig(5);
  ASSERT_EQ(Cli("allocate --config " + tight + " --algorithm oca --out " +
                Path("x.json"))
                .code,
            0);
  const AllocationArtifact oca = AllocationFromJson(ReadFile(Path("x.json")));
  EXPECT_EQ(oca.algorithm, "oca");
  EXPECT_NEAR(oca.objective_estimate, 0.5, 1e-12);

  const Result exact = Cli("evaluate --config " + tight + " --allocation " +
                           Path("x.json") + " --method exact");
  ASSERT_EQ(exact.code, 0);
  EXPECT_EQ(exact.out.rfind("p_fail=0.5 method=exact", 0), 0u) << exact.out;

  const std::string mc = "evaluate --config " + tight + " --allocation " +
                         Path("x.json") + " --method mc --samples 20000";
  const Result a = Cli(mc + " --seed 9");
  const Result b = Cli(mc + " --seed 9");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("method=mc samples=20000"), std::string::npos);
}

TEST_F(CliTest, ShippedDeskConfig) {
  const Result r =
      Cli("allocate --config " + Config("desk1.json") + " --algorithm oca");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(AllocationFromJson(r.out).objective_estimate, 0.5, 1e-12);
}

TEST_F(CliTest, ExitCodes) {
  const std::string desk = DeskConfig(10);
  EXPECT_EQ(Cli("allocate --config " + desk + " --algorithm lru").code, 2);
  EXPECT_EQ(Cli("allocate --config " + Path("absent.json")).code, 2);
  EXPECT_EQ(Cli("frobnicate").code, 2);
  EXPECT_EQ(Cli("sweep --config " + desk).code, 2);

  WriteFile(Path("big.json"), R"({"n": 2, "d": 2,
      "catalog": {"num_files": 1, "file_size_bytes": 10},
      "helpers": {"slot_budget_bytes": 5, "cache_capacity_bytes": 5},
      "mobility": {"model": "desk1_model.json"},
      "oca": {"enumeration_cap": 3}})");
  EXPECT_EQ(Cli("allocate --config " + Path("big.json") + " --algorithm oca")
                .code,
            3);

  // Allocation built for a different helper count.
  WriteFile(Path("x3.json"), R"({"n": 3, "num_files": 1, "x": [[1], [1], [1]],
      "algorithm": "aca", "objective_estimate": 0})");
  EXPECT_EQ(Cli("evaluate --config " + desk + " --allocation " +
                Path("x3.json"))
                .code,
            2);
}

TEST_F(CliTest, VerifyAndSweepAreDeterministic) {
  const Result v1 = Cli("verify --trials 4 --samples 20000");
  const Result v2 = Cli("verify --trials 4 --samples 20000");
  EXPECT_EQ(v1.code, 0);
  EXPECT_EQ(v1.out, v2.out);
  EXPECT_NE(v1.out.find("verify: all checks passed"), std::string::npos);

  WriteFile(Path("sweep.json"), R"({"n": 4, "d": 2,
      "catalog": {"num_files": 5, "file_size_bytes": 100},
      "helpers": {"slot_budget_bytes": 50, "cache_fraction": 0.1},
      "mobility": {"synthetic": {"seed": 2}},
      "algorithms": ["hua", "aca", "oca"],
      "sweep": {"axis": "cache_fraction", "values": [0.1, 0.2]}})");
  const Result s1 = Cli("sweep --config " + Path("sweep.json"));
  const Result s2 = Cli("sweep --config " + Path("sweep.json"));
  ASSERT_EQ(s1.code, 0);
  EXPECT_EQ(s1.out, s2.out);
  EXPECT_EQ(s1.out.rfind("axis_name,axis_value,algorithm,p_fail,", 0), 0u);
}

}  // namespace
}  // namespace mobcache
