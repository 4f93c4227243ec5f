// Copyright 2026 The dpeuler Authors
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

// Runs the command line tool as a subprocess.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace {

using ::testing::HasSubstr;
using ::testing::Not;

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun Cli(const std::string& args) {
  const std::string command =
      std::string(DPEULER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  std::string out;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    out.append(buffer, got);
  }
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = ::testing::TempDir() + "dpeuler_cli_test_";
    ASSERT_EQ(Cli("generate --kind clustered --count 800 --seed 2 --out " +
                  Path("bodies.jsonl"))
                  .exit_code,
              0);
  }
  static std::string Path(const std::string& name) { return dir_ + name; }

  static std::string dir_;
};

std::string CliTest::dir_;

TEST_F(CliTest, ReleaseIsDeterministicAndHoldsNoSeed) {
  const std::string common = "release --bodies " + Path("bodies.jsonl") +
                             " --area-side 20 --rows 10 --diameter-bound 2"
                             " --epsilon 1 --seed 42 --out ";
  ASSERT_EQ(Cli(common + Path("r1.txt")).exit_code, 0);
  ASSERT_EQ(Cli(common + Path("r2.txt")).exit_code, 0);
  const std::string a = Slurp(Path("r1.txt"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, Slurp(Path("r2.txt")));
  EXPECT_THAT(a, HasSubstr("state = rounded"));
  EXPECT_THAT(a, Not(HasSubstr("seed")));
}

TEST_F(CliTest, FullAreaQueryOnReleaseIsNonNegativeInteger) {
  ASSERT_EQ(Cli("release --bodies " + Path("bodies.jsonl") +
                " --area-side 20 --cell-side 2 --diameter-bound 2 --seed 1"
                " --out " +
                Path("q.txt"))
                .exit_code,
            0);
  const CliRun r =
      Cli("query --in " + Path("q.txt") + " --rows 0:9 --cols 0:9");
  ASSERT_EQ(r.exit_code, 0);
  const double count = std::stod(r.out);
  EXPECT_GE(count, 0);
  EXPECT_EQ(count, static_cast<long>(count));
}

TEST_F(CliTest, StepwisePipelineAndVerify) {
  const std::string raw = Path("raw.txt"), noisy = Path("noisy.txt"),
                    cons = Path("cons.txt"), rounded = Path("rounded.txt");
  ASSERT_EQ(Cli("build --bodies " + Path("bodies.jsonl") +
                " --area-side 20 --rows 10 --diameter-bound 2 --out " + raw)
                .exit_code,
            0);
  EXPECT_EQ(Cli("verify --in " + raw).out, "c1=0 c2=0 c3=0\n");
  ASSERT_EQ(
      Cli("privatize --in " + raw + " --out " + noisy + " --seed 3").exit_code,
      0);
  ASSERT_EQ(Cli("infer --in " + noisy + " --out " + cons +
                " --objective linf --lp-dump " + Path("p.lp"))
                .exit_code,
            0);
  EXPECT_THAT(Slurp(Path("p.lp")), HasSubstr("Subject To"));
  ASSERT_EQ(Cli("round --in " + cons + " --out " + rounded).exit_code, 0);
  EXPECT_EQ(Cli("verify --in " + rounded).out, "c1=0 c2=0 c3=0\n");
}

TEST_F(CliTest, OutOfOrderStatesAreRejected) {
  const std::string raw = Path("order_raw.txt");
  ASSERT_EQ(Cli("build --bodies " + Path("bodies.jsonl") +
                " --area-side 20 --rows 5 --out " + raw)
                .exit_code,
            0);
  EXPECT_EQ(Cli("infer --in " + raw + " --out " + Path("x.txt")).exit_code, 1);
  EXPECT_EQ(Cli("round --in " + raw + " --out " + Path("x.txt")).exit_code, 1);
  // No diameter bound recorded or given.
  EXPECT_EQ(Cli("privatize --in " + raw + " --out " + Path("x.txt")).exit_code,
            1);
}

TEST_F(CliTest, ValidationErrorsExitWithOne) {
  EXPECT_EQ(Cli("").exit_code, 1);
  EXPECT_EQ(Cli("release --bodies /nonexistent --area-side 20 --rows 10 "
                "--diameter-bound 2 --out " +
                Path("x.txt"))
                .exit_code,
            1);
  EXPECT_EQ(Cli("generate --kind spiral --out " + Path("x.txt")).exit_code, 1);
  EXPECT_EQ(Cli("experiment --set colour=red").exit_code, 1);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  const std::string config = Path("run.cfg");
  std::ofstream(config) << "area_side = 20\nrows = 10\ndiameter_bound = 2\n"
                           "epsilon = 0.5\n";
  ASSERT_EQ(
      Cli("--config " + config + " release --bodies " + Path("bodies.jsonl") +
          " --epsilon 2 --seed 1 --out " + Path("c.txt"))
          .exit_code,
      0);
  EXPECT_THAT(Slurp(Path("c.txt")), HasSubstr("epsilon = 2\n"));
  EXPECT_THAT(Slurp(Path("c.txt")), HasSubstr("rows = 10\n"));
}

TEST_F(CliTest, ExperimentWritesTables) {
  const CliRun r =
      Cli("experiment --set kind=uniform --set body_count=300 --set rows=5 "
          "--set area_side=10 --set repetitions=3 --set query_percents=20,100");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_THAT(r.out, HasSubstr("# table: query_errors\n"));
  EXPECT_THAT(r.out, HasSubstr("# table: timings\n"));
}

}  // namespace
