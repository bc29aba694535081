// Copyright 2026 The reqshield Authors.
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

#include "reqshield/cli.h"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "reqshield/batch_io.h"
#include "test_support.h"

namespace reqshield {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult RunTool(std::vector<std::string> args) {
  args.insert(args.begin(), "reqshield");
  std::ostringstream out;
  std::ostringstream err;
  CliResult result;
  result.code = RunCli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::string Fixture(const std::string& name) {
  return testing::FixturePath(name).string();
}

// Sets an environment variable for the lifetime of the object.
class ScopedEnv {
 public:
  ScopedEnv(const char* name, const std::string& value) : name_(name) {
    ::setenv(name, value.c_str(), 1);
  }
  ~ScopedEnv() { ::unsetenv(name_); }

 private:
  const char* name_;
};

TEST(CliCompileTest, TrafficLight) {
  const CliResult r =
      RunTool({"compile", "-r", Fixture("traffic.cnf"), "-n", "4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_THAT(r.out, HasSubstr("dialect: cnf"));
  EXPECT_THAT(r.out, HasSubstr("engine: general"));
  EXPECT_THAT(r.out, HasSubstr("clauses: 4"));
}

TEST(CliCompileTest, Hemoglobin) {
  const CliResult r =
      RunTool({"compile", "-r", Fixture("hemoglobin.lin"), "-n", "4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_THAT(r.out, HasSubstr("dialect: linear"));
  EXPECT_THAT(r.out, HasSubstr("inequalities: 2"));
  EXPECT_THAT(r.out, HasSubstr("derived constraints: 0"));
}

TEST(CliCompileTest, CompileErrorsExitTwo) {
  const CliResult unsat =
      RunTool({"compile", "-r", Fixture("contradiction.cnf")});
  EXPECT_EQ(unsat.code, kExitInputError);
  EXPECT_THAT(unsat.err, HasSubstr("unsatisfiable"));
  const CliResult infeasible =
      RunTool({"compile", "-r", Fixture("infeasible.lin")});
  EXPECT_EQ(infeasible.code, kExitInputError);
  EXPECT_THAT(infeasible.err, HasSubstr("infeasible"));
  EXPECT_EQ(RunTool({"compile", "-r", "/nonexistent.cnf"}).code,
            kExitInputError);
  EXPECT_EQ(RunTool({"compile"}).code, kExitInputError);
  EXPECT_EQ(RunTool({}).code, kExitInputError);
  EXPECT_EQ(
      RunTool({"compile", "-r", Fixture("traffic.cnf"), "--engine", "linear"})
          .code,
      kExitInputError);
  EXPECT_EQ(
      RunTool({"compile", "-r", Fixture("traffic.cnf"), "--engine", "fast"})
          .code,
      kExitInputError);
}

TEST(CliCompileTest, HelpExitsZero) {
  EXPECT_EQ(RunTool({"--help"}).code, kExitOk);
}

TEST(CliApplyTest, HemoglobinRow) {
  testing::TempDir dir;
  const std::string out = (dir / "out.csv").string();
  const CliResult r = RunTool({"apply", "-r", Fixture("hemoglobin.lin"), "-i",
                               Fixture("hemoglobin_preds.csv"), "-o", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(ReadBatch(out).values, ElementsAre(10, 10, 38, 37));
}

TEST(CliApplyTest, TrafficLightWithReport) {
  testing::TempDir dir;
  const std::string out = (dir / "out.csv").string();
  const std::string report = (dir / "rep.json").string();
  const CliResult r =
      RunTool({"apply", "-r", Fixture("traffic.cnf"), "-i",
               Fixture("traffic_preds.csv"), "-o", out, "--report", report});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const PredictionBatch batch = ReadBatch(out);
  EXPECT_THAT(batch.column_names,
              ElementsAre("TrafficLight", "Red", "Yellow", "Green"));
  EXPECT_THAT(batch.values,
              ElementsAre(0.9, 1.0 - 0.4, 0.3, 0.2, 0.9, 0.8, 0.1, 0.2));
  const auto json = nlohmann::json::parse(testing::ReadFile(report));
  EXPECT_EQ(json["totals"]["rows_corrected"], 1);
  EXPECT_EQ(json["totals"]["violations_after"], 0);
}

TEST(CliApplyTest, CompliantInputIsBitIdentical) {
  testing::TempDir dir;
  const std::string in = (dir / "in.csv").string();
  const std::string out = (dir / "out.csv").string();
  WriteTextFile(in, "a,b,c,d\n0.9,0.80000000000000004,0.1,0.2\n");
  ASSERT_EQ(
      RunTool({"apply", "-r", Fixture("traffic.cnf"), "-i", in, "-o", out})
          .code,
      kExitOk);
  const PredictionBatch written = ReadBatch(out);
  const PredictionBatch original = ReadBatch(in);
  EXPECT_EQ(written.column_names, original.column_names);
  EXPECT_EQ(written.values, original.values);
}

TEST(CliApplyTest, WidthFromInputOrFlag) {
  testing::TempDir dir;
  const std::string out = (dir / "out.csv").string();
  EXPECT_EQ(RunTool({"apply", "-r", Fixture("traffic.cnf"), "-i",
                     Fixture("traffic_preds.csv"), "-o", out, "-n", "5"})
                .code,
            kExitInputError);
  EXPECT_EQ(RunTool({"apply", "-r", Fixture("traffic.cnf"), "-i",
                     Fixture("hemoglobin_preds.csv"), "-o", out})
                .code,
            kExitOk);
}

TEST(CliCheckTest, ViolationsAndCompliance) {
  const CliResult dirty = RunTool({"check", "-r", Fixture("traffic.cnf"), "-i",
                                   Fixture("traffic_preds.csv")});
  EXPECT_EQ(dirty.code, kExitViolations);
  EXPECT_THAT(dirty.out,
              HasSubstr("line 1: not y_0 or y_1 or y_2 or y_3: 1 violating"));
  EXPECT_THAT(dirty.out, HasSubstr("rows: 2, compliant: 1"));

  testing::TempDir dir;
  const std::string out = (dir / "out.csv").string();
  ASSERT_EQ(RunTool({"apply", "-r", Fixture("traffic.cnf"), "-i",
                     Fixture("traffic_preds.csv"), "-o", out})
                .code,
            kExitOk);
  EXPECT_EQ(RunTool({"check", "-r", Fixture("traffic.cnf"), "-i", out}).code,
            kExitOk);
  EXPECT_EQ(
      RunTool({"check", "-r", Fixture("traffic.cnf"), "-i", "/missing.csv"})
          .code,
      kExitInputError);
}

TEST(CliEnvironmentTest, EnvironmentFillsFlags) {
  testing::TempDir dir;
  const std::string out = (dir / "out.csv").string();
  ScopedEnv requirements("SHIELD_REQUIREMENTS", Fixture("hemoglobin.lin"));
  ScopedEnv input("SHIELD_INPUT", Fixture("hemoglobin_preds.csv"));
  ScopedEnv output("SHIELD_OUTPUT", out);
  ASSERT_EQ(RunTool({"apply"}).code, kExitOk);
  EXPECT_THAT(ReadBatch(out).values, ElementsAre(10, 10, 38, 37));
}

TEST(CliEnvironmentTest, FlagsWinOverEnvironment) {
  testing::TempDir dir;
  const std::string out = (dir / "out.csv").string();
  ScopedEnv requirements("SHIELD_REQUIREMENTS", Fixture("contradiction.cnf"));
  ScopedEnv ordering("SHIELD_ORDERING", "3,2,1,0");
  ScopedEnv engine("SHIELD_ENGINE", "general");
  const CliResult r = RunTool(
      {"apply", "-r", Fixture("hemoglobin.lin"), "--ordering", "0,1,2,3",
       "--engine", "auto", "-i", Fixture("hemoglobin_preds.csv"), "-o", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(ReadBatch(out).values, ElementsAre(10, 10, 38, 37));
}

TEST(CliEnvironmentTest, OrderingFromEnvironment) {
  testing::TempDir dir;
  const std::string out = (dir / "out.csv").string();
  ScopedEnv ordering("SHIELD_ORDERING", "1,0,3,2");
  ASSERT_EQ(RunTool({"apply", "-r", Fixture("hemoglobin.lin"), "-i",
                     Fixture("hemoglobin_preds.csv"), "-o", out})
                .code,
            kExitOk);
  EXPECT_THAT(ReadBatch(out).values, ElementsAre(12, 12, 38, 37));
}

TEST(CliOptionsTest, BadOrderingAndEpsilon) {
  testing::TempDir dir;
  const std::string out = (dir / "out.csv").string();
  EXPECT_EQ(RunTool({"compile", "-r", Fixture("hemoglobin.lin"), "--ordering",
                     "0,x,2,3"})
                .code,
            kExitInputError);
  EXPECT_EQ(RunTool({"compile", "-r", Fixture("hemoglobin.lin"), "--ordering",
                     "0,1,2"})
                .code,
            kExitInputError);
  EXPECT_EQ(RunTool({"compile", "-r", Fixture("hemoglobin.lin"),
                     "--strict-epsilon", "0"})
                .code,
            kExitInputError);
  EXPECT_EQ(
      RunTool({"compile", "-r", Fixture("hemoglobin.lin"), "--fm-cap", "0"})
          .code,
      kExitOk);
}

}  // namespace
}  // namespace reqshield
