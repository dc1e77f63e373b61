// Copyright 2026 The storvalue Authors
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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace storvalue::cli {
namespace {

std::string TempPath(const std::string& name) {
  return std::string(STORVALUE_TEST_TMPDIR) + "/cli_test_" + name;
}

std::string WriteFile(const std::string& name, const std::string& text) {
  const std::string path = TempPath(name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCommandLine(args, out, err);
  return {code, out.str(), err.str()};
}

std::string HandScenario() {
  return WriteFile("hand.csv",
                   "timestamp,price,demand_forecast,renewable_forecast\n"
                   "0,3,1,0\n1,1,1,0\n2,2,1,0\n");
}

TEST(CliTest, CurveOnHandInstance) {
  const Result r = Invoke({"curve", "--input", HandScenario(), "--beta-min", "0",
                           "--beta-max", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "beta_mwh,cost\n0,6\n1,5\n2,5\n");

  const Result j = Invoke({"curve", "--input", HandScenario(), "--beta-max", "2",
                           "--format", "json"});
  ASSERT_EQ(j.code, 0) << j.err;
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["slopes"].size(), 2u);
  EXPECT_DOUBLE_EQ(doc["slopes"][0].get<double>(), -1.0);
  EXPECT_DOUBLE_EQ(doc["interval"][1].get<double>(), 2.0);
}

TEST(CliTest, DeltaReserveCurve) {
  std::string csv = "error\n";
  for (int i = 0; i < 200; ++i) csv += std::to_string((i * 37) % 101 - 50) + "\n";
  const std::string errors = WriteFile("errors.csv", csv);
  const Result r = Invoke({"delta", "--errors", errors, "--q-list", "70,80,90,96,99"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "Q_percent,delta_mwh,method");
  double previous = -1e300;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const double delta = std::stod(line.substr(line.find(',') + 1));
    EXPECT_GT(delta, previous);
    previous = delta;
  }
  EXPECT_EQ(rows, 5);

  const Result laplace = Invoke({"delta", "--errors", errors, "--method", "laplace",
                                 "--format", "json"});
  EXPECT_EQ(laplace.code, 0) << laplace.err;
  EXPECT_NO_THROW(nlohmann::json::parse(laplace.out));
}

TEST(CliTest, SolveValidationAndInfeasibility) {
  const Result r = Invoke({"solve", "--input", HandScenario(), "--beta", "1",
                           "--delta", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("delta exceeds capacity"), std::string::npos);
  EXPECT_EQ(r.err.rfind("error kind=validation code=2 message=", 0), 0u);
  EXPECT_TRUE(r.out.empty());

  const Result infeasible = Invoke({"solve", "--input", HandScenario(), "--beta", "1",
                                    "--alpha", "0.5"});
  EXPECT_EQ(infeasible.code, 3);
  EXPECT_EQ(infeasible.err.rfind("error kind=infeasible code=3", 0), 0u);

  EXPECT_EQ(Invoke({"solve", "--input", TempPath("missing.csv"), "--beta", "1"}).code, 2);
  EXPECT_EQ(Invoke({"solve", "--input", HandScenario()}).code, 2);
  EXPECT_EQ(Invoke({"solve", "--bogus"}).code, 2);
  EXPECT_EQ(Invoke({}).code, 2);
  EXPECT_EQ(Invoke({"solve", "--input", HandScenario(), "--beta", "1",
                    "--rps-mode", "sideways"}).code, 2);
}

TEST(CliTest, SolveOutputs) {
  const Result r = Invoke({"solve", "--input", HandScenario(), "--beta", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,g,a,b,r_d,r_s,x");
  const Result j = Invoke({"solve", "--input", HandScenario(), "--beta", "1",
                           "--format", "json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(j.out)["objective"].get<double>(), 5.0);
}

TEST(CliTest, RiskComposesReserveAndDispatch) {
  const std::string errors = WriteFile("unit_errors.csv", "error\n0\n0.5\n1\n");
  // Q = 100 picks the largest error, 1 MWh, leaving no usable capacity.
  const Result r = Invoke({"solve", "--input", HandScenario(), "--beta", "1",
                           "--risk", "100", "--errors", errors, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(r.out)["objective"].get<double>(), 6.0);
  EXPECT_EQ(Invoke({"solve", "--input", HandScenario(), "--beta", "1", "--risk",
                    "50"}).code, 2);
  EXPECT_EQ(Invoke({"solve", "--input", HandScenario(), "--beta", "1", "--risk",
                    "50", "--delta", "0", "--errors", errors}).code, 2);
}

TEST(CliTest, Invert) {
  const Result r = Invoke({"invert", "--input", HandScenario(), "--beta-max", "2",
                           "--budget", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\n");
  const Result low = Invoke({"invert", "--input", HandScenario(), "--beta-max", "2",
                             "--budget", "4"});
  EXPECT_EQ(low.code, 3);
  EXPECT_NE(low.err.find("budget infeasible"), std::string::npos);
}

TEST(CliTest, AnalyzeIsDeterministicAcrossThreadCounts) {
  const std::string year = TempPath("year.csv");
  ASSERT_EQ(Invoke({"synth", "--seed", "7", "--horizon", "240", "--out", year}).code, 0);
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "3"}) {
    const std::string out = TempPath(std::string("bands_") + threads + ".csv");
    const Result r = Invoke({"analyze", "--input", year, "--split-horizon", "24",
                             "--alpha", "0.1", "--beta-max", "200", "--grid-points", "5",
                             "--percentiles", "10,50,90", "--threads", threads,
                             "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    outputs.push_back(ReadFile(out));
  }
  EXPECT_EQ(outputs[0], outputs[1]);
  EXPECT_EQ(outputs[0].substr(0, outputs[0].find('\n')), "beta_mwh,mean,p10,p50,p90");

  const Result rl = Invoke({"analyze", "--input", HandScenario(), "--kind", "loc_rl",
                            "--beta", "2", "--grid", "0,1,2"});
  ASSERT_EQ(rl.code, 0) << rl.err;
  EXPECT_EQ(rl.out, "delta_mwh,value\n0,0\n1,0\n2,1\n");

  const Result mag = Invoke({"analyze", "--input", HandScenario(), "--beta-max", "2",
                             "--grid-points", "3", "--magnitude"});
  ASSERT_EQ(mag.code, 0) << mag.err;
  EXPECT_EQ(mag.out, "beta_mwh,value\n0,0\n1,1\n2,1\n");
}

TEST(CliTest, SynthIsByteIdenticalPerSeed) {
  const Result a = Invoke({"synth", "--seed", "11", "--horizon", "48"});
  const Result b = Invoke({"synth", "--seed", "11", "--horizon", "48"});
  const Result c = Invoke({"synth", "--seed", "12", "--horizon", "48"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(Invoke({"synth", "--horizon", "0"}).code, 2);

  // The synthetic file feeds straight back into the solver.
  const std::string path = WriteFile("synth.csv", a.out);
  const Result first = Invoke({"solve", "--input", path, "--beta", "50"});
  const Result second = Invoke({"solve", "--input", path, "--beta", "50"});
  EXPECT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
}

TEST(CliTest, HelpExitsCleanly) {
  const Result r = Invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("curve"), std::string::npos);
}

}  // namespace
}  // namespace storvalue::cli
