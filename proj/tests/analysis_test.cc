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

#include "storvalue/analysis.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles/oracles.h"
#include "storvalue/error.h"

namespace storvalue {
namespace {

PiecewiseLinearCurve HandCurve() {
  return PiecewiseLinearCurve({{0, 6}, {1, 5}, {2, 5}}, {-1, 0});
}

ScenarioData Scenario(std::vector<double> price, std::vector<double> demand,
                      std::vector<double> renewable) {
  ScenarioData s;
  s.price = std::move(price);
  s.demand_forecast = std::move(demand);
  s.renewable_forecast = std::move(renewable);
  return s;
}

PiecewiseLinearCurve CurveFor(const ScenarioData& s, double alpha,
                              double beta_max) {
  DispatchProblem p;
  p.scenario = s;
  p.alpha = alpha;
  return BuildCostCurve(p, beta_max).curve;
}

TEST(CostSavingTest, Examples) {
  const auto curve = HandCurve();
  EXPECT_DOUBLE_EQ(CostSaving(curve, 1.0), -1.0);
  EXPECT_DOUBLE_EQ(CostSaving(curve, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(CostSaving(curve, 2.0), -1.0);
  EXPECT_THROW(CostSaving(curve, 3.0), ValidationError);
  EXPECT_EQ(CostSavingAnchor(curve), 0.0);
}

TEST(CostSavingTest, AnchorsAtSmallestFeasibleCapacity) {
  // All renewable energy arrives in period 1 and must be stored to count.
  const auto s = Scenario({1, 1}, {1, 1}, {2, 0});
  const auto curve = CurveFor(s, 1.0, 3.0);
  EXPECT_NEAR(CostSavingAnchor(curve), 1.0, 1e-9);
  EXPECT_NEAR(CostSaving(curve, 1.0), 0.0, 1e-12);
  EXPECT_THROW(CostSaving(curve, 0.5), ValidationError);
}

TEST(LocRpsTest, Examples) {
  const auto curve = HandCurve();
  EXPECT_DOUBLE_EQ(LocRps(curve, curve, 1.5), 0.0);

  const auto s = Scenario({1, 2}, {1, 1}, {1, 0});
  const auto c0 = CurveFor(s, 0.0, 2.0);
  const auto c5 = CurveFor(s, 0.5, 2.0);
  EXPECT_NEAR(CostSaving(c0, 1.0), -1.0, 1e-9);
  EXPECT_NEAR(CostSaving(c5, 1.0), -1.0, 1e-9);
  EXPECT_NEAR(LocRps(c0, c5, 1.0), 0.0, 1e-9);
}

// The target curve saturates earlier: charging at the negative price and
// using the renewable energy compete for the same capacity. With the
// non-positive saving convention the loss is reported as a negative number.
TEST(LocRpsTest, TargetCurveSaturatesEarlier) {
  const auto s = Scenario({-1, 5}, {0, 1}, {1, 1});
  const auto c0 = CurveFor(s, 0.0, 2.0);
  const auto c5 = CurveFor(s, 0.5, 2.0);
  EXPECT_NEAR(CostSaving(c0, 1.0), -1.0, 1e-9);
  EXPECT_NEAR(CostSaving(c5, 1.0), -0.5, 1e-9);
  EXPECT_NEAR(LocRps(c0, c5, 1.0), -0.5, 1e-9);

  for (double alpha : {0.0, 0.5}) {
    for (double beta : {0.0, 1.0}) {
      testing::GridInstance inst{{-1, 5}, {0, 1}, {1, 1}, alpha, beta};
      const auto oracle = testing::GridSearchDispatch(inst, 0.05);
      ASSERT_TRUE(oracle.has_value());
      EXPECT_NEAR((alpha == 0.0 ? c0 : c5).Evaluate(beta), *oracle, 1e-9);
    }
  }
}

TEST(LocRlTest, Examples) {
  const auto curve = HandCurve();
  EXPECT_DOUBLE_EQ(LocRl(curve, 1.3, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(LocRl(curve, 2.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(LocRl(curve, 1.0, 1.0), 1.0);
  EXPECT_THROW(LocRl(curve, 1.0, 1.5), ValidationError);
  const PiecewiseLinearCurve reserved({{0, 6}, {1, 5}}, {-1}, 0.0, 0.5);
  EXPECT_THROW(LocRl(reserved, 1.0, 0.5), ValidationError);
}

// C is convex in beta, so delta -> C(beta - delta) - C(beta) is convex and
// non-decreasing.
TEST(LocRlTest, ConvexAndNonDecreasingInDelta) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> price(-10, 60), level(0, 100);
  for (int trial = 0; trial < 4; ++trial) {
    ScenarioData s;
    for (int t = 0; t < 24; ++t) {
      s.price.push_back(price(rng));
      s.demand_forecast.push_back(level(rng));
      s.renewable_forecast.push_back(level(rng));
    }
    const auto curve = CurveFor(s, 0.0, 300.0);
    const double beta = 300.0;
    std::vector<double> loss;
    for (int k = 0; k <= 60; ++k) loss.push_back(LocRl(curve, beta, 5.0 * k));
    for (std::size_t k = 1; k < loss.size(); ++k) {
      EXPECT_GE(loss[k], loss[k - 1] - 1e-9);
      if (k + 1 < loss.size()) {
        EXPECT_GE(loss[k + 1] - 2 * loss[k] + loss[k - 1], -1e-6);
      }
    }
  }
}

TEST(InvertCapacityTest, Examples) {
  const auto curve = HandCurve();
  EXPECT_DOUBLE_EQ(InvertCapacity(curve, 5.0), 1.0);
  EXPECT_DOUBLE_EQ(InvertCapacity(curve, 6.0), 0.0);
  EXPECT_DOUBLE_EQ(InvertCapacity(curve, 5.5), 0.5);
  EXPECT_DOUBLE_EQ(InvertCapacity(curve, 100.0), 0.0);
  try {
    InvertCapacity(curve, 4.0);
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("budget infeasible"), std::string::npos);
  }
}

TEST(PercentileBandsTest, SingleScenario) {
  const std::vector<ScenarioData> scenarios = {Scenario({3, 1, 2}, {1, 1, 1}, {0, 0, 0})};
  const ValueReport r = PercentileBands(scenarios, 0.0, 0.0, {0, 0.5, 1, 2},
                                        {10, 50, 90}, RpsMode::kFloor, 1);
  ASSERT_EQ(r.values.size(), 4u);
  const std::vector<double> expected = {0, -0.5, -1, -1};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(r.values[i], expected[i], 1e-9);
    for (const auto& [pct, band] : r.percentile_bands) {
      EXPECT_NEAR(band[i], expected[i], 1e-9) << pct;
    }
  }
  EXPECT_EQ(r.scenarios_used, 1);
}

TEST(PercentileBandsTest, LowerOrderStatistic) {
  const std::vector<ScenarioData> scenarios = {
      Scenario({1, 2}, {1, 1}, {0, 0}), Scenario({1, 4}, {1, 1}, {0, 0})};
  for (int threads : {1, 2}) {
    const ValueReport r = PercentileBands(scenarios, 0.0, 0.0, {1.0}, {50, 100 - 1e-9},
                                          RpsMode::kFloor, threads);
    EXPECT_NEAR(r.percentile_bands.at(50)[0], -3.0, 1e-9);
    EXPECT_NEAR(r.percentile_bands.begin()->second[0], -3.0, 1e-9);
    EXPECT_NEAR(r.percentile_bands.rbegin()->second[0], -1.0, 1e-9);
    EXPECT_NEAR(r.values[0], -2.0, 1e-9);
  }
}

TEST(PercentileBandsTest, ExcludesInfeasibleScenarios) {
  const std::vector<ScenarioData> scenarios = {
      Scenario({1, 2}, {1, 1}, {2, 0}), Scenario({1, 2}, {1, 1}, {0, 0})};
  const ValueReport r = PercentileBands(scenarios, 0.5, 0.0, {0.0, 1.0}, {50});
  EXPECT_EQ(r.scenarios_used, 1);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_THROW(PercentileBands({scenarios[1]}, 0.5, 0.0, {0.0}, {50}),
               InfeasibleError);
  EXPECT_THROW(PercentileBands(scenarios, 0.0, 0.0, {0.0}, {100}),
               ValidationError);
}

TEST(AnalyzeScenariosTest, ReserveLossAndSerialization) {
  AnalysisRequest request;
  request.kind = ValueKind::kLocRl;
  request.beta = 2.0;
  request.grid = {0, 0.5, 1, 1.5, 2};
  const ValueReport r =
      AnalyzeScenarios({Scenario({3, 1, 2}, {1, 1, 1}, {0, 0, 0})}, request);
  const std::vector<double> expected = {0, 0, 0, 0.5, 1};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(r.values[i], expected[i], 1e-9);
  }
  std::ostringstream csv;
  WriteValueReportCsv(csv, r);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "delta_mwh,value");
  EXPECT_NE(ValueReportToJson(r).find("\"loc_rl\""), std::string::npos);
  EXPECT_EQ(ParseValueKind("cost_saving"), ValueKind::kCostSaving);
  EXPECT_THROW(ParseValueKind("nope"), ValidationError);
}

TEST(AnalyzeScenariosTest, MagnitudeFlipsSign) {
  AnalysisRequest request;
  request.grid = {0, 1};
  request.percentiles = {50};
  const ValueReport r =
      AnalyzeScenarios({Scenario({3, 1, 2}, {1, 1, 1}, {0, 0, 0})}, request);
  const ValueReport m = Magnitude(r);
  EXPECT_NEAR(m.values[1], 1.0, 1e-9);
  EXPECT_NEAR(m.percentile_bands.at(50)[1], 1.0, 1e-9);
}

// Floor mode: a higher renewable target never lowers the cost.
TEST(AnalysisTest, FloorModeCurveDominance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> price(-10, 60), level(0, 100);
  for (int trial = 0; trial < 3; ++trial) {
    ScenarioData s;
    for (int t = 0; t < 24; ++t) {
      s.price.push_back(price(rng));
      s.demand_forecast.push_back(level(rng));
      s.renewable_forecast.push_back(level(rng) + 50);
    }
    const auto c1 = CurveFor(s, 0.1, 400);
    const auto c2 = CurveFor(s, 0.4, 400);
    for (double beta = std::max(c1.lower(), c2.lower()); beta <= 400; beta += 10) {
      EXPECT_LE(c1.Evaluate(beta), c2.Evaluate(beta) + 1e-7);
    }
  }
}

}  // namespace
}  // namespace storvalue
