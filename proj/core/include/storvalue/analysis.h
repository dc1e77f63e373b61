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

#ifndef STORVALUE_ANALYSIS_H_
#define STORVALUE_ANALYSIS_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "storvalue/dispatch.h"
#include "storvalue/fbs.h"
#include "storvalue/piecewise_linear_curve.h"
#include "storvalue/scenario.h"

namespace storvalue {

// Capacity the cost saving is measured from: 0 when the curve covers it,
// otherwise the curve's left end (the smallest feasible capacity).
double CostSavingAnchor(const PiecewiseLinearCurve& curve);

// C(beta) - C(anchor). Non-positive.
double CostSaving(const PiecewiseLinearCurve& curve, double beta);

// CS(beta | 0) - CS(beta | alpha): the saving forgone because of the
// renewable share target.
double LocRps(const PiecewiseLinearCurve& curve_no_rps,
              const PiecewiseLinearCurve& curve_rps, double beta);

// C(beta - delta) - C(beta) on a curve built without reserve: the cost of
// holding delta back for forecast errors. Requires 0 <= delta <= beta.
double LocRl(const PiecewiseLinearCurve& curve, double beta, double delta);

// Smallest capacity whose minimal cost is within `budget`. Throws
// InfeasibleError ("budget infeasible") below the curve minimum.
double InvertCapacity(const PiecewiseLinearCurve& curve, double budget);

enum class ValueKind { kCostSaving, kLocRps, kLocRl };

std::string ToString(ValueKind kind);
ValueKind ParseValueKind(const std::string& text);

struct ValueReport {
  ValueKind kind = ValueKind::kCostSaving;
  // beta for cost_saving and loc_rps, delta for loc_rl.
  std::vector<double> grid;
  // Single-scenario values, or the across-scenario mean.
  std::vector<double> values;
  // percentile -> value per grid point (lower order statistic).
  std::map<double, std::vector<double>> percentile_bands;
  // Largest cost-saving anchor used by any included scenario, when > 0.
  std::optional<double> anchor;
  int scenarios_used = 0;
  std::vector<std::string> warnings;
};

struct AnalysisRequest {
  ValueKind kind = ValueKind::kCostSaving;
  double alpha = 0.0;
  double delta = 0.0;   // reserve baked into cost-saving / loc_rps curves
  double beta = 0.0;    // fixed capacity for loc_rl
  RpsMode rps_mode = RpsMode::kFloor;
  std::vector<double> grid;
  std::vector<double> percentiles;
  // 0 picks std::thread::hardware_concurrency().
  int threads = 0;
  FbsOptions fbs;
};

// Evaluates the requested value function for every scenario on the grid
// and aggregates percentiles across scenarios. Scenarios that are
// infeasible somewhere on the grid are excluded and listed in warnings.
ValueReport AnalyzeScenarios(const std::vector<ScenarioData>& scenarios,
                             const AnalysisRequest& request);

// Cost-saving percentile bands on a capacity grid.
ValueReport PercentileBands(const std::vector<ScenarioData>& scenarios,
                            double alpha, double delta,
                            const std::vector<double>& beta_grid,
                            const std::vector<double>& percentiles,
                            RpsMode rps_mode = RpsMode::kFloor,
                            int threads = 0);

// Sign-flipped copy for plotting savings as positive numbers.
ValueReport Magnitude(const ValueReport& report);

void WriteValueReportCsv(std::ostream& out, const ValueReport& report);
std::string ValueReportToJson(const ValueReport& report);

}  // namespace storvalue

#endif  // STORVALUE_ANALYSIS_H_
