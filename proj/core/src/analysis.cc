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

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "storvalue/error.h"
#include "storvalue/format.h"
#include "storvalue/order_statistics.h"

namespace storvalue {
namespace {

void RequireCovered(const PiecewiseLinearCurve& curve, double beta) {
  if (!curve.Covers(beta)) {
    throw ValidationError("beta " + FormatReported(beta) +
                          " outside curve coverage [" +
                          FormatReported(curve.lower()) + ", " +
                          FormatReported(curve.upper()) + "]");
  }
}

struct ScenarioOutcome {
  std::vector<double> values;
  double anchor = 0.0;
  std::string error;  // non-empty when the scenario was excluded
};

PiecewiseLinearCurve CurveFor(const ScenarioData& scenario, double alpha,
                              double delta, double beta_max,
                              const AnalysisRequest& request) {
  DispatchProblem problem;
  problem.scenario = scenario;
  problem.alpha = alpha;
  problem.delta = delta;
  problem.rps_mode = request.rps_mode;
  return BuildCostCurve(problem, beta_max, request.fbs).curve;
}

ScenarioOutcome EvaluateScenario(const ScenarioData& scenario,
                                 const AnalysisRequest& request) {
  ScenarioOutcome outcome;
  const auto& grid = request.grid;
  try {
    switch (request.kind) {
      case ValueKind::kCostSaving: {
        const auto curve = CurveFor(scenario, request.alpha, request.delta,
                                    grid.back(), request);
        outcome.anchor = CostSavingAnchor(curve);
        for (double beta : grid) {
          if (!curve.Covers(beta)) {
            throw InfeasibleError("infeasible at beta " + FormatReported(beta));
          }
          outcome.values.push_back(CostSaving(curve, beta));
        }
        break;
      }
      case ValueKind::kLocRps: {
        const auto base = CurveFor(scenario, 0.0, request.delta, grid.back(),
                                   request);
        const auto target = CurveFor(scenario, request.alpha, request.delta,
                                     grid.back(), request);
        outcome.anchor = std::max(CostSavingAnchor(base),
                                  CostSavingAnchor(target));
        for (double beta : grid) {
          if (!base.Covers(beta) || !target.Covers(beta)) {
            throw InfeasibleError("infeasible at beta " + FormatReported(beta));
          }
          outcome.values.push_back(LocRps(base, target, beta));
        }
        break;
      }
      case ValueKind::kLocRl: {
        const auto curve =
            CurveFor(scenario, request.alpha, 0.0, request.beta, request);
        for (double delta : grid) {
          if (!curve.Covers(request.beta - delta)) {
            throw InfeasibleError("infeasible with delta " +
                                  FormatReported(delta));
          }
          outcome.values.push_back(LocRl(curve, request.beta, delta));
        }
        break;
      }
    }
  } catch (const NumericalError&) {
    throw;
  } catch (const Error& e) {
    outcome.values.clear();
    outcome.error = e.what();
  }
  return outcome;
}

void CheckRequest(const std::vector<ScenarioData>& scenarios,
                  const AnalysisRequest& request) {
  if (scenarios.empty()) throw ValidationError("no scenarios");
  if (request.grid.empty()) throw ValidationError("empty grid");
  if (!std::is_sorted(request.grid.begin(), request.grid.end()) ||
      std::adjacent_find(request.grid.begin(), request.grid.end()) !=
          request.grid.end()) {
    throw ValidationError("grid must be strictly ascending");
  }
  for (double p : request.percentiles) {
    if (!(p > 0.0 && p < 100.0)) {
      throw ValidationError("percentiles must lie in (0, 100)");
    }
  }
  if (!(request.alpha >= 0.0 && request.alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0, 1]");
  }
  if (request.kind == ValueKind::kLocRl) {
    if (request.grid.front() < 0.0 || request.grid.back() > request.beta) {
      throw ValidationError("delta grid must lie within [0, beta]");
    }
  } else if (request.grid.front() < 0.0) {
    throw ValidationError("capacity grid must be non-negative");
  }
}

}  // namespace

double CostSavingAnchor(const PiecewiseLinearCurve& curve) {
  return curve.Covers(0.0) ? 0.0 : curve.lower();
}

double CostSaving(const PiecewiseLinearCurve& curve, double beta) {
  RequireCovered(curve, beta);
  return curve.Evaluate(beta) - curve.Evaluate(CostSavingAnchor(curve));
}

double LocRps(const PiecewiseLinearCurve& curve_no_rps,
              const PiecewiseLinearCurve& curve_rps, double beta) {
  return CostSaving(curve_no_rps, beta) - CostSaving(curve_rps, beta);
}

double LocRl(const PiecewiseLinearCurve& curve, double beta, double delta) {
  if (curve.delta() != 0.0) {
    throw ValidationError("reserve loss needs a curve built with delta = 0");
  }
  if (!(delta >= 0.0)) throw ValidationError("delta must be non-negative");
  if (delta > beta) throw ValidationError("delta exceeds capacity");
  RequireCovered(curve, beta);
  RequireCovered(curve, beta - delta);
  return curve.Evaluate(beta - delta) - curve.Evaluate(beta);
}

double InvertCapacity(const PiecewiseLinearCurve& curve, double budget) {
  if (!std::isfinite(budget)) throw ValidationError("budget must be finite");
  const auto& points = curve.breakpoints();
  const double slack = 1e-9 * std::max(1.0, std::abs(budget));
  if (budget < curve.min_value() - slack) {
    throw InfeasibleError("budget infeasible: below the curve minimum " +
                          FormatReported(curve.min_value()));
  }
  if (points.front().value <= budget + slack) return points.front().beta;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].value > budget + slack) continue;
    if (points[i].value >= budget - slack) return points[i].beta;
    // Crossing strictly inside segment i-1 -> i.
    const CurvePoint& a = points[i - 1];
    const CurvePoint& b = points[i];
    const double w = (a.value - budget) / (a.value - b.value);
    return a.beta + w * (b.beta - a.beta);
  }
  return points.back().beta;
}

std::string ToString(ValueKind kind) {
  switch (kind) {
    case ValueKind::kCostSaving: return "cost_saving";
    case ValueKind::kLocRps: return "loc_rps";
    case ValueKind::kLocRl: return "loc_rl";
  }
  return "unknown";
}

ValueKind ParseValueKind(const std::string& text) {
  if (text == "cost_saving") return ValueKind::kCostSaving;
  if (text == "loc_rps") return ValueKind::kLocRps;
  if (text == "loc_rl") return ValueKind::kLocRl;
  throw ValidationError("unknown value kind '" + text + "'");
}

ValueReport AnalyzeScenarios(const std::vector<ScenarioData>& scenarios,
                             const AnalysisRequest& request) {
  CheckRequest(scenarios, request);
  const int n = static_cast<int>(scenarios.size());
  std::vector<ScenarioOutcome> outcomes(n);

  int threads = request.threads > 0
                    ? request.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) outcomes[i] = EvaluateScenario(scenarios[i], request);
  } else {
    // Static striping; every worker writes only its own slots.
    std::vector<std::future<void>> workers;
    for (int w = 0; w < threads; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (int i = w; i < n; i += threads) {
          outcomes[i] = EvaluateScenario(scenarios[i], request);
        }
      }));
    }
    for (auto& f : workers) f.get();
  }

  ValueReport report;
  report.kind = request.kind;
  report.grid = request.grid;
  const std::size_t g = request.grid.size();
  std::vector<std::vector<double>> columns(g);
  double anchor = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!outcomes[i].error.empty()) {
      report.warnings.push_back("scenario " + std::to_string(i) +
                                " excluded: " + outcomes[i].error);
      continue;
    }
    ++report.scenarios_used;
    anchor = std::max(anchor, outcomes[i].anchor);
    for (std::size_t k = 0; k < g; ++k) columns[k].push_back(outcomes[i].values[k]);
  }
  if (report.scenarios_used == 0) {
    throw InfeasibleError("every scenario is infeasible on the requested grid");
  }
  if (anchor > 0.0) report.anchor = anchor;

  report.values.resize(g);
  for (std::size_t k = 0; k < g; ++k) {
    double total = 0.0;
    for (double v : columns[k]) total += v;
    report.values[k] = total / static_cast<double>(columns[k].size());
    std::sort(columns[k].begin(), columns[k].end());
  }
  for (double p : request.percentiles) {
    auto& band = report.percentile_bands[p];
    band.reserve(g);
    for (std::size_t k = 0; k < g; ++k) {
      band.push_back(LowerOrderStatistic(columns[k], p));
    }
  }
  return report;
}

ValueReport PercentileBands(const std::vector<ScenarioData>& scenarios,
                            double alpha, double delta,
                            const std::vector<double>& beta_grid,
                            const std::vector<double>& percentiles,
                            RpsMode rps_mode, int threads) {
  AnalysisRequest request;
  request.kind = ValueKind::kCostSaving;
  request.alpha = alpha;
  request.delta = delta;
  request.rps_mode = rps_mode;
  request.grid = beta_grid;
  request.percentiles = percentiles;
  request.threads = threads;
  return AnalyzeScenarios(scenarios, request);
}

ValueReport Magnitude(const ValueReport& report) {
  ValueReport flipped = report;
  for (double& v : flipped.values) v = -v;
  for (auto& [p, band] : flipped.percentile_bands) {
    for (double& v : band) v = -v;
  }
  return flipped;
}

void WriteValueReportCsv(std::ostream& out, const ValueReport& report) {
  out << (report.kind == ValueKind::kLocRl ? "delta_mwh" : "beta_mwh");
  out << (report.scenarios_used > 1 ? ",mean" : ",value");
  for (const auto& [p, band] : report.percentile_bands) {
    out << ",p" << FormatReported(p);
  }
  out << '\n';
  for (std::size_t k = 0; k < report.grid.size(); ++k) {
    out << FormatReported(report.grid[k]) << ',' << FormatReported(report.values[k]);
    for (const auto& [p, band] : report.percentile_bands) {
      out << ',' << FormatReported(band[k]);
    }
    out << '\n';
  }
}

std::string ValueReportToJson(const ValueReport& report) {
  const auto rounded = [](const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(RoundReported(x));
    return out;
  };
  nlohmann::ordered_json j;
  j["kind"] = ToString(report.kind);
  j["grid"] = rounded(report.grid);
  j["values"] = rounded(report.values);
  auto& bands = j["percentile_bands"] = nlohmann::ordered_json::object();
  for (const auto& [p, band] : report.percentile_bands) {
    bands[FormatReported(p)] = rounded(band);
  }
  if (report.anchor) j["anchor"] = RoundReported(*report.anchor);
  j["scenarios_used"] = report.scenarios_used;
  j["warnings"] = report.warnings;
  return j.dump(2);
}

}  // namespace storvalue
