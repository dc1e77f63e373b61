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

#include "storvalue/dispatch.h"

#include <cmath>
#include <numeric>
#include <ostream>

#include "json.hpp"
#include "storvalue/error.h"
#include "storvalue/format.h"

namespace storvalue {
namespace {

using lp::RowSense;
using lp::Term;

// Variables per period: g, a, b, r^d, r^s, x. x_0 = 0 is substituted out,
// x_T is fixed at zero. With `peak_model` the capacity rows become
// x_t - peak <= 0 and only the peak variable carries cost.
lp::LinearProgram BuildLp(const DispatchProblem& problem, bool peak_model,
                          DispatchLayout* out_layout) {
  const ScenarioData& s = problem.scenario;
  const int horizon = s.horizon();
  const double cost_scale = peak_model ? 0.0 : 1.0;

  lp::LinearProgram program;
  DispatchLayout layout;
  for (int t = 0; t < horizon; ++t) {
    layout.grid.push_back(program.AddVariable(cost_scale * s.price[t]));
    layout.charge.push_back(program.AddVariable(cost_scale * s.price[t]));
    layout.discharge.push_back(program.AddVariable(0.0));
    layout.renewable_to_demand.push_back(program.AddVariable(0.0));
    layout.renewable_to_storage.push_back(program.AddVariable(0.0));
    const double upper = t == horizon - 1 ? 0.0 : lp::kInfinity;
    layout.state_of_charge.push_back(program.AddVariable(0.0, 0.0, upper));
  }
  if (peak_model) layout.peak_variable = program.AddVariable(1.0);

  for (int t = 0; t < horizon; ++t) {
    program.AddRow({{layout.grid[t], 1.0},
                    {layout.discharge[t], 1.0},
                    {layout.renewable_to_demand[t], 1.0}},
                   RowSense::kEqual, s.demand_forecast[t]);
  }
  for (int t = 0; t < horizon; ++t) {
    std::vector<Term> terms = {{layout.state_of_charge[t], 1.0},
                               {layout.charge[t], -1.0},
                               {layout.renewable_to_storage[t], -1.0},
                               {layout.discharge[t], 1.0}};
    if (t > 0) terms.push_back({layout.state_of_charge[t - 1], -1.0});
    program.AddRow(std::move(terms), RowSense::kEqual, 0.0);
  }
  {
    std::vector<Term> terms;
    for (int t = 0; t < horizon; ++t) {
      terms.push_back({layout.renewable_to_demand[t], 1.0});
      terms.push_back({layout.renewable_to_storage[t], 1.0});
    }
    const double demand = std::accumulate(s.demand_forecast.begin(),
                                          s.demand_forecast.end(), 0.0);
    layout.rps_row = program.AddRow(
        std::move(terms),
        problem.rps_mode == RpsMode::kFloor ? RowSense::kGreaterEqual
                                            : RowSense::kEqual,
        problem.alpha * demand);
  }
  for (int t = 0; t < horizon; ++t) {
    program.AddRow({{layout.renewable_to_demand[t], 1.0},
                    {layout.renewable_to_storage[t], 1.0}},
                   RowSense::kLessEqual, s.renewable_forecast[t]);
  }
  // x_T is pinned to zero, so only x_1 .. x_{T-1} need the capacity row.
  for (int t = 0; t + 1 < horizon; ++t) {
    if (peak_model) {
      layout.capacity_rows.push_back(program.AddRow(
          {{layout.state_of_charge[t], 1.0}, {layout.peak_variable, -1.0}},
          RowSense::kLessEqual, 0.0));
    } else {
      layout.capacity_rows.push_back(
          program.AddRow({{layout.state_of_charge[t], 1.0}},
                         RowSense::kLessEqual, problem.beta - problem.delta));
    }
  }
  if (out_layout) *out_layout = std::move(layout);
  return program;
}

void CheckRenewableBudget(const DispatchProblem& problem) {
  const auto& s = problem.scenario;
  const double demand =
      std::accumulate(s.demand_forecast.begin(), s.demand_forecast.end(), 0.0);
  const double renewable = std::accumulate(s.renewable_forecast.begin(),
                                           s.renewable_forecast.end(), 0.0);
  if (problem.alpha * demand > renewable * (1.0 + 1e-12) + 1e-9) {
    throw InfeasibleError(
        "structurally infeasible: RPS target exceeds available renewable "
        "energy");
  }
}

}  // namespace

std::string ToString(RpsMode mode) {
  return mode == RpsMode::kEquality ? "equality" : "floor";
}

RpsMode ParseRpsMode(const std::string& text) {
  if (text == "floor") return RpsMode::kFloor;
  if (text == "equality") return RpsMode::kEquality;
  throw ValidationError("unknown rps mode '" + text + "'");
}

void ValidateDispatchProblem(const DispatchProblem& problem, bool check_beta) {
  ValidateScenario(problem.scenario);
  if (!(problem.alpha >= 0.0 && problem.alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0, 1]");
  }
  if (!(problem.delta >= 0.0) || !std::isfinite(problem.delta)) {
    throw ValidationError("delta must be finite and non-negative");
  }
  if (check_beta) {
    if (!(problem.beta >= 0.0) || !std::isfinite(problem.beta)) {
      throw ValidationError("beta must be finite and non-negative");
    }
    if (problem.delta > problem.beta) {
      throw ValidationError("delta exceeds capacity");
    }
  }
}

lp::LinearProgram BuildDispatchLp(const DispatchProblem& problem,
                                  DispatchLayout* layout) {
  ValidateDispatchProblem(problem);
  return BuildLp(problem, /*peak_model=*/false, layout);
}

DispatchSolution SolveDispatch(const DispatchProblem& problem,
                               const lp::SolverOptions& options) {
  ValidateDispatchProblem(problem);
  CheckRenewableBudget(problem);
  DispatchLayout layout;
  const lp::LinearProgram program = BuildLp(problem, false, &layout);
  const lp::LpSolution lp_solution = lp::SolveLp(program, options);
  switch (lp_solution.status) {
    case lp::SolveStatus::kOptimal:
      break;
    case lp::SolveStatus::kInfeasible:
      throw InfeasibleError("dispatch infeasible at beta = " +
                            FormatReported(problem.beta) + ", delta = " +
                            FormatReported(problem.delta));
    case lp::SolveStatus::kUnbounded:
      throw NumericalError("solver reported an unbounded dispatch problem");
    case lp::SolveStatus::kNumericalFailure:
      throw NumericalError("LP kernel failure: " + lp_solution.message);
  }

  const auto pick = [&](const std::vector<int>& indices) {
    std::vector<double> values;
    values.reserve(indices.size());
    for (int j : indices) values.push_back(lp_solution.primal[j]);
    return values;
  };
  DispatchSolution solution;
  solution.grid = pick(layout.grid);
  solution.charge = pick(layout.charge);
  solution.discharge = pick(layout.discharge);
  solution.renewable_to_demand = pick(layout.renewable_to_demand);
  solution.renewable_to_storage = pick(layout.renewable_to_storage);
  solution.state_of_charge = {0.0};
  for (double x : pick(layout.state_of_charge)) {
    solution.state_of_charge.push_back(x);
  }
  solution.objective = lp_solution.objective;
  for (int row : layout.capacity_rows) {
    solution.capacity_dual += lp_solution.row_duals[row];
  }
  solution.duality_gap = lp_solution.duality_gap;
  solution.primal_residual = lp_solution.primal_residual;
  solution.iterations = lp_solution.iterations;
  return solution;
}

double MinFeasibleCapacity(const DispatchProblem& problem,
                           const lp::SolverOptions& options) {
  ValidateDispatchProblem(problem, /*check_beta=*/false);
  CheckRenewableBudget(problem);
  DispatchLayout layout;
  const lp::LinearProgram program = BuildLp(problem, true, &layout);
  const lp::LpSolution lp_solution = lp::SolveLp(program, options);
  if (lp_solution.status == lp::SolveStatus::kInfeasible) {
    throw InfeasibleError(
        "structurally infeasible: no storage capacity satisfies the RPS "
        "constraint");
  }
  if (!lp_solution.optimal()) {
    throw NumericalError("LP kernel failure: " + lp_solution.message);
  }
  const double peak = std::max(0.0, lp_solution.objective);
  return peak + problem.delta;
}

std::string DispatchSolutionToJson(const DispatchSolution& solution) {
  const auto rounded = [](const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(RoundReported(x));
    return out;
  };
  nlohmann::ordered_json j;
  j["status"] = "optimal";
  j["objective"] = RoundReported(solution.objective);
  j["capacity_dual"] = RoundReported(solution.capacity_dual);
  j["g"] = rounded(solution.grid);
  j["a"] = rounded(solution.charge);
  j["b"] = rounded(solution.discharge);
  j["r_d"] = rounded(solution.renewable_to_demand);
  j["r_s"] = rounded(solution.renewable_to_storage);
  j["x"] = rounded(solution.state_of_charge);
  return j.dump(2);
}

void WriteDispatchSolutionCsv(std::ostream& out,
                              const DispatchSolution& solution) {
  out << "t,g,a,b,r_d,r_s,x\n";
  for (std::size_t t = 0; t < solution.grid.size(); ++t) {
    out << t + 1 << ',' << FormatReported(solution.grid[t]) << ','
        << FormatReported(solution.charge[t]) << ','
        << FormatReported(solution.discharge[t]) << ','
        << FormatReported(solution.renewable_to_demand[t]) << ','
        << FormatReported(solution.renewable_to_storage[t]) << ','
        << FormatReported(solution.state_of_charge[t + 1]) << '\n';
  }
}

}  // namespace storvalue
