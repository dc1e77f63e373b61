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

#ifndef STORVALUE_DISPATCH_H_
#define STORVALUE_DISPATCH_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "storvalue/lp_solver.h"
#include "storvalue/scenario.h"

namespace storvalue {

// How the renewable share constraint is imposed: renewable energy used
// (served directly or stored) is at least, or exactly, alpha times demand.
enum class RpsMode { kFloor, kEquality };

std::string ToString(RpsMode mode);
RpsMode ParseRpsMode(const std::string& text);

struct DispatchProblem {
  ScenarioData scenario;
  double alpha = 0.0;  // renewable share target in [0, 1]
  double beta = 0.0;   // storage capacity, MWh
  double delta = 0.0;  // capacity reserved for forecast errors, MWh
  RpsMode rps_mode = RpsMode::kFloor;
};

// Checks 0 <= alpha <= 1, 0 <= delta <= beta and the scenario invariants.
// With check_beta = false the capacity is ignored (used when the problem is
// a template for a family of capacities).
void ValidateDispatchProblem(const DispatchProblem& problem,
                             bool check_beta = true);

struct DispatchSolution {
  std::vector<double> grid;                 // g_t, bought from the grid
  std::vector<double> charge;               // a_t, grid to storage
  std::vector<double> discharge;            // b_t, storage to demand
  std::vector<double> renewable_to_demand;  // r^d_t
  std::vector<double> renewable_to_storage; // r^s_t
  std::vector<double> state_of_charge;      // x_0 .. x_T, T + 1 entries
  double objective = 0.0;
  // Sum of the duals of x_t <= beta - delta; the derivative of the optimal
  // cost with respect to beta (a subgradient at kinks). Never positive.
  double capacity_dual = 0.0;
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  int iterations = 0;
};

// Variable and row indices of the dispatch LP, one entry per period.
struct DispatchLayout {
  std::vector<int> grid, charge, discharge, renewable_to_demand,
      renewable_to_storage, state_of_charge;  // state_of_charge: x_1 .. x_T
  std::vector<int> capacity_rows;             // x_t <= beta - delta
  int rps_row = -1;
  int peak_variable = -1;                     // only in the peak model
};

// The cost-minimising dispatch LP for `problem`.
lp::LinearProgram BuildDispatchLp(const DispatchProblem& problem,
                                  DispatchLayout* layout = nullptr);

// Throws InfeasibleError when no dispatch meets the constraints and
// NumericalError when the kernel fails.
DispatchSolution SolveDispatch(const DispatchProblem& problem,
                               const lp::SolverOptions& options = {});

// Smallest capacity beta (including the reserve delta) for which the
// dispatch LP is feasible. problem.beta is ignored. Throws InfeasibleError
// ("structurally infeasible") if no capacity suffices.
double MinFeasibleCapacity(const DispatchProblem& problem,
                           const lp::SolverOptions& options = {});

// JSON object with arrays g, a, b, r_d, r_s, x and scalars objective,
// capacity_dual, status.
std::string DispatchSolutionToJson(const DispatchSolution& solution);
// One row per period: t, g, a, b, r_d, r_s, x (x_t after the period).
void WriteDispatchSolutionCsv(std::ostream& out,
                              const DispatchSolution& solution);

}  // namespace storvalue

#endif  // STORVALUE_DISPATCH_H_
