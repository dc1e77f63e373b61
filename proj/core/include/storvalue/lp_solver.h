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

// Dense two-phase primal simplex for small and medium linear programs.
//
// The problem is stated in natural form
//
//   minimize    c'x
//   subject to  rows:   a_i'x  (<=, >=, =)  rhs_i
//               bounds: lower_j <= x_j <= upper_j
//
// and internally rewritten to standard equality form with non-negative
// variables. The tableau is refactored from the basis with an LU
// decomposition periodically and once more at the end, so the reported
// primal values and duals come from a fresh solve of the final basis rather
// than from accumulated pivot updates.
//
// Dual sign convention: row_duals[i] is the sensitivity of the optimal
// objective to rhs_i. For a minimization this makes duals of binding
// "<=" rows non-positive and of binding ">=" rows non-negative.
// reduced_costs[j] = c_j - sum_i a_ij * row_duals[i] is the sensitivity to
// whichever bound of x_j is active (zero for basic variables).

#ifndef STORVALUE_LP_SOLVER_H_
#define STORVALUE_LP_SOLVER_H_

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace storvalue::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int variable;
  double coefficient;
};

struct Row {
  std::vector<Term> terms;
  RowSense sense;
  double rhs;
};

class LinearProgram {
 public:
  // Returns the variable index.
  int AddVariable(double cost, double lower = 0.0, double upper = kInfinity);
  // Returns the row index.
  int AddRow(std::vector<Term> terms, RowSense sense, double rhs);

  int num_variables() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<double>& cost() const { return cost_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<Row>& rows() const { return rows_; }

  // Throws ValidationError on dimension mismatches, NaN or infinite data,
  // and lower > upper.
  void Validate() const;

 private:
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Row> rows_;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

std::string ToString(SolveStatus status);

struct SolverOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  // Pivots between refactorizations; 0 selects max(64, rows).
  int refactor_interval = 0;
  // 0 selects 50 * (rows + columns) of the standard form.
  int max_iterations = 0;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 40;
};

struct LpSolution {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::vector<double> primal;
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  double dual_objective = 0.0;
  // |objective - dual_objective|, dual objective evaluated from the
  // original data with row_duals and reduced_costs.
  double duality_gap = 0.0;
  // Largest violation of any row or bound by `primal`.
  double primal_residual = 0.0;
  // Largest sign violation of row_duals / reduced_costs.
  double dual_residual = 0.0;
  int iterations = 0;
  std::string message;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

LpSolution SolveLp(const LinearProgram& lp, const SolverOptions& options = {});

}  // namespace storvalue::lp

#endif  // STORVALUE_LP_SOLVER_H_
