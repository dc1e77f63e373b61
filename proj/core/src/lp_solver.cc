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

#include "storvalue/lp_solver.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "storvalue/error.h"

namespace storvalue::lp {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// min c's  s.t.  A s = b,  s >= 0,  b >= 0.
struct StandardForm {
  struct VariableMap {
    int column = -1;
    int negative_column = -1;  // free variables are split in two
    double sign = 1.0;
    double offset = 0.0;
  };

  int rows = 0;
  int columns = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<double> row_sign;
  // Column whose only nonzero sits in this row with the sign of b, usable
  // in a feasible starting basis. -1 when the row needs an artificial.
  std::vector<int> unit_column;
  std::vector<VariableMap> variables;
};

StandardForm ToStandardForm(const LinearProgram& lp) {
  StandardForm sf;
  const int n = lp.num_variables();
  sf.variables.resize(n);

  struct Entry {
    int row, column;
    double value;
  };
  std::vector<Entry> entries;
  std::vector<double> rhs;
  std::vector<int> slack_of_row;
  int next_column = 0;

  for (int j = 0; j < n; ++j) {
    auto& map = sf.variables[j];
    const double lower = lp.lower()[j];
    const double upper = lp.upper()[j];
    map.column = next_column++;
    if (std::isfinite(lower)) {
      map.offset = lower;
      if (std::isfinite(upper)) {
        const int row = static_cast<int>(rhs.size());
        const int slack = next_column++;
        entries.push_back({row, map.column, 1.0});
        entries.push_back({row, slack, 1.0});
        rhs.push_back(upper - lower);
        slack_of_row.push_back(slack);
      }
    } else if (std::isfinite(upper)) {
      map.offset = upper;
      map.sign = -1.0;
    } else {
      map.negative_column = next_column++;
    }
  }
  // Bound rows were numbered first; shift them behind the model rows so that
  // row indices of the original program are preserved.
  const int bound_rows = static_cast<int>(rhs.size());
  const int model_rows = lp.num_rows();
  for (auto& e : entries) e.row += model_rows;
  std::vector<double> all_rhs(model_rows, 0.0);
  all_rhs.insert(all_rhs.end(), rhs.begin(), rhs.end());
  std::vector<int> all_slack(model_rows, -1);
  all_slack.insert(all_slack.end(), slack_of_row.begin(), slack_of_row.end());

  for (int i = 0; i < model_rows; ++i) {
    const Row& row = lp.rows()[i];
    double b = row.rhs;
    for (const Term& term : row.terms) {
      const auto& map = sf.variables[term.variable];
      entries.push_back({i, map.column, term.coefficient * map.sign});
      if (map.negative_column >= 0) {
        entries.push_back({i, map.negative_column, -term.coefficient});
      }
      b -= term.coefficient * map.offset;
    }
    if (row.sense != RowSense::kEqual) {
      const int slack = next_column++;
      const double coefficient = row.sense == RowSense::kLessEqual ? 1.0 : -1.0;
      entries.push_back({i, slack, coefficient});
      if (coefficient > 0) all_slack[i] = slack;
    }
    all_rhs[i] = b;
  }

  sf.rows = model_rows + bound_rows;
  sf.columns = next_column;
  sf.a = Eigen::MatrixXd::Zero(sf.rows, sf.columns);
  for (const auto& e : entries) sf.a(e.row, e.column) += e.value;
  sf.b = Eigen::Map<const Eigen::VectorXd>(all_rhs.data(), sf.rows);
  sf.c = Eigen::VectorXd::Zero(sf.columns);
  for (int j = 0; j < n; ++j) {
    const auto& map = sf.variables[j];
    sf.c[map.column] += lp.cost()[j] * map.sign;
    if (map.negative_column >= 0) sf.c[map.negative_column] -= lp.cost()[j];
  }

  sf.row_sign.assign(sf.rows, 1.0);
  sf.unit_column.assign(sf.rows, -1);
  for (int i = 0; i < sf.rows; ++i) {
    if (sf.b[i] < 0.0) {
      sf.a.row(i) *= -1.0;
      sf.b[i] = -sf.b[i];
      sf.row_sign[i] = -1.0;
    }
    const int slack = all_slack[i];
    if (slack >= 0 && sf.a(i, slack) == 1.0) sf.unit_column[i] = slack;
  }

  // Crash: singleton structural columns replace artificials. A negative
  // entry is usable after flipping a row whose right-hand side is zero.
  std::vector<int> nonzeros(sf.columns, 0);
  std::vector<int> row_of(sf.columns, -1);
  for (int j = 0; j < sf.columns; ++j) {
    for (int i = 0; i < sf.rows; ++i) {
      if (sf.a(i, j) != 0.0) {
        ++nonzeros[j];
        row_of[j] = i;
      }
    }
  }
  std::vector<char> used(sf.columns, 0);
  for (int i = 0; i < sf.rows; ++i) {
    if (sf.unit_column[i] >= 0) used[sf.unit_column[i]] = 1;
  }
  for (int j = 0; j < sf.columns; ++j) {
    if (nonzeros[j] != 1 || used[j]) continue;
    const int i = row_of[j];
    if (sf.unit_column[i] >= 0) continue;
    if (sf.a(i, j) < 0.0) {
      if (sf.b[i] != 0.0) continue;
      sf.a.row(i) *= -1.0;
      sf.row_sign[i] = -sf.row_sign[i];
    }
    sf.unit_column[i] = j;
    used[j] = 1;
  }
  return sf;
}

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit, kSingular };

class TableauSimplex {
 public:
  TableauSimplex(const StandardForm& sf, const SolverOptions& options)
      : sf_(sf), options_(options) {
    const int m = sf.rows;
    basis_.assign(m, -1);
    int artificials = 0;
    for (int i = 0; i < m; ++i) {
      if (sf.unit_column[i] < 0) ++artificials;
    }
    total_columns_ = sf.columns + artificials;
    full_a_ = Eigen::MatrixXd::Zero(m, total_columns_);
    full_a_.leftCols(sf.columns) = sf.a;
    is_artificial_.assign(total_columns_, 0);
    int next = sf.columns;
    for (int i = 0; i < m; ++i) {
      if (sf.unit_column[i] >= 0) {
        basis_[i] = sf.unit_column[i];
      } else {
        full_a_(i, next) = 1.0;
        is_artificial_[next] = 1;
        basis_[i] = next++;
      }
    }
    is_basic_.assign(total_columns_, 0);
    for (int j : basis_) is_basic_[j] = 1;
    max_iterations_ = options.max_iterations > 0
                          ? options.max_iterations
                          : 50 * (m + total_columns_) + 1000;
    b_scale_ = std::max(1.0, sf.rows > 0 ? sf.b.cwiseAbs().maxCoeff() : 0.0);
  }

  SolveStatus Solve(std::string& message) {
    const int m = sf_.rows;
    const bool any_artificial = total_columns_ > sf_.columns;
    if (any_artificial) {
      cost_ = Eigen::VectorXd::Zero(total_columns_);
      for (int j = sf_.columns; j < total_columns_; ++j) cost_[j] = 1.0;
    } else {
      cost_ = Eigen::VectorXd::Zero(total_columns_);
      cost_.head(sf_.columns) = sf_.c;
    }
    allowed_.assign(total_columns_, 1);
    if (!Reinvert()) {
      message = "singular starting basis";
      return SolveStatus::kNumericalFailure;
    }

    if (any_artificial) {
      const PhaseResult r = Iterate();
      if (r == PhaseResult::kSingular) {
        message = "singular basis during phase 1";
        return SolveStatus::kNumericalFailure;
      }
      if (r == PhaseResult::kIterationLimit) {
        message = "iteration limit in phase 1";
        return SolveStatus::kNumericalFailure;
      }
      if (!Recheck()) {
        message = "singular basis after phase 1";
        return SolveStatus::kNumericalFailure;
      }
      double infeasibility = 0.0;
      for (int i = 0; i < m; ++i) {
        if (is_artificial_[basis_[i]]) infeasibility += std::max(0.0, rhs_[i]);
      }
      if (infeasibility > options_.feasibility_tolerance * b_scale_) {
        message = "phase 1 infeasibility " + std::to_string(infeasibility);
        return SolveStatus::kInfeasible;
      }
      DriveOutArtificials();
      cost_ = Eigen::VectorXd::Zero(total_columns_);
      cost_.head(sf_.columns) = sf_.c;
      for (int j = sf_.columns; j < total_columns_; ++j) allowed_[j] = 0;
      RefreshReducedCosts();
    }

    for (int round = 0; round < 4; ++round) {
      const PhaseResult r = Iterate();
      if (r == PhaseResult::kUnbounded) {
        message = "objective unbounded below";
        return SolveStatus::kUnbounded;
      }
      if (r == PhaseResult::kIterationLimit) {
        message = "iteration limit in phase 2";
        return SolveStatus::kNumericalFailure;
      }
      if (r == PhaseResult::kSingular || !Recheck()) {
        message = "singular basis in phase 2";
        return SolveStatus::kNumericalFailure;
      }
      bool feasible = true;
      for (int i = 0; i < m; ++i) {
        if (rhs_[i] < -options_.feasibility_tolerance * b_scale_) feasible = false;
      }
      if (!feasible) {
        message = "primal infeasibility after refactorization";
        return SolveStatus::kNumericalFailure;
      }
      if (EnteringColumn(/*bland=*/false) < 0) return SolveStatus::kOptimal;
      if (!Reinvert()) {
        message = "singular basis in phase 2";
        return SolveStatus::kNumericalFailure;
      }
    }
    message = "reduced costs did not settle after refactorization";
    return SolveStatus::kNumericalFailure;
  }

  // Basic values, columns of the standard form.
  Eigen::VectorXd StandardPrimal() const {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(sf_.columns);
    for (int i = 0; i < sf_.rows; ++i) {
      if (basis_[i] < sf_.columns) s[basis_[i]] = std::max(0.0, rhs_[i]);
    }
    return s;
  }

  // y = B^{-T} c_B from the last check, for the phase-2 costs.
  const Eigen::VectorXd& StandardDuals() const { return duals_; }

  int iterations() const { return iterations_; }

 private:
  Eigen::MatrixXd BasisMatrix() const {
    const int m = sf_.rows;
    Eigen::MatrixXd basis_matrix(m, m);
    for (int i = 0; i < m; ++i) basis_matrix.col(i) = full_a_.col(basis_[i]);
    return basis_matrix;
  }

  Eigen::VectorXd BasicCost() const {
    Eigen::VectorXd basic_cost(sf_.rows);
    for (int i = 0; i < sf_.rows; ++i) basic_cost[i] = cost_[basis_[i]];
    return basic_cost;
  }

  void RefreshReducedCosts() {
    reduced_ = cost_;
    if (sf_.rows > 0) reduced_.noalias() -= tableau_.transpose() * BasicCost();
    for (int j : basis_) reduced_[j] = 0.0;
  }

  // Rebuilds the whole tableau from a fresh factorization of the basis.
  bool Reinvert() {
    const int m = sf_.rows;
    since_refactor_ = 0;
    if (m == 0) {
      tableau_.resize(0, total_columns_);
      rhs_.resize(0);
      reduced_ = cost_;
      return true;
    }
    const Eigen::MatrixXd basis_matrix = BasisMatrix();
    const Eigen::VectorXd diagonal = basis_matrix.diagonal();
    const bool is_diagonal =
        (basis_matrix - Eigen::MatrixXd(diagonal.asDiagonal())).isZero(0.0) &&
        (diagonal.array() != 0.0).all();
    if (is_diagonal) {
      const Eigen::VectorXd inverse = diagonal.cwiseInverse();
      tableau_ = inverse.asDiagonal() * full_a_;
      rhs_ = inverse.cwiseProduct(sf_.b);
    } else {
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
      if (!(lu.rcond() > 1e-14)) return false;
      tableau_ = lu.solve(full_a_);
      rhs_ = lu.solve(sf_.b);
    }
    for (int i = 0; i < m; ++i) {
      tableau_.col(basis_[i]).setZero();
      tableau_(i, basis_[i]) = 1.0;
    }
    RefreshReducedCosts();
    return true;
  }

  // Recomputes basic values and reduced costs from a fresh factorization
  // without touching the tableau. Cheaper than Reinvert for a final check.
  bool Recheck() {
    const int m = sf_.rows;
    if (m == 0) {
      reduced_ = cost_;
      duals_.resize(0);
      return true;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(BasisMatrix());
    if (!(lu.rcond() > 1e-14)) return false;
    rhs_ = lu.solve(sf_.b);
    duals_ = lu.transpose().solve(BasicCost());
    reduced_ = cost_;
    reduced_.noalias() -= full_a_.transpose() * duals_;
    for (int j : basis_) reduced_[j] = 0.0;
    return true;
  }

  int EnteringColumn(bool bland) const {
    int entering = -1;
    double best = -options_.optimality_tolerance;
    for (int j = 0; j < total_columns_; ++j) {
      if (is_basic_[j] || !allowed_[j]) continue;
      const double d = reduced_[j];
      if (d < best || (bland && d < -options_.optimality_tolerance)) {
        entering = j;
        if (bland) break;
        best = d;
      }
    }
    return entering;
  }

  // Harris two-pass ratio test in normal mode; exact minimum ratio with
  // smallest-index tie breaking in Bland mode.
  int LeavingRow(int entering, bool bland, double& step) const {
    const int m = sf_.rows;
    const double pivot_tol = options_.pivot_tolerance;
    const double feas_tol = options_.feasibility_tolerance;
    double bound = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double alpha = tableau_(i, entering);
      if (alpha > pivot_tol) {
        const double relaxed =
            (bland ? std::max(rhs_[i], 0.0) : std::max(rhs_[i], 0.0) + feas_tol) /
            alpha;
        bound = std::min(bound, relaxed);
      }
    }
    if (!std::isfinite(bound)) return -1;
    int leaving = -1;
    double best_alpha = 0.0;
    for (int i = 0; i < m; ++i) {
      const double alpha = tableau_(i, entering);
      if (alpha <= pivot_tol) continue;
      const double ratio = std::max(rhs_[i], 0.0) / alpha;
      if (bland) {
        if (ratio <= bound * (1.0 + 1e-12) + 1e-15 &&
            (leaving < 0 || basis_[i] < basis_[leaving])) {
          leaving = i;
        }
      } else if (ratio <= bound && alpha > best_alpha) {
        leaving = i;
        best_alpha = alpha;
      }
    }
    step = std::max(rhs_[leaving], 0.0) / tableau_(leaving, entering);
    return leaving;
  }

  void Pivot(int row, int column) {
    const double pivot = tableau_(row, column);
    tableau_.row(row) /= pivot;
    rhs_[row] /= pivot;
    for (int i = 0; i < sf_.rows; ++i) {
      if (i == row) continue;
      const double factor = tableau_(i, column);
      if (factor == 0.0) continue;
      tableau_.row(i) -= factor * tableau_.row(row);
      rhs_[i] -= factor * rhs_[row];
      tableau_(i, column) = 0.0;
    }
    const double d = reduced_[column];
    if (d != 0.0) reduced_ -= d * tableau_.row(row).transpose();
    reduced_[column] = 0.0;
    tableau_(row, column) = 1.0;

    is_basic_[basis_[row]] = 0;
    basis_[row] = column;
    is_basic_[column] = 1;
    ++since_refactor_;
  }

  // Expects a freshly refactored tableau for the current costs.
  PhaseResult Iterate() {
    const int interval = options_.refactor_interval > 0
                             ? options_.refactor_interval
                             : std::max(64, sf_.rows);
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= max_iterations_) return PhaseResult::kIterationLimit;
      if (since_refactor_ >= interval && !Reinvert()) {
        return PhaseResult::kSingular;
      }
      const int entering = EnteringColumn(bland);
      if (entering < 0) return PhaseResult::kOptimal;
      double step = 0.0;
      const int leaving = LeavingRow(entering, bland, step);
      if (leaving < 0) return PhaseResult::kUnbounded;
      Pivot(leaving, entering);
      ++iterations_;
      if (step <= 1e-12) {
        if (++degenerate_run > options_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  // After phase 1, replaces basic artificials (at zero) by structural
  // columns where the row allows it. Rows without any usable entry are
  // redundant; their artificial stays basic at zero.
  void DriveOutArtificials() {
    for (int i = 0; i < sf_.rows; ++i) {
      if (!is_artificial_[basis_[i]]) continue;
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < sf_.columns; ++j) {
        if (is_basic_[j]) continue;
        const double v = std::abs(tableau_(i, j));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best >= 0) Pivot(i, best);
    }
  }

  const StandardForm& sf_;
  const SolverOptions& options_;
  int total_columns_ = 0;
  Eigen::MatrixXd full_a_;
  RowMajorMatrix tableau_;
  Eigen::VectorXd rhs_;
  Eigen::VectorXd reduced_;
  Eigen::VectorXd cost_;
  Eigen::VectorXd duals_;
  std::vector<int> basis_;
  std::vector<char> is_basic_;
  std::vector<char> is_artificial_;
  std::vector<char> allowed_;
  int iterations_ = 0;
  int max_iterations_ = 0;
  int since_refactor_ = 0;
  double b_scale_ = 1.0;
};

void FillCertificates(const LinearProgram& lp, LpSolution& solution) {
  const int n = lp.num_variables();
  const auto& rows = lp.rows();

  solution.objective = 0.0;
  for (int j = 0; j < n; ++j) solution.objective += lp.cost()[j] * solution.primal[j];

  double residual = 0.0;
  for (const Row& row : rows) {
    double activity = 0.0;
    for (const Term& t : row.terms) activity += t.coefficient * solution.primal[t.variable];
    const double diff = activity - row.rhs;
    switch (row.sense) {
      case RowSense::kLessEqual: residual = std::max(residual, diff); break;
      case RowSense::kGreaterEqual: residual = std::max(residual, -diff); break;
      case RowSense::kEqual: residual = std::max(residual, std::abs(diff)); break;
    }
  }
  for (int j = 0; j < n; ++j) {
    residual = std::max(residual, lp.lower()[j] - solution.primal[j]);
    residual = std::max(residual, solution.primal[j] - lp.upper()[j]);
  }
  solution.primal_residual = residual;

  solution.reduced_costs = lp.cost();
  double dual_objective = 0.0;
  double dual_residual = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double y = solution.row_duals[i];
    dual_objective += rows[i].rhs * y;
    if (rows[i].sense == RowSense::kLessEqual) dual_residual = std::max(dual_residual, y);
    if (rows[i].sense == RowSense::kGreaterEqual) dual_residual = std::max(dual_residual, -y);
    for (const Term& t : rows[i].terms) {
      solution.reduced_costs[t.variable] -= t.coefficient * y;
    }
  }
  for (int j = 0; j < n; ++j) {
    const double d = solution.reduced_costs[j];
    if (d > 0.0) {
      if (std::isfinite(lp.lower()[j])) {
        dual_objective += d * lp.lower()[j];
      } else {
        dual_residual = std::max(dual_residual, d);
      }
    } else if (d < 0.0) {
      if (std::isfinite(lp.upper()[j])) {
        dual_objective += d * lp.upper()[j];
      } else {
        dual_residual = std::max(dual_residual, -d);
      }
    }
  }
  solution.dual_objective = dual_objective;
  solution.dual_residual = dual_residual;
  solution.duality_gap = std::abs(solution.objective - dual_objective);
}

}  // namespace

int LinearProgram::AddVariable(double cost, double lower, double upper) {
  cost_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return static_cast<int>(cost_.size()) - 1;
}

int LinearProgram::AddRow(std::vector<Term> terms, RowSense sense, double rhs) {
  rows_.push_back(Row{std::move(terms), sense, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

void LinearProgram::Validate() const {
  const int n = num_variables();
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(cost_[j])) throw ValidationError("non-finite cost coefficient");
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] == kInfinity ||
        upper_[j] == -kInfinity) {
      throw ValidationError("invalid variable bound");
    }
    if (lower_[j] > upper_[j]) throw ValidationError("lower bound exceeds upper bound");
  }
  for (const Row& row : rows_) {
    if (!std::isfinite(row.rhs)) throw ValidationError("non-finite row right-hand side");
    for (const Term& t : row.terms) {
      if (t.variable < 0 || t.variable >= n) {
        throw ValidationError("row references unknown variable");
      }
      if (!std::isfinite(t.coefficient)) {
        throw ValidationError("non-finite constraint coefficient");
      }
    }
  }
}

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

LpSolution SolveLp(const LinearProgram& lp, const SolverOptions& options) {
  lp.Validate();
  const StandardForm sf = ToStandardForm(lp);

  LpSolution solution;
  TableauSimplex simplex(sf, options);
  solution.status = simplex.Solve(solution.message);
  solution.iterations = simplex.iterations();
  if (!solution.optimal()) return solution;

  const Eigen::VectorXd s = simplex.StandardPrimal();
  const int n = lp.num_variables();
  solution.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    const auto& map = sf.variables[j];
    double x = map.offset + map.sign * s[map.column];
    if (map.negative_column >= 0) x -= s[map.negative_column];
    solution.primal[j] = x;
  }
  const Eigen::VectorXd y = simplex.StandardDuals();
  solution.row_duals.resize(lp.num_rows());
  for (int i = 0; i < lp.num_rows(); ++i) {
    solution.row_duals[i] = sf.row_sign[i] * y[i];
  }
  FillCertificates(lp, solution);
  return solution;
}

}  // namespace storvalue::lp
