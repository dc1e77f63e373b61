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

// Exact construction of the minimal-cost-versus-capacity function.
//
// The optimal dispatch cost C(beta) is convex, piecewise linear and
// non-increasing in the storage capacity beta, and the dual of the capacity
// constraint at any beta is a subgradient of C there. Fbs() exploits this:
// given the supporting lines at the two ends of an interval it intersects
// them at (z, c_z). If the LP value at z equals c_z, both lines are exact on
// their side of z and z is the only kink in the interval. Otherwise the
// interval is split at z and each half is processed the same way.

#ifndef STORVALUE_FBS_H_
#define STORVALUE_FBS_H_

#include <string>
#include <vector>

#include "storvalue/dispatch.h"
#include "storvalue/lp_solver.h"
#include "storvalue/piecewise_linear_curve.h"

namespace storvalue {

struct FbsOptions {
  // Slopes s and t are treated as equal when |s - t| <= slope_tolerance *
  // (1 + |s|).
  double slope_tolerance = 1e-7;
  // z is accepted as a kink when C(z) - c_z <= value_tolerance *
  // max(1, |C(z)|).
  double value_tolerance = 1e-6;
  // Breakpoints closer than this (MWh) are merged.
  double merge_tolerance = 1e-9;
  int max_depth = 200;
  int max_solves = 100000;
  lp::SolverOptions lp;
};

// One tangent-intersection test performed during construction.
struct TangentProbe {
  double z;
  double tangent_value;  // c_z
  double lp_value;       // C(z)
};

struct FbsStats {
  int lp_solves = 0;
  int max_depth = 0;
  std::vector<TangentProbe> probes;
};

struct FbsResult {
  PiecewiseLinearCurve curve;
  FbsStats stats;
};

// Builds C over [x, y] for the capacity family described by `problem`
// (its beta is ignored). Requires x < y and the LP to be feasible at x.
FbsResult Fbs(const DispatchProblem& problem, double x, double y,
              const FbsOptions& options = {});

// Fbs over [max(MinFeasibleCapacity, delta), beta_max].
FbsResult BuildCostCurve(const DispatchProblem& problem, double beta_max,
                         const FbsOptions& options = {});

struct CurveVerification {
  int samples = 0;
  double max_relative_deviation = 0.0;  // |curve - LP| / max(1, |LP|)
  double worst_beta = 0.0;
  std::vector<std::string> failures;     // LP solves that did not succeed

  bool ok(double tolerance) const {
    return failures.empty() && max_relative_deviation <= tolerance;
  }
};

// Re-solves the LP at n_samples evenly spaced capacities over the curve's
// interval (endpoints included) and compares against Evaluate(). Solver
// failures are recorded in the report rather than thrown.
CurveVerification VerifyCurve(const PiecewiseLinearCurve& curve,
                              const DispatchProblem& problem, int n_samples,
                              const lp::SolverOptions& options = {});

}  // namespace storvalue

#endif  // STORVALUE_FBS_H_
