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

#include "storvalue/fbs.h"

#include <algorithm>
#include <cmath>

#include "storvalue/error.h"
#include "storvalue/format.h"

namespace storvalue {
namespace {

struct Probe {
  double beta;
  double value;
  double slope;  // capacity dual, a subgradient of C at beta
};

struct Segment {
  Probe left;
  Probe right;
  double slope;
};

class FbsBuilder {
 public:
  FbsBuilder(const DispatchProblem& problem, const FbsOptions& options)
      : problem_(problem), options_(options) {}

  Probe Solve(double beta) {
    if (stats_.lp_solves >= options_.max_solves) {
      throw NumericalError("breakpoint search exceeded " +
                           std::to_string(options_.max_solves) + " LP solves");
    }
    problem_.beta = beta;
    const DispatchSolution solution = SolveDispatch(problem_, options_.lp);
    ++stats_.lp_solves;
    return {beta, solution.objective, solution.capacity_dual};
  }

  void Run(const Probe& x, const Probe& y, int depth) {
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (depth > options_.max_depth) {
      throw NumericalError("breakpoint search exceeded recursion depth " +
                           std::to_string(options_.max_depth) +
                           "; check tolerances");
    }
    if (SameSlope(x.slope, y.slope)) {
      segments_.push_back({x, y, x.slope});
      return;
    }
    // c_z - C(x) = s_x (z - x)  and  c_z - C(y) = s_y (z - y).
    double z = (y.value - x.value + x.slope * x.beta - y.slope * y.beta) /
               (x.slope - y.slope);
    z = std::clamp(z, x.beta, y.beta);
    if (z - x.beta <= options_.merge_tolerance) {
      // The right tangent already passes through (x, C(x)).
      segments_.push_back({x, y, y.slope});
      return;
    }
    if (y.beta - z <= options_.merge_tolerance) {
      segments_.push_back({x, y, x.slope});
      return;
    }
    const double tangent_value = x.value + x.slope * (z - x.beta);
    const Probe mid = Solve(z);
    stats_.probes.push_back({z, tangent_value, mid.value});
    if (mid.value - tangent_value <=
        options_.value_tolerance * std::max(1.0, std::abs(mid.value))) {
      segments_.push_back({x, mid, x.slope});
      segments_.push_back({mid, y, y.slope});
      return;
    }
    Run(x, mid, depth + 1);
    Run(mid, y, depth + 1);
  }

  PiecewiseLinearCurve Assemble() const {
    std::vector<CurvePoint> points;
    std::vector<double> slopes;
    points.push_back({segments_.front().left.beta, segments_.front().left.value});
    for (const Segment& s : segments_) {
      const double width = s.right.beta - points.back().beta;
      if (width <= options_.merge_tolerance) {
        // Zero-width piece: keep the later value, drop the segment.
        points.back() = {points.back().beta, s.right.value};
        continue;
      }
      if (!slopes.empty() && SameSlope(slopes.back(), s.slope)) {
        points.back() = {s.right.beta, s.right.value};
        continue;
      }
      slopes.push_back(s.slope);
      points.push_back({s.right.beta, s.right.value});
    }
    if (slopes.empty()) {
      // Entire interval narrower than the merge tolerance.
      throw ValidationError("curve interval is degenerate");
    }
    return PiecewiseLinearCurve(std::move(points), std::move(slopes),
                                problem_.alpha, problem_.delta);
  }

  FbsStats& stats() { return stats_; }

 private:
  bool SameSlope(double a, double b) const {
    return std::abs(a - b) <= options_.slope_tolerance * (1.0 + std::abs(a));
  }

  DispatchProblem problem_;
  const FbsOptions& options_;
  std::vector<Segment> segments_;
  FbsStats stats_;
};

}  // namespace

FbsResult Fbs(const DispatchProblem& problem, double x, double y,
              const FbsOptions& options) {
  ValidateDispatchProblem(problem, /*check_beta=*/false);
  if (!(x < y) || !std::isfinite(x) || !std::isfinite(y)) {
    throw ValidationError("curve interval requires x < y");
  }
  if (x < problem.delta) {
    throw ValidationError("curve interval starts below the reserve delta");
  }
  if (y - x <= options.merge_tolerance) {
    throw ValidationError("curve interval is degenerate");
  }
  FbsBuilder builder(problem, options);
  const Probe left = builder.Solve(x);
  const Probe right = builder.Solve(y);
  builder.Run(left, right, 0);
  FbsResult result{builder.Assemble(), std::move(builder.stats())};
  return result;
}

FbsResult BuildCostCurve(const DispatchProblem& problem, double beta_max,
                         const FbsOptions& options) {
  const double start =
      std::max(MinFeasibleCapacity(problem, options.lp), problem.delta);
  if (!(beta_max > start)) {
    throw ValidationError("beta-max " + FormatReported(beta_max) +
                          " must exceed the smallest feasible capacity " +
                          FormatReported(start));
  }
  return Fbs(problem, start, beta_max, options);
}

CurveVerification VerifyCurve(const PiecewiseLinearCurve& curve,
                              const DispatchProblem& problem, int n_samples,
                              const lp::SolverOptions& options) {
  if (n_samples < 2) throw ValidationError("verification needs n_samples >= 2");
  CurveVerification report;
  DispatchProblem p = problem;
  const double lo = curve.lower();
  const double hi = curve.upper();
  for (int k = 0; k < n_samples; ++k) {
    const double beta =
        k == n_samples - 1 ? hi : lo + (hi - lo) * k / (n_samples - 1);
    p.beta = beta;
    ++report.samples;
    try {
      const double lp_value = SolveDispatch(p, options).objective;
      const double deviation = std::abs(curve.Evaluate(beta) - lp_value) /
                               std::max(1.0, std::abs(lp_value));
      if (deviation > report.max_relative_deviation) {
        report.max_relative_deviation = deviation;
        report.worst_beta = beta;
      }
    } catch (const Error& e) {
      report.failures.push_back("beta " + FormatReported(beta) + ": " +
                                e.what());
    }
  }
  return report;
}

}  // namespace storvalue
