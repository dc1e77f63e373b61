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

#ifndef STORVALUE_PIECEWISE_LINEAR_CURVE_H_
#define STORVALUE_PIECEWISE_LINEAR_CURVE_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace storvalue {

struct CurvePoint {
  double beta;   // storage capacity, MWh
  double value;  // minimal cost at that capacity
};

// Minimal cost as a function of storage capacity over a closed interval
// [lower(), upper()]. Breakpoints are strictly increasing in beta; slopes
// has one entry per segment.
class PiecewiseLinearCurve {
 public:
  PiecewiseLinearCurve() = default;
  // Throws ValidationError if beta is not strictly increasing, fewer than
  // two breakpoints are given, or the slope count does not match.
  PiecewiseLinearCurve(std::vector<CurvePoint> breakpoints,
                       std::vector<double> slopes, double alpha = 0.0,
                       double delta = 0.0);

  // Linear interpolation between the enclosing breakpoints; exact at
  // breakpoints. Throws ValidationError ("outside interval") beyond the
  // covered range.
  double Evaluate(double beta) const;

  bool Covers(double beta) const;
  double lower() const { return breakpoints_.front().beta; }
  double upper() const { return breakpoints_.back().beta; }
  double min_value() const;

  const std::vector<CurvePoint>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double alpha() const { return alpha_; }
  double delta() const { return delta_; }
  bool empty() const { return breakpoints_.empty(); }

 private:
  std::vector<CurvePoint> breakpoints_;
  std::vector<double> slopes_;
  double alpha_ = 0.0;
  double delta_ = 0.0;
};

// CSV rows (beta_mwh, cost), one per breakpoint.
void WriteCurveCsv(std::ostream& out, const PiecewiseLinearCurve& curve);
// JSON with breakpoints, slopes, alpha, delta and the covered interval.
std::string CurveToJson(const PiecewiseLinearCurve& curve);

}  // namespace storvalue

#endif  // STORVALUE_PIECEWISE_LINEAR_CURVE_H_
