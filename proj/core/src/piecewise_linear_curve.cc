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

#include "storvalue/piecewise_linear_curve.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "storvalue/error.h"
#include "storvalue/format.h"

namespace storvalue {
namespace {

// Evaluations this close to an end of the interval are snapped onto it.
double EdgeSlack(double beta) { return 1e-9 * std::max(1.0, std::abs(beta)); }

}  // namespace

PiecewiseLinearCurve::PiecewiseLinearCurve(std::vector<CurvePoint> breakpoints,
                                           std::vector<double> slopes,
                                           double alpha, double delta)
    : breakpoints_(std::move(breakpoints)),
      slopes_(std::move(slopes)),
      alpha_(alpha),
      delta_(delta) {
  if (breakpoints_.size() < 2) {
    throw ValidationError("a curve needs at least two breakpoints");
  }
  if (slopes_.size() + 1 != breakpoints_.size()) {
    throw ValidationError("slope count must be one less than breakpoint count");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i].beta) ||
        !std::isfinite(breakpoints_[i].value)) {
      throw ValidationError("non-finite curve breakpoint");
    }
    if (i > 0 && !(breakpoints_[i].beta > breakpoints_[i - 1].beta)) {
      throw ValidationError("curve breakpoints must be strictly increasing");
    }
  }
}

bool PiecewiseLinearCurve::Covers(double beta) const {
  return !breakpoints_.empty() && beta >= lower() - EdgeSlack(lower()) &&
         beta <= upper() + EdgeSlack(upper());
}

double PiecewiseLinearCurve::Evaluate(double beta) const {
  if (!Covers(beta)) {
    throw ValidationError("beta " + FormatReported(beta) +
                          " outside interval [" + FormatReported(lower()) +
                          ", " + FormatReported(upper()) + "]");
  }
  beta = std::clamp(beta, lower(), upper());
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), beta,
      [](double b, const CurvePoint& p) { return b < p.beta; });
  if (it == breakpoints_.end()) return breakpoints_.back().value;
  const CurvePoint& right = *it;
  const CurvePoint& left = *(it - 1);
  if (beta == left.beta) return left.value;
  const double w = (beta - left.beta) / (right.beta - left.beta);
  return left.value + w * (right.value - left.value);
}

double PiecewiseLinearCurve::min_value() const {
  double best = breakpoints_.front().value;
  for (const auto& p : breakpoints_) best = std::min(best, p.value);
  return best;
}

void WriteCurveCsv(std::ostream& out, const PiecewiseLinearCurve& curve) {
  out << "beta_mwh,cost\n";
  for (const auto& p : curve.breakpoints()) {
    out << FormatReported(p.beta) << ',' << FormatReported(p.value) << '\n';
  }
}

std::string CurveToJson(const PiecewiseLinearCurve& curve) {
  nlohmann::ordered_json j;
  j["alpha"] = RoundReported(curve.alpha());
  j["delta"] = RoundReported(curve.delta());
  j["interval"] = {RoundReported(curve.lower()), RoundReported(curve.upper())};
  auto& points = j["breakpoints"] = nlohmann::ordered_json::array();
  for (const auto& p : curve.breakpoints()) {
    points.push_back({{"beta_mwh", RoundReported(p.beta)},
                      {"cost", RoundReported(p.value)}});
  }
  auto& slopes = j["slopes"] = nlohmann::ordered_json::array();
  for (double s : curve.slopes()) slopes.push_back(RoundReported(s));
  return j.dump(2);
}

}  // namespace storvalue
