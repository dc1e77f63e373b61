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

#ifndef STORVALUE_RESERVE_H_
#define STORVALUE_RESERVE_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "storvalue/scenario.h"

namespace storvalue {

// Fitted forecast-error law. `location` and `scale` are in the units of the
// samples they were fitted on; `unit_scale` converts quantiles to MWh.
struct LaplaceParams {
  double location = 0.0;
  double scale = 1.0;
  double unit_scale = 1.0;
};

enum class ReserveMethod { kEmpirical, kLaplace };

struct ReserveEvaluation {
  double risk_percent;  // Q in (0, 100)
  double delta_mwh;
};

struct ReserveCurve {
  ReserveMethod method = ReserveMethod::kEmpirical;
  std::vector<ReserveEvaluation> evaluations;  // ascending in Q
};

// Smallest reserve covering the forecast error with probability Q%:
// the smallest sample value whose empirical coverage reaches Q/100.
// The result may be negative; callers decide whether to clamp.
double DeltaEmpirical(const ErrorSampleSet& errors, double risk_percent);

// Maximum-likelihood Laplace fit: location is the sample median, scale the
// mean absolute deviation from it. Needs at least two samples and a
// non-zero spread.
LaplaceParams FitLaplace(const ErrorSampleSet& errors);

// Closed-form Laplace quantile at Q/100, in MWh. Q must lie in (0, 100).
double DeltaLaplace(const LaplaceParams& params, double risk_percent);

ReserveCurve BuildReserveCurve(const ErrorSampleSet& errors,
                               ReserveMethod method,
                               std::span<const double> risk_percents);

// CSV columns: Q_percent, delta_mwh, method.
void WriteReserveCurveCsv(std::ostream& out, const ReserveCurve& curve);
std::string ReserveCurveToJson(const ReserveCurve& curve);

std::string ToString(ReserveMethod method);
ReserveMethod ParseReserveMethod(const std::string& text);

}  // namespace storvalue

#endif  // STORVALUE_RESERVE_H_
