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

#include "storvalue/reserve.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "storvalue/error.h"
#include "storvalue/format.h"
#include "storvalue/order_statistics.h"

namespace storvalue {
namespace {

void CheckSamples(const ErrorSampleSet& errors) {
  if (errors.samples.empty()) throw ValidationError("empty sample set");
  for (double e : errors.samples) {
    if (!std::isfinite(e)) throw ValidationError("non-finite error sample");
  }
  if (errors.mode == ErrorMode::kRelative && !(errors.reference_capacity > 0.0)) {
    throw ValidationError("reference capacity must be positive in relative mode");
  }
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double DeltaEmpirical(const ErrorSampleSet& errors, double risk_percent) {
  CheckSamples(errors);
  if (!(risk_percent > 0.0 && risk_percent <= 100.0)) {
    throw ValidationError("risk requirement Q must lie in (0, 100]");
  }
  std::vector<double> sorted = errors.samples;
  std::sort(sorted.begin(), sorted.end());
  return LowerOrderStatistic(sorted, risk_percent) * errors.unit_scale();
}

LaplaceParams FitLaplace(const ErrorSampleSet& errors) {
  CheckSamples(errors);
  if (errors.samples.size() < 2) {
    throw ValidationError("Laplace fit needs at least 2 samples");
  }
  LaplaceParams params;
  params.location = Median(errors.samples);
  double total = 0.0;
  for (double e : errors.samples) total += std::abs(e - params.location);
  params.scale = total / static_cast<double>(errors.samples.size());
  if (!(params.scale > 0.0)) throw ValidationError("degenerate scale");
  params.unit_scale = errors.unit_scale();
  return params;
}

double DeltaLaplace(const LaplaceParams& params, double risk_percent) {
  if (!(params.scale > 0.0)) throw ValidationError("degenerate scale");
  if (!(risk_percent > 0.0 && risk_percent < 100.0)) {
    throw ValidationError(
        "risk requirement Q must lie strictly inside (0, 100) for the "
        "Laplace quantile");
  }
  const double q = risk_percent / 100.0;
  const double quantile =
      q < 0.5 ? params.location + params.scale * std::log(2.0 * q)
              : params.location - params.scale * std::log(2.0 * (1.0 - q));
  return quantile * params.unit_scale;
}

ReserveCurve BuildReserveCurve(const ErrorSampleSet& errors,
                               ReserveMethod method,
                               std::span<const double> risk_percents) {
  if (risk_percents.empty()) throw ValidationError("empty Q list");
  std::vector<double> qs(risk_percents.begin(), risk_percents.end());
  std::sort(qs.begin(), qs.end());

  ReserveCurve curve;
  curve.method = method;
  if (method == ReserveMethod::kLaplace) {
    const LaplaceParams params = FitLaplace(errors);
    for (double q : qs) curve.evaluations.push_back({q, DeltaLaplace(params, q)});
  } else {
    CheckSamples(errors);
    std::vector<double> sorted = errors.samples;
    std::sort(sorted.begin(), sorted.end());
    for (double q : qs) {
      if (!(q > 0.0 && q <= 100.0)) {
        throw ValidationError("risk requirement Q must lie in (0, 100]");
      }
      curve.evaluations.push_back(
          {q, LowerOrderStatistic(sorted, q) * errors.unit_scale()});
    }
  }
  return curve;
}

std::string ToString(ReserveMethod method) {
  return method == ReserveMethod::kLaplace ? "laplace" : "empirical";
}

ReserveMethod ParseReserveMethod(const std::string& text) {
  if (text == "empirical") return ReserveMethod::kEmpirical;
  if (text == "laplace") return ReserveMethod::kLaplace;
  throw ValidationError("unknown reserve method '" + text + "'");
}

void WriteReserveCurveCsv(std::ostream& out, const ReserveCurve& curve) {
  out << "Q_percent,delta_mwh,method\n";
  const std::string method = ToString(curve.method);
  for (const auto& e : curve.evaluations) {
    out << FormatReported(e.risk_percent) << ',' << FormatReported(e.delta_mwh)
        << ',' << method << '\n';
  }
}

std::string ReserveCurveToJson(const ReserveCurve& curve) {
  nlohmann::ordered_json j;
  j["method"] = ToString(curve.method);
  auto& rows = j["evaluations"] = nlohmann::ordered_json::array();
  for (const auto& e : curve.evaluations) {
    rows.push_back({{"Q_percent", RoundReported(e.risk_percent)},
                    {"delta_mwh", RoundReported(e.delta_mwh)}});
  }
  return j.dump(2);
}

}  // namespace storvalue
