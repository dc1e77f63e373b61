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

#ifndef STORVALUE_SCENARIO_H_
#define STORVALUE_SCENARIO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace storvalue {

// Hourly (or any fixed-resolution) market scenario. All series share the
// horizon length. Energies are in MWh per period, prices in currency/MWh.
struct ScenarioData {
  std::vector<std::string> timestamps;  // empty when the source had none
  std::vector<double> price;
  std::vector<double> demand_forecast;
  std::vector<double> renewable_forecast;
  std::optional<std::vector<double>> demand_actual;
  std::optional<std::vector<double>> renewable_actual;

  int horizon() const { return static_cast<int>(price.size()); }
};

// Throws ValidationError if any invariant is violated: equal lengths,
// finite values, non-negative energies, strictly increasing timestamps.
void ValidateScenario(const ScenarioData& scenario);

// Header names used to locate each series in a CSV file.
struct ColumnMap {
  std::string timestamp = "timestamp";
  std::string price = "price";
  std::string demand_forecast = "demand_forecast";
  std::string renewable_forecast = "renewable_forecast";
  std::string demand_actual = "demand_actual";
  std::string renewable_actual = "renewable_actual";
};

ScenarioData LoadScenario(const std::string& path, const ColumnMap& columns = {});
ScenarioData ReadScenarioCsv(std::istream& in, const ColumnMap& columns = {});

// Emits the same schema LoadScenario accepts. Numbers use the shortest
// representation that parses back to the identical double.
void WriteScenarioCsv(std::ostream& out, const ScenarioData& scenario,
                      const ColumnMap& columns = {});
void SaveScenario(const std::string& path, const ScenarioData& scenario,
                  const ColumnMap& columns = {});

// Cuts a long scenario into consecutive windows of `horizon` periods.
// A trailing partial window is dropped.
std::vector<ScenarioData> SplitScenario(const ScenarioData& scenario,
                                        int horizon);

enum class ErrorMode { kAbsolute, kRelative };

// Renewable forecast errors e = forecast - actual.
struct ErrorSampleSet {
  std::vector<double> samples;
  ErrorMode mode = ErrorMode::kAbsolute;
  double reference_capacity = 1.0;  // MWh; only meaningful in relative mode

  // Factor converting a sample-space quantity back to MWh.
  double unit_scale() const {
    return mode == ErrorMode::kRelative ? reference_capacity : 1.0;
  }
};

// Requires renewable actuals. In relative mode each error is divided by
// `reference_capacity`, which must be positive.
ErrorSampleSet ExtractErrors(const ScenarioData& scenario, ErrorMode mode,
                             double reference_capacity = 1.0);

// Error samples from a CSV with a single `error` column (plus optional
// extra columns, which are ignored).
ErrorSampleSet LoadErrorSamples(const std::string& path,
                                ErrorMode mode = ErrorMode::kAbsolute,
                                double reference_capacity = 1.0);

struct GeneratorConfig {
  double demand_base = 60.0;        // MWh
  double demand_amplitude = 25.0;   // MWh, daily swing
  double demand_noise = 4.0;        // MWh, std-dev
  double renewable_capacity = 100.0;  // MWh per period at full output
  double renewable_mean = 0.4;      // mean capacity factor
  double renewable_persistence = 0.85;  // AR(1) coefficient
  double renewable_volatility = 0.12;   // AR(1) innovation std-dev
  double price_base = 30.0;
  double price_amplitude = 15.0;    // daily swing
  double price_noise = 5.0;
  double price_min = -10.0;
  double price_max = 60.0;
  double negative_price_probability = 0.0;
  double forecast_error_scale = 4.0;  // Laplace scale b of forecast errors
  bool with_actuals = true;
  int periods_per_day = 24;
};

// Deterministic for a fixed (seed, horizon, config). Values are rounded to
// 1e-3 so emitted CSV files stay readable.
ScenarioData SynthesizeScenario(std::uint64_t seed, int horizon,
                                const GeneratorConfig& config = {});

}  // namespace storvalue

#endif  // STORVALUE_SCENARIO_H_
