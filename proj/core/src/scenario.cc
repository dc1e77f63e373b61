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

#include "storvalue/scenario.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

#include "storvalue/error.h"
#include "storvalue/format.h"
#include "text_util.h"

namespace storvalue {
namespace {

void CheckSeries(const std::vector<double>& series, std::string_view name,
                 std::size_t horizon, bool non_negative) {
  if (series.size() != horizon) {
    throw ValidationError("inconsistent lengths: series '" + std::string(name) +
                          "' has " + std::to_string(series.size()) +
                          " entries, expected " + std::to_string(horizon));
  }
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (!std::isfinite(series[t])) {
      throw ValidationError("non-finite value in '" + std::string(name) +
                            "' at period " + std::to_string(t));
    }
    if (non_negative && series[t] < 0.0) {
      throw ValidationError("negative " + std::string(name) + " at period " +
                            std::to_string(t));
    }
  }
}

bool TimestampsIncreasing(const std::vector<std::string>& stamps) {
  std::vector<double> numeric;
  numeric.reserve(stamps.size());
  for (const auto& s : stamps) {
    auto value = internal::ParseDouble(s);
    if (!value) break;
    numeric.push_back(*value);
  }
  if (numeric.size() == stamps.size()) {
    return std::adjacent_find(numeric.begin(), numeric.end(),
                              std::greater_equal<>()) == numeric.end();
  }
  // ISO-8601 style stamps order lexicographically.
  return std::adjacent_find(stamps.begin(), stamps.end(),
                            std::greater_equal<>()) == stamps.end();
}

int FindColumn(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

double CellValue(const std::vector<std::string>& cells, int column,
                 const std::string& name, int line) {
  auto value = internal::ParseDouble(cells[column]);
  if (!value) {
    throw ValidationError("non-numeric cell '" + cells[column] + "' in column '" +
                          name + "' at line " + std::to_string(line));
  }
  return *value;
}

double Round3(double v) { return std::round(v * 1000.0) / 1000.0 + 0.0; }

double SampleLaplace(std::mt19937_64& rng, double location, double scale) {
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);
  const double u = uniform(rng);
  const double sign = u < 0 ? -1.0 : 1.0;
  return location - scale * sign * std::log1p(-2.0 * std::abs(u));
}

}  // namespace

void ValidateScenario(const ScenarioData& scenario) {
  const std::size_t horizon = scenario.price.size();
  if (horizon == 0) throw ValidationError("scenario has no periods");
  CheckSeries(scenario.price, "price", horizon, /*non_negative=*/false);
  CheckSeries(scenario.demand_forecast, "demand_forecast", horizon, true);
  CheckSeries(scenario.renewable_forecast, "renewable_forecast", horizon, true);
  if (scenario.demand_actual) {
    CheckSeries(*scenario.demand_actual, "demand_actual", horizon, true);
  }
  if (scenario.renewable_actual) {
    CheckSeries(*scenario.renewable_actual, "renewable_actual", horizon, true);
  }
  if (!scenario.timestamps.empty()) {
    if (scenario.timestamps.size() != horizon) {
      throw ValidationError("inconsistent lengths: timestamps");
    }
    if (!TimestampsIncreasing(scenario.timestamps)) {
      throw ValidationError("timestamps are not strictly increasing");
    }
  }
}

ScenarioData ReadScenarioCsv(std::istream& in, const ColumnMap& columns) {
  std::string line;
  if (!internal::NextNonEmptyLine(in, line)) {
    throw ValidationError("empty scenario file");
  }
  const std::vector<std::string> header = internal::SplitCsvLine(line);

  const int c_time = FindColumn(header, columns.timestamp);
  const int c_price = FindColumn(header, columns.price);
  const int c_demand = FindColumn(header, columns.demand_forecast);
  const int c_renew = FindColumn(header, columns.renewable_forecast);
  const int c_demand_actual = FindColumn(header, columns.demand_actual);
  const int c_renew_actual = FindColumn(header, columns.renewable_actual);
  for (auto [index, name] : {std::pair{c_price, &columns.price},
                             std::pair{c_demand, &columns.demand_forecast},
                             std::pair{c_renew, &columns.renewable_forecast}}) {
    if (index < 0) throw ValidationError("missing column '" + *name + "'");
  }

  ScenarioData scenario;
  if (c_demand_actual >= 0) scenario.demand_actual.emplace();
  if (c_renew_actual >= 0) scenario.renewable_actual.emplace();

  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (internal::Trim(line).empty()) continue;
    const std::vector<std::string> cells = internal::SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw ValidationError("inconsistent lengths: line " +
                            std::to_string(line_number) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(header.size()));
    }
    if (c_time >= 0) scenario.timestamps.push_back(cells[c_time]);
    scenario.price.push_back(CellValue(cells, c_price, columns.price, line_number));
    scenario.demand_forecast.push_back(
        CellValue(cells, c_demand, columns.demand_forecast, line_number));
    scenario.renewable_forecast.push_back(
        CellValue(cells, c_renew, columns.renewable_forecast, line_number));
    if (c_demand_actual >= 0) {
      scenario.demand_actual->push_back(
          CellValue(cells, c_demand_actual, columns.demand_actual, line_number));
    }
    if (c_renew_actual >= 0) {
      scenario.renewable_actual->push_back(CellValue(
          cells, c_renew_actual, columns.renewable_actual, line_number));
    }
  }
  ValidateScenario(scenario);
  return scenario;
}

ScenarioData LoadScenario(const std::string& path, const ColumnMap& columns) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  return ReadScenarioCsv(in, columns);
}

void WriteScenarioCsv(std::ostream& out, const ScenarioData& scenario,
                      const ColumnMap& columns) {
  ValidateScenario(scenario);
  const bool has_time = !scenario.timestamps.empty();
  if (has_time) out << columns.timestamp << ',';
  out << columns.price << ',' << columns.demand_forecast << ','
      << columns.renewable_forecast;
  if (scenario.demand_actual) out << ',' << columns.demand_actual;
  if (scenario.renewable_actual) out << ',' << columns.renewable_actual;
  out << '\n';
  for (int t = 0; t < scenario.horizon(); ++t) {
    if (has_time) out << scenario.timestamps[t] << ',';
    out << FormatExact(scenario.price[t]) << ','
        << FormatExact(scenario.demand_forecast[t]) << ','
        << FormatExact(scenario.renewable_forecast[t]);
    if (scenario.demand_actual) {
      out << ',' << FormatExact((*scenario.demand_actual)[t]);
    }
    if (scenario.renewable_actual) {
      out << ',' << FormatExact((*scenario.renewable_actual)[t]);
    }
    out << '\n';
  }
}

void SaveScenario(const std::string& path, const ScenarioData& scenario,
                  const ColumnMap& columns) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write scenario file '" + path + "'");
  WriteScenarioCsv(out, scenario, columns);
}

std::vector<ScenarioData> SplitScenario(const ScenarioData& scenario,
                                        int horizon) {
  if (horizon <= 0) throw ValidationError("split horizon must be positive");
  std::vector<ScenarioData> parts;
  auto slice = [](const std::vector<double>& v, int begin, int end) {
    return std::vector<double>(v.begin() + begin, v.begin() + end);
  };
  for (int begin = 0; begin + horizon <= scenario.horizon(); begin += horizon) {
    const int end = begin + horizon;
    ScenarioData part;
    if (!scenario.timestamps.empty()) {
      part.timestamps.assign(scenario.timestamps.begin() + begin,
                             scenario.timestamps.begin() + end);
    }
    part.price = slice(scenario.price, begin, end);
    part.demand_forecast = slice(scenario.demand_forecast, begin, end);
    part.renewable_forecast = slice(scenario.renewable_forecast, begin, end);
    if (scenario.demand_actual) {
      part.demand_actual = slice(*scenario.demand_actual, begin, end);
    }
    if (scenario.renewable_actual) {
      part.renewable_actual = slice(*scenario.renewable_actual, begin, end);
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

ErrorSampleSet ExtractErrors(const ScenarioData& scenario, ErrorMode mode,
                             double reference_capacity) {
  if (!scenario.renewable_actual) {
    throw ValidationError("renewable actuals absent; cannot extract errors");
  }
  if (mode == ErrorMode::kRelative &&
      !(reference_capacity > 0.0 && std::isfinite(reference_capacity))) {
    throw ValidationError("reference capacity must be positive in relative mode");
  }
  ErrorSampleSet errors;
  errors.mode = mode;
  errors.reference_capacity =
      mode == ErrorMode::kRelative ? reference_capacity : 1.0;
  const auto& actual = *scenario.renewable_actual;
  errors.samples.reserve(actual.size());
  for (std::size_t t = 0; t < actual.size(); ++t) {
    double e = scenario.renewable_forecast[t] - actual[t];
    if (mode == ErrorMode::kRelative) e /= reference_capacity;
    errors.samples.push_back(e);
  }
  return errors;
}

ErrorSampleSet LoadErrorSamples(const std::string& path, ErrorMode mode,
                                double reference_capacity) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open error file '" + path + "'");
  std::string line;
  if (!internal::NextNonEmptyLine(in, line)) {
    throw ValidationError("empty error file");
  }
  const auto header = internal::SplitCsvLine(line);
  const int column = FindColumn(header, "error");
  if (column < 0) throw ValidationError("missing column 'error'");
  if (mode == ErrorMode::kRelative && !(reference_capacity > 0.0)) {
    throw ValidationError("reference capacity must be positive in relative mode");
  }

  ErrorSampleSet errors;
  errors.mode = mode;
  errors.reference_capacity =
      mode == ErrorMode::kRelative ? reference_capacity : 1.0;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (internal::Trim(line).empty()) continue;
    const auto cells = internal::SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw ValidationError("inconsistent lengths at line " +
                            std::to_string(line_number));
    }
    const double e = CellValue(cells, column, "error", line_number);
    if (!std::isfinite(e)) {
      throw ValidationError("non-finite error sample at line " +
                            std::to_string(line_number));
    }
    errors.samples.push_back(e);
  }
  if (errors.samples.empty()) throw ValidationError("empty sample set");
  return errors;
}

ScenarioData SynthesizeScenario(std::uint64_t seed, int horizon,
                                const GeneratorConfig& config) {
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  if (config.price_min > config.price_max) {
    throw ValidationError("price_min exceeds price_max");
  }
  if (config.negative_price_probability < 0.0 ||
      config.negative_price_probability > 1.0) {
    throw ValidationError("negative_price_probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const int per_day = std::max(1, config.periods_per_day);
  const double two_pi = 2.0 * std::numbers::pi;

  ScenarioData s;
  s.timestamps.reserve(horizon);
  s.price.reserve(horizon);
  s.demand_forecast.reserve(horizon);
  s.renewable_forecast.reserve(horizon);
  if (config.with_actuals) {
    s.demand_actual.emplace();
    s.renewable_actual.emplace();
  }

  double capacity_factor = std::clamp(config.renewable_mean, 0.0, 1.0);
  for (int t = 0; t < horizon; ++t) {
    const double phase = two_pi * static_cast<double>(t % per_day) / per_day;
    // Demand peaks in the early evening, troughs before dawn.
    const double shape = -std::cos(phase - two_pi * 3.0 / 24.0);
    double demand = config.demand_base + config.demand_amplitude * shape +
                    config.demand_noise * normal(rng);
    demand = Round3(std::max(0.0, demand));

    capacity_factor = config.renewable_mean +
                      config.renewable_persistence *
                          (capacity_factor - config.renewable_mean) +
                      config.renewable_volatility * normal(rng);
    capacity_factor = std::clamp(capacity_factor, 0.0, 1.0);
    const double forecast = Round3(config.renewable_capacity * capacity_factor);

    double price = config.price_base + config.price_amplitude * shape +
                   config.price_noise * normal(rng);
    price = std::clamp(price, config.price_min, config.price_max);
    if (config.negative_price_probability > 0.0 &&
        uniform(rng) < config.negative_price_probability) {
      const double low = std::min(config.price_min, -1.0);
      price = low + (0.0 - low) * uniform(rng);
    }
    price = Round3(price);

    s.timestamps.push_back(std::to_string(t));
    s.price.push_back(price);
    s.demand_forecast.push_back(demand);
    s.renewable_forecast.push_back(forecast);
    if (config.with_actuals) {
      const double error =
          SampleLaplace(rng, 0.0, config.forecast_error_scale);
      s.demand_actual->push_back(demand);
      s.renewable_actual->push_back(Round3(
          std::clamp(forecast - error, 0.0, config.renewable_capacity)));
    }
  }
  return s;
}

}  // namespace storvalue
