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

#include "cli.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "storvalue/error.h"
#include "storvalue/fbs.h"
#include "storvalue/format.h"
#include "storvalue/piecewise_linear_curve.h"

namespace storvalue::cli {
namespace {

const char* KindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation:
      return "validation";
    case ErrorKind::kInfeasible:
      return "infeasible";
    case ErrorKind::kNumerical:
      return "numerical";
  }
  return "unknown";
}

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation:
      return kExitValidation;
    case ErrorKind::kInfeasible:
      return kExitInfeasible;
    case ErrorKind::kNumerical:
      return kExitNumerical;
  }
  return kExitNumerical;
}

// One line, `key=value` fields, message last so it may contain spaces.
void ReportError(std::ostream& err, const char* kind, int code,
                 const std::string& message) {
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  err << "error kind=" << kind << " code=" << code << " message=" << flat
      << '\n';
}

const std::string& FirstInput(const RunConfig& config) {
  if (config.inputs.empty()) throw ValidationError("--input is required");
  return config.inputs.front();
}

double Require(const std::optional<double>& value, const char* flag) {
  if (!value) throw ValidationError(std::string(flag) + " is required");
  return *value;
}

ErrorSampleSet ErrorsFor(const RunConfig& config, const ScenarioData* scenario) {
  if (!config.errors.empty()) {
    return LoadErrorSamples(config.errors, config.error_mode,
                            config.reference_capacity);
  }
  if (scenario != nullptr && scenario->renewable_actual) {
    return ExtractErrors(*scenario, config.error_mode,
                         config.reference_capacity);
  }
  throw ValidationError("--errors is required (or an input with renewable actuals)");
}

// Reserve from --delta, or from --risk through the error model. A negative
// quantile means no headroom is needed.
double ResolveDelta(const RunConfig& config, const ScenarioData& scenario) {
  if (config.delta && config.risk) {
    throw ValidationError("use either --delta or --risk, not both");
  }
  if (config.delta) return *config.delta;
  if (!config.risk) return 0.0;
  const ErrorSampleSet errors = ErrorsFor(config, &scenario);
  const double delta = config.method == ReserveMethod::kEmpirical
                           ? DeltaEmpirical(errors, *config.risk)
                           : DeltaLaplace(FitLaplace(errors), *config.risk);
  return std::max(0.0, delta);
}

DispatchProblem ProblemFor(const RunConfig& config) {
  DispatchProblem problem;
  problem.scenario = LoadScenario(FirstInput(config));
  problem.alpha = config.alpha;
  problem.rps_mode = config.rps_mode;
  problem.delta = ResolveDelta(config, problem.scenario);
  return problem;
}

PiecewiseLinearCurve CurveFor(const RunConfig& config,
                              const DispatchProblem& problem) {
  const double beta_max = Require(config.beta_max, "--beta-max");
  if (config.beta_min) return Fbs(problem, *config.beta_min, beta_max).curve;
  return BuildCostCurve(problem, beta_max).curve;
}

std::vector<double> Linspace(double lo, double hi, int points) {
  if (points < 2) throw ValidationError("--grid-points must be at least 2");
  if (!(hi > lo)) throw ValidationError("grid upper end must exceed its lower end");
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) {
    grid[k] = lo + (hi - lo) * k / (points - 1);
  }
  grid.back() = hi;
  return grid;
}

std::string RunDelta(const RunConfig& config) {
  std::optional<ScenarioData> scenario;
  if (config.errors.empty() && !config.inputs.empty()) {
    scenario = LoadScenario(config.inputs.front());
  }
  const ErrorSampleSet errors =
      ErrorsFor(config, scenario ? &*scenario : nullptr);
  const ReserveCurve curve =
      BuildReserveCurve(errors, config.method, config.q_list);
  if (config.format == OutputFormat::kJson) return ReserveCurveToJson(curve) + "\n";
  std::ostringstream out;
  WriteReserveCurveCsv(out, curve);
  return out.str();
}

std::string RunSolve(const RunConfig& config) {
  DispatchProblem problem = ProblemFor(config);
  problem.beta = Require(config.beta, "--beta");
  const DispatchSolution solution = SolveDispatch(problem);
  if (config.format == OutputFormat::kJson) {
    return DispatchSolutionToJson(solution) + "\n";
  }
  std::ostringstream out;
  WriteDispatchSolutionCsv(out, solution);
  return out.str();
}

std::string RunCurve(const RunConfig& config) {
  const PiecewiseLinearCurve curve = CurveFor(config, ProblemFor(config));
  if (config.format == OutputFormat::kJson) return CurveToJson(curve) + "\n";
  std::ostringstream out;
  WriteCurveCsv(out, curve);
  return out.str();
}

std::string RunAnalyze(const RunConfig& config, std::ostream& err) {
  if (config.inputs.empty()) throw ValidationError("--input is required");
  if (config.delta && config.risk) {
    throw ValidationError("use either --delta or --risk, not both");
  }
  std::vector<ScenarioData> scenarios;
  for (const std::string& path : config.inputs) {
    ScenarioData data = LoadScenario(path);
    if (config.split_horizon > 0) {
      for (auto& part : SplitScenario(data, config.split_horizon)) {
        scenarios.push_back(std::move(part));
      }
    } else {
      scenarios.push_back(std::move(data));
    }
  }
  if (scenarios.empty()) throw ValidationError("no complete scenario window");

  AnalysisRequest request;
  request.kind = config.kind;
  request.alpha = config.alpha;
  request.rps_mode = config.rps_mode;
  request.percentiles = config.percentiles;
  request.threads = config.threads;
  if (config.kind == ValueKind::kLocRl) {
    request.beta = Require(config.beta, "--beta");
  } else {
    // The reserve comes from the errors of the first scenario when --risk
    // is used; scenarios share one error model.
    request.delta = ResolveDelta(config, scenarios.front());
  }
  if (!config.grid.empty()) {
    request.grid = config.grid;
  } else if (config.kind == ValueKind::kLocRl) {
    request.grid = Linspace(0.0, request.beta, config.grid_points);
  } else {
    request.grid = Linspace(config.beta_min.value_or(0.0),
                            Require(config.beta_max, "--beta-max"),
                            config.grid_points);
  }

  ValueReport report = AnalyzeScenarios(scenarios, request);
  if (config.magnitude) report = Magnitude(report);
  for (const std::string& warning : report.warnings) {
    err << "warning " << warning << '\n';
  }
  if (config.format == OutputFormat::kJson) return ValueReportToJson(report) + "\n";
  std::ostringstream out;
  WriteValueReportCsv(out, report);
  return out.str();
}

std::string RunInvert(const RunConfig& config) {
  const double budget = Require(config.budget, "--budget");
  const PiecewiseLinearCurve curve = CurveFor(config, ProblemFor(config));
  const double beta = InvertCapacity(curve, budget);
  if (config.format == OutputFormat::kJson) {
    nlohmann::ordered_json j;
    j["budget"] = RoundReported(budget);
    j["beta_min_mwh"] = RoundReported(beta);
    j["cost"] = RoundReported(curve.Evaluate(beta));
    return j.dump(2) + "\n";
  }
  return FormatReported(beta) + "\n";
}

std::string RunSynth(const RunConfig& config) {
  if (config.format == OutputFormat::kJson) {
    throw ValidationError("synth writes CSV only");
  }
  const ScenarioData scenario = SynthesizeScenario(config.seed, config.horizon);
  std::ostringstream out;
  WriteScenarioCsv(out, scenario);
  return out.str();
}

void Emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError("cannot open output '" + config.out + "'");
  file << text;
  if (!file.flush()) throw ValidationError("cannot write output '" + config.out + "'");
}

}  // namespace

int Run(const RunConfig& config, std::ostream& stdout_stream,
        std::ostream& stderr_stream) {
  try {
    std::string text;
    switch (config.command) {
      case Command::kDelta:
        text = RunDelta(config);
        break;
      case Command::kSolve:
        text = RunSolve(config);
        break;
      case Command::kCurve:
        text = RunCurve(config);
        break;
      case Command::kAnalyze:
        text = RunAnalyze(config, stderr_stream);
        break;
      case Command::kInvert:
        text = RunInvert(config);
        break;
      case Command::kSynth:
        text = RunSynth(config);
        break;
    }
    Emit(config, text, stdout_stream);
    return kExitOk;
  } catch (const Error& e) {
    ReportError(stderr_stream, KindName(e.kind()), ExitCode(e.kind()), e.what());
    return ExitCode(e.kind());
  } catch (const std::exception& e) {
    ReportError(stderr_stream, "numerical", kExitNumerical, e.what());
    return kExitNumerical;
  }
}

int RunCommandLine(const std::vector<std::string>& args,
                   std::ostream& stdout_stream, std::ostream& stderr_stream) {
  RunConfig config;
  std::string rps_mode = "floor", method = "empirical", error_mode = "absolute",
              kind = "cost_saving", format = "csv";

  CLI::App app{"Storage value under a renewable portfolio standard", "storvalue"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", config.out, "Output path (default: stdout)");
  };
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--input", config.inputs, "Scenario CSV");
  };
  auto add_errors = [&](CLI::App* sub) {
    sub->add_option("--errors", config.errors, "Forecast-error CSV ('error' column)");
    sub->add_option("--error-mode", error_mode, "absolute or relative")
        ->check(CLI::IsMember({"absolute", "relative"}));
    sub->add_option("--reference-capacity", config.reference_capacity,
                    "MWh per unit of relative error");
    sub->add_option("--method", method, "empirical or laplace")
        ->check(CLI::IsMember({"empirical", "laplace"}));
  };
  auto add_model = [&](CLI::App* sub) {
    add_inputs(sub);
    add_errors(sub);
    sub->add_option("--alpha", config.alpha, "Renewable share target in [0, 1]");
    sub->add_option("--delta", config.delta, "Reserved capacity, MWh");
    sub->add_option("--risk", config.risk, "Risk level Q in percent");
    sub->add_option("--rps-mode", rps_mode, "floor or equality")
        ->check(CLI::IsMember({"floor", "equality"}));
  };
  auto add_interval = [&](CLI::App* sub) {
    sub->add_option("--beta-min", config.beta_min, "Lower capacity, MWh");
    sub->add_option("--beta-max", config.beta_max, "Upper capacity, MWh");
  };

  CLI::App* delta = app.add_subcommand("delta", "Reserve capacity per risk level");
  add_inputs(delta);
  add_errors(delta);
  delta->add_option("--q-list", config.q_list, "Risk levels in percent")
      ->delimiter(',');
  add_format(delta);

  CLI::App* solve = app.add_subcommand("solve", "Solve the dispatch problem");
  add_model(solve);
  solve->add_option("--beta", config.beta, "Storage capacity, MWh");
  add_format(solve);

  CLI::App* curve = app.add_subcommand("curve", "Build the cost-vs-capacity curve");
  add_model(curve);
  add_interval(curve);
  add_format(curve);

  CLI::App* analyze = app.add_subcommand("analyze", "Value functions and percentile bands");
  add_model(analyze);
  add_interval(analyze);
  analyze->add_option("--kind", kind, "cost_saving, loc_rps or loc_rl")
      ->check(CLI::IsMember({"cost_saving", "loc_rps", "loc_rl"}));
  analyze->add_option("--beta", config.beta, "Fixed capacity for loc_rl, MWh");
  analyze->add_option("--grid", config.grid, "Explicit grid")->delimiter(',');
  analyze->add_option("--grid-points", config.grid_points, "Evenly spaced grid size");
  analyze->add_option("--percentiles", config.percentiles, "Percentiles in (0, 100)")
      ->delimiter(',');
  analyze->add_option("--split-horizon", config.split_horizon,
                      "Cut inputs into windows of this many periods");
  analyze->add_flag("--magnitude", config.magnitude, "Report savings as positive");
  analyze->add_option("--threads", config.threads, "Worker threads (0: all cores)");
  add_format(analyze);

  CLI::App* invert = app.add_subcommand("invert", "Minimal capacity for a cost budget");
  add_model(invert);
  add_interval(invert);
  invert->add_option("--budget", config.budget, "Cost budget");
  add_format(invert);

  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic scenario");
  synth->add_option("--seed", config.seed, "Random seed");
  synth->add_option("--horizon", config.horizon, "Number of periods");
  add_format(synth);

  std::vector<std::string> owned = {"storvalue"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : owned) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    stdout_stream << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    stdout_stream << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    ReportError(stderr_stream, "validation", kExitValidation, e.what());
    return kExitValidation;
  }

  try {
    if (*delta) config.command = Command::kDelta;
    if (*solve) config.command = Command::kSolve;
    if (*curve) config.command = Command::kCurve;
    if (*analyze) config.command = Command::kAnalyze;
    if (*invert) config.command = Command::kInvert;
    if (*synth) config.command = Command::kSynth;
    config.rps_mode = ParseRpsMode(rps_mode);
    config.method = ParseReserveMethod(method);
    config.error_mode =
        error_mode == "relative" ? ErrorMode::kRelative : ErrorMode::kAbsolute;
    config.kind = ParseValueKind(kind);
    config.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  } catch (const Error& e) {
    ReportError(stderr_stream, KindName(e.kind()), ExitCode(e.kind()), e.what());
    return ExitCode(e.kind());
  }
  return Run(config, stdout_stream, stderr_stream);
}

}  // namespace storvalue::cli
