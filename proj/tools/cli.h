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

#ifndef STORVALUE_TOOLS_CLI_H_
#define STORVALUE_TOOLS_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "storvalue/analysis.h"
#include "storvalue/dispatch.h"
#include "storvalue/reserve.h"
#include "storvalue/scenario.h"

namespace storvalue::cli {

enum class Command { kDelta, kSolve, kCurve, kAnalyze, kInvert, kSynth };
enum class OutputFormat { kCsv, kJson };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitNumerical = 4;

struct RunConfig {
  Command command = Command::kSolve;

  // Inputs. `analyze` accepts several scenario files; the rest use the first.
  std::vector<std::string> inputs;
  std::string errors;  // CSV with an `error` column
  ErrorMode error_mode = ErrorMode::kAbsolute;
  double reference_capacity = 1.0;

  double alpha = 0.0;
  std::optional<double> beta;
  std::optional<double> delta;
  std::optional<double> risk;  // Q in percent; needs `errors`
  ReserveMethod method = ReserveMethod::kEmpirical;
  RpsMode rps_mode = RpsMode::kFloor;

  std::optional<double> beta_min;
  std::optional<double> beta_max;
  std::vector<double> q_list = {70, 80, 90, 96, 99};

  ValueKind kind = ValueKind::kCostSaving;
  std::vector<double> grid;
  int grid_points = 21;
  std::vector<double> percentiles;
  int split_horizon = 0;  // 0 keeps each input file as one scenario
  bool magnitude = false;
  int threads = 0;

  std::optional<double> budget;

  std::uint64_t seed = 0;
  int horizon = 24;

  OutputFormat format = OutputFormat::kCsv;
  std::string out;  // empty writes to `stdout`
};

// Executes one command. Artifacts go to `config.out` or `stdout`; errors are
// reported on `stderr` as a single line and mapped to the exit codes above.
int Run(const RunConfig& config, std::ostream& stdout_stream,
        std::ostream& stderr_stream);

// Parses flags into a RunConfig and runs it.
int RunCommandLine(const std::vector<std::string>& args,
                   std::ostream& stdout_stream, std::ostream& stderr_stream);

}  // namespace storvalue::cli

#endif  // STORVALUE_TOOLS_CLI_H_
