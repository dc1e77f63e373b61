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

#ifndef STORVALUE_FORMAT_H_
#define STORVALUE_FORMAT_H_

#include <charconv>
#include <cstdio>
#include <string>

namespace storvalue {

// Reported quantities (costs, duals, deltas, curve points) are printed with
// 9 significant digits.
inline std::string FormatReported(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

// Same value after a round trip through FormatReported.
inline double RoundReported(double value) {
  return std::stod(FormatReported(value));
}

// Shortest representation that parses back to the identical double.
inline std::string FormatExact(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace storvalue

#endif  // STORVALUE_FORMAT_H_
