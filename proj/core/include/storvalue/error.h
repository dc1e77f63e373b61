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

#ifndef STORVALUE_ERROR_H_
#define STORVALUE_ERROR_H_

#include <stdexcept>
#include <string>

namespace storvalue {

// Broad failure classes. The CLI maps them onto exit codes 2, 3 and 4.
enum class ErrorKind {
  kValidation,
  kInfeasible,
  kNumerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::kValidation, message) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& message)
      : Error(ErrorKind::kInfeasible, message) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error(ErrorKind::kNumerical, message) {}
};

}  // namespace storvalue

#endif  // STORVALUE_ERROR_H_
