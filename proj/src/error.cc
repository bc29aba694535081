// Copyright 2026 The reqshield Authors.
//
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

#include "reqshield/error.h"

#include <cmath>

namespace reqshield {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax:
      return "syntax error";
    case ErrorKind::kMixedDialect:
      return "mixed dialect";
    case ErrorKind::kVariableOutOfRange:
      return "variable out of range";
    case ErrorKind::kDegenerateConstraint:
      return "degenerate constraint";
    case ErrorKind::kUnsatisfiable:
      return "unsatisfiable";
    case ErrorKind::kInfeasible:
      return "infeasible";
    case ErrorKind::kComplexityExceeded:
      return "complexity exceeded";
    case ErrorKind::kEngineMismatch:
      return "engine mismatch";
    case ErrorKind::kInvalidOrdering:
      return "invalid ordering";
    case ErrorKind::kInvalidOptions:
      return "invalid options";
    case ErrorKind::kInvalidInput:
      return "invalid input";
    case ErrorKind::kTraceMismatch:
      return "trace mismatch";
    case ErrorKind::kWidthMismatch:
      return "width mismatch";
    case ErrorKind::kNonNumericCell:
      return "non-numeric cell";
    case ErrorKind::kEmptyFile:
      return "empty file";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& message, int line, int column,
             int64_t index)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      index_(index) {}

void ValidatePredictions(std::span<const double> values, uint32_t width) {
  if (values.size() != width) {
    throw Error(ErrorKind::kInvalidInput, "expected " + std::to_string(width) +
                                              " values, got " +
                                              std::to_string(values.size()));
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::kInvalidInput,
                  "value " + std::to_string(i) + " is not finite", 0, 0,
                  static_cast<int64_t>(i));
    }
  }
}

}  // namespace reqshield
