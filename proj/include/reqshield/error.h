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

#ifndef REQSHIELD_ERROR_H_
#define REQSHIELD_ERROR_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reqshield {

enum class ErrorKind {
  // Requirement files.
  kSyntax,
  kMixedDialect,
  kVariableOutOfRange,
  kDegenerateConstraint,
  // Compilation.
  kUnsatisfiable,
  kInfeasible,
  kComplexityExceeded,
  kEngineMismatch,
  kInvalidOrdering,
  kInvalidOptions,
  // Runtime.
  kInvalidInput,
  kTraceMismatch,
  // Batch files.
  kWidthMismatch,
  kNonNumericCell,
  kEmptyFile,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

// Single exception type for every failure the library reports. Location
// fields are 1-based and zero when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = 0,
        int column = 0, int64_t index = -1);

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  // Offending variable index, row, or cell column depending on the kind.
  int64_t index() const { return index_; }

 private:
  ErrorKind kind_;
  int line_;
  int column_;
  int64_t index_;
};

// Throws kInvalidInput (index = offending position) unless `values` holds
// exactly `width` finite numbers.
void ValidatePredictions(std::span<const double> values, uint32_t width);

}  // namespace reqshield

#endif  // REQSHIELD_ERROR_H_
