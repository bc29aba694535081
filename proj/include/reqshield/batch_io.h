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

// Prediction batches as CSV: comma-separated numeric rows, optionally preceded
// by one header row. A first row with any non-numeric cell is the header.
// Written files always carry a header (y_0,...,y_{n-1} when the batch has no
// names) and every value with 17 significant digits, so a write/read round
// trip reproduces the batch bit for bit.

#ifndef REQSHIELD_BATCH_IO_H_
#define REQSHIELD_BATCH_IO_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reqshield {

struct PredictionBatch {
  std::vector<std::string> column_names;
  size_t width = 0;
  std::vector<double> values;  // row-major

  size_t num_rows() const { return width == 0 ? 0 : values.size() / width; }
  std::span<const double> row(size_t r) const {
    return std::span<const double>(values).subspan(r * width, width);
  }

  friend bool operator==(const PredictionBatch&,
                         const PredictionBatch&) = default;
};

// Errors: kEmptyFile, kWidthMismatch(line), kNonNumericCell(line, column),
// kInvalidInput for non-finite cells. Line and column numbers are 1-based
// positions in the file.
PredictionBatch ParseBatch(std::string_view text,
                           std::optional<size_t> expected_width = std::nullopt);
PredictionBatch ReadBatch(const std::filesystem::path& path,
                          std::optional<size_t> expected_width = std::nullopt);

std::string RenderBatch(const PredictionBatch& batch);
// Throws kIo when the file cannot be written.
void WriteBatch(const PredictionBatch& batch,
                const std::filesystem::path& path);

// "y_0", ..., "y_{width-1}".
std::vector<std::string> DefaultColumnNames(size_t width);

void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace reqshield

#endif  // REQSHIELD_BATCH_IO_H_
