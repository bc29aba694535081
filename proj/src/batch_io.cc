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

#include "reqshield/batch_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "reqshield/error.h"

namespace reqshield {
namespace {

std::string_view Trim(std::string_view s) {
  const size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    cells.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

enum class CellKind { kNumber, kOutOfRange, kEmpty, kText };

struct Cell {
  CellKind kind = CellKind::kText;
  double value = 0.0;
};

Cell ParseCell(std::string_view cell) {
  if (cell.empty()) return {CellKind::kEmpty};
  if (cell.front() == '+') cell.remove_prefix(1);
  Cell out;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), out.value);
  if (ptr != cell.data() + cell.size() || cell.empty())
    return {CellKind::kText};
  if (ec == std::errc::result_out_of_range) return {CellKind::kOutOfRange};
  if (ec != std::errc()) return {CellKind::kText};
  out.kind = CellKind::kNumber;
  return out;
}

}  // namespace

std::vector<std::string> DefaultColumnNames(size_t width) {
  std::vector<std::string> names;
  names.reserve(width);
  for (size_t i = 0; i < width; ++i) names.push_back("y_" + std::to_string(i));
  return names;
}

PredictionBatch ParseBatch(std::string_view text,
                           std::optional<size_t> expected_width) {
  PredictionBatch batch;
  bool seen_first = false;
  int line_number = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_number;
    if (line.empty()) continue;

    const std::vector<std::string_view> cells = SplitCells(line);
    if (!seen_first) {
      seen_first = true;
      batch.width = cells.size();
      if (expected_width && *expected_width != batch.width) {
        throw Error(ErrorKind::kWidthMismatch,
                    "line " + std::to_string(line_number) + " has " +
                        std::to_string(batch.width) + " columns, expected " +
                        std::to_string(*expected_width),
                    line_number, 0, line_number);
      }
      bool header = false;
      for (const std::string_view cell : cells) {
        header = header || ParseCell(cell).kind == CellKind::kText;
      }
      if (header) {
        for (const std::string_view cell : cells) {
          batch.column_names.emplace_back(cell);
        }
        continue;
      }
    }
    if (cells.size() != batch.width) {
      throw Error(ErrorKind::kWidthMismatch,
                  "line " + std::to_string(line_number) + " has " +
                      std::to_string(cells.size()) + " columns, expected " +
                      std::to_string(batch.width),
                  line_number, 0, line_number);
    }
    for (size_t c = 0; c < cells.size(); ++c) {
      const Cell cell = ParseCell(cells[c]);
      const int column = static_cast<int>(c) + 1;
      if (cell.kind == CellKind::kEmpty || cell.kind == CellKind::kText) {
        throw Error(ErrorKind::kNonNumericCell,
                    "line " + std::to_string(line_number) + ", column " +
                        std::to_string(column) + ": '" + std::string(cells[c]) +
                        "' is not a number",
                    line_number, column, line_number);
      }
      if (cell.kind == CellKind::kOutOfRange || !std::isfinite(cell.value)) {
        throw Error(ErrorKind::kInvalidInput,
                    "line " + std::to_string(line_number) + ", column " +
                        std::to_string(column) + ": value is not finite",
                    line_number, column, line_number);
      }
      batch.values.push_back(cell.value);
    }
  }
  if (!seen_first) throw Error(ErrorKind::kEmptyFile, "no rows or header");
  return batch;
}

PredictionBatch ReadBatch(const std::filesystem::path& path,
                          std::optional<size_t> expected_width) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseBatch(text.str(), expected_width);
}

std::string RenderBatch(const PredictionBatch& batch) {
  const std::vector<std::string> names =
      batch.column_names.size() == batch.width
          ? batch.column_names
          : DefaultColumnNames(batch.width);
  std::string out;
  for (size_t c = 0; c < names.size(); ++c) {
    if (c > 0) out += ',';
    out += names[c];
  }
  out += '\n';
  char buffer[40];
  for (size_t r = 0; r < batch.num_rows(); ++r) {
    for (size_t c = 0; c < batch.width; ++c) {
      if (c > 0) out += ',';
      std::snprintf(buffer, sizeof(buffer), "%.17g",
                    batch.values[r * batch.width + c]);
      out += buffer;
    }
    out += '\n';
  }
  return out;
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

void WriteBatch(const PredictionBatch& batch,
                const std::filesystem::path& path) {
  WriteTextFile(path, RenderBatch(batch));
}

}  // namespace reqshield
