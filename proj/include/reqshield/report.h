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

#ifndef REQSHIELD_REPORT_H_
#define REQSHIELD_REPORT_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "reqshield/batch_io.h"
#include "reqshield/options.h"
#include "reqshield/requirements.h"
#include "reqshield/shield.h"

namespace reqshield {

inline constexpr int kReportSchemaVersion = 1;

struct RequirementCounts {
  size_t index = 0;
  int source_line = 0;
  std::string text;
  size_t violations_before = 0;
  size_t violations_after = 0;
};

struct RowDistance {
  double l1 = 0.0;
  double linf = 0.0;
  size_t changed = 0;
};

struct PlanSummary {
  std::string dialect;
  std::string engine;
  uint32_t num_variables = 0;
  size_t num_requirements = 0;
  size_t derived_constraints = 0;
  size_t fm_products = 0;
  // Linear: processing order. Hierarchy: topological order (children first).
  std::vector<VariableIndex> ordering;
};

struct CorrectionReport {
  bool check_only = false;
  PlanSummary plan;
  std::vector<RequirementCounts> requirements;
  std::vector<RowDistance> rows;
  size_t rows_processed = 0;
  size_t rows_compliant = 0;  // compliant before correction
  size_t rows_corrected = 0;  // with at least one changed coordinate

  size_t total_violations_after() const;
};

// Whether one normalized requirement holds on `values`. Clauses use the
// degree convention; inequalities need slack >= -tolerance (> 0 if strict).
bool ClauseHolds(const Clause& clause, std::span<const double> values);
bool InequalityHolds(const LinearInequality& inequality,
                     std::span<const double> values, double tolerance);

// Violation count per normalized requirement over all rows.
std::vector<size_t> CountViolations(const RequirementSet& normalized,
                                    const PredictionBatch& batch,
                                    double tolerance);

PlanSummary SummarizePlan(const Shield& shield);

// Audit only: after-counts equal before-counts and no row distances.
// Throws kWidthMismatch if the batch width differs from the shield's.
CorrectionReport CheckBatch(const Shield& shield, const PredictionBatch& batch,
                            double tolerance = kDefaultTolerance);

struct CorrectionRun {
  PredictionBatch corrected;
  CorrectionReport report;
};

CorrectionRun CorrectBatch(const Shield& shield, const PredictionBatch& batch,
                           double tolerance = kDefaultTolerance,
                           unsigned threads = 0);

nlohmann::json ReportToJson(const CorrectionReport& report);
void WriteReport(const CorrectionReport& report,
                 const std::filesystem::path& path);

}  // namespace reqshield

#endif  // REQSHIELD_REPORT_H_
