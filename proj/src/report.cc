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

#include "reqshield/report.h"

#include <algorithm>
#include <cmath>

#include "reqshield/cnf_engine.h"
#include "reqshield/error.h"

namespace reqshield {
namespace {

void CheckWidth(const Shield& shield, const PredictionBatch& batch) {
  if (batch.width != shield.num_variables()) {
    throw Error(ErrorKind::kWidthMismatch,
                "batch has " + std::to_string(batch.width) +
                    " columns but the requirements use " +
                    std::to_string(shield.num_variables()) + " variables");
  }
}

std::vector<RequirementCounts> DescribeRequirements(
    const RequirementSet& normalized) {
  std::vector<RequirementCounts> out;
  for (const Clause& clause : normalized.clauses) {
    out.push_back({out.size(), clause.source_line, RenderClause(clause)});
  }
  for (const LinearInequality& inequality : normalized.inequalities) {
    out.push_back(
        {out.size(), inequality.source_line, RenderInequality(inequality)});
  }
  return out;
}

}  // namespace

size_t CorrectionReport::total_violations_after() const {
  size_t total = 0;
  for (const RequirementCounts& r : requirements) total += r.violations_after;
  return total;
}

bool ClauseHolds(const Clause& clause, std::span<const double> values) {
  return std::any_of(
      clause.literals.begin(), clause.literals.end(), [&](Literal literal) {
        return LiteralDegree(literal, values[literal.variable]) >=
               kTruthThreshold;
      });
}

bool InequalityHolds(const LinearInequality& inequality,
                     std::span<const double> values, double tolerance) {
  for (const CanonicalInequality& canonical : inequality.CanonicalForms()) {
    double lhs = 0.0;
    for (const auto& [variable, coefficient] : canonical.coefficients) {
      lhs += coefficient * values[variable];
    }
    const double slack = lhs - canonical.bound;
    if (canonical.strict ? !(slack > 0) : !(slack >= -tolerance)) return false;
  }
  return true;
}

// Adds this row's violations to `counts`; true when there were none.
bool TallyRow(const RequirementSet& normalized, std::span<const double> row,
              double tolerance, std::vector<size_t>& counts) {
  bool compliant = true;
  for (size_t i = 0; i < normalized.clauses.size(); ++i) {
    const bool violated = !ClauseHolds(normalized.clauses[i], row);
    counts[i] += violated;
    compliant = compliant && !violated;
  }
  for (size_t i = 0; i < normalized.inequalities.size(); ++i) {
    const bool violated =
        !InequalityHolds(normalized.inequalities[i], row, tolerance);
    counts[i] += violated;
    compliant = compliant && !violated;
  }
  return compliant;
}

std::vector<size_t> CountViolations(const RequirementSet& normalized,
                                    const PredictionBatch& batch,
                                    double tolerance) {
  std::vector<size_t> counts(normalized.size(), 0);
  for (size_t r = 0; r < batch.num_rows(); ++r) {
    TallyRow(normalized, batch.row(r), tolerance, counts);
  }
  return counts;
}

PlanSummary SummarizePlan(const Shield& shield) {
  PlanSummary summary;
  summary.dialect = DialectName(shield.requirements().dialect);
  summary.engine = EngineName(shield.engine());
  summary.num_variables = shield.num_variables();
  summary.num_requirements = shield.requirements().size();
  if (const EliminationPlan* plan = shield.linear_plan()) {
    summary.derived_constraints = plan->num_derived_kept();
    summary.fm_products = plan->derived_count();
    summary.ordering = plan->ordering();
  } else if (const CnfPlan* plan = shield.cnf_plan()) {
    summary.ordering = plan->topological_order();
  }
  return summary;
}

CorrectionReport CheckBatch(const Shield& shield, const PredictionBatch& batch,
                            double tolerance) {
  CheckWidth(shield, batch);
  CorrectionReport report;
  report.check_only = true;
  report.plan = SummarizePlan(shield);
  report.requirements = DescribeRequirements(shield.requirements());
  std::vector<size_t> counts(report.requirements.size(), 0);
  for (size_t r = 0; r < batch.num_rows(); ++r) {
    report.rows_compliant +=
        TallyRow(shield.requirements(), batch.row(r), tolerance, counts);
  }
  for (size_t i = 0; i < counts.size(); ++i) {
    report.requirements[i].violations_before = counts[i];
    report.requirements[i].violations_after = counts[i];
  }
  report.rows_processed = batch.num_rows();
  return report;
}

CorrectionRun CorrectBatch(const Shield& shield, const PredictionBatch& batch,
                           double tolerance, unsigned threads) {
  CorrectionRun run;
  run.report = CheckBatch(shield, batch, tolerance);
  run.report.check_only = false;
  run.corrected = batch;
  run.corrected.values = shield.ApplyBatch(batch.values, threads);

  const std::vector<size_t> after =
      CountViolations(shield.requirements(), run.corrected, tolerance);
  for (size_t i = 0; i < after.size(); ++i) {
    run.report.requirements[i].violations_after = after[i];
  }
  for (size_t r = 0; r < batch.num_rows(); ++r) {
    RowDistance distance;
    const auto before = batch.row(r);
    const auto corrected = run.corrected.row(r);
    for (size_t c = 0; c < batch.width; ++c) {
      const double delta = std::abs(corrected[c] - before[c]);
      distance.l1 += delta;
      distance.linf = std::max(distance.linf, delta);
      // -0.0 and 0.0 compare equal, so a zero changing sign is not counted.
      distance.changed += corrected[c] != before[c];
    }
    run.report.rows_corrected += distance.changed > 0;
    run.report.rows.push_back(distance);
  }
  return run;
}

nlohmann::json ReportToJson(const CorrectionReport& report) {
  nlohmann::json plan = {
      {"dialect", report.plan.dialect},
      {"engine", report.plan.engine},
      {"num_variables", report.plan.num_variables},
      {"num_requirements", report.plan.num_requirements},
      {"derived_constraints", report.plan.derived_constraints},
      {"fm_products", report.plan.fm_products},
      {"ordering", report.plan.ordering},
  };
  nlohmann::json requirements = nlohmann::json::array();
  for (const RequirementCounts& r : report.requirements) {
    requirements.push_back({{"index", r.index},
                            {"source_line", r.source_line},
                            {"requirement", r.text},
                            {"violations_before", r.violations_before},
                            {"violations_after", r.violations_after}});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (size_t r = 0; r < report.rows.size(); ++r) {
    rows.push_back({{"row", r},
                    {"l1", report.rows[r].l1},
                    {"linf", report.rows[r].linf},
                    {"changed", report.rows[r].changed}});
  }
  return {
      {"schema_version", kReportSchemaVersion},
      {"mode", report.check_only ? "check" : "apply"},
      {"plan", std::move(plan)},
      {"totals",
       {{"rows_processed", report.rows_processed},
        {"rows_compliant", report.rows_compliant},
        {"rows_corrected", report.rows_corrected},
        {"violations_after", report.total_violations_after()}}},
      {"requirements", std::move(requirements)},
      {"rows", std::move(rows)},
  };
}

void WriteReport(const CorrectionReport& report,
                 const std::filesystem::path& path) {
  WriteTextFile(path, ReportToJson(report).dump(2) + "\n");
}

}  // namespace reqshield
