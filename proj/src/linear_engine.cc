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

#include "reqshield/linear_engine.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "reqshield/error.h"

namespace reqshield {
namespace {

// Relative size under which a combined coefficient counts as cancelled.
constexpr double kCancellation = 1e-12;
// A residual 0 >= b with b above this (relative) is a contradiction.
constexpr double kInfeasibility = 1e-9;

using Terms = std::vector<std::pair<VariableIndex, double>>;
using RowKey = std::tuple<VariableIndex, bool, Terms>;

struct KeyInfo {
  double best_bound = -std::numeric_limits<double>::infinity();
  int derived_row = -1;
};

// Scales `terms >= bound` so the latest variable has coefficient +-1.
std::optional<BoundRow> MakeRow(const Terms& terms, double bound,
                                const std::vector<uint32_t>& position) {
  if (terms.empty()) return std::nullopt;
  const auto latest = std::max_element(
      terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        return position[a.first] < position[b.first];
      });
  const double scale = std::abs(latest->second);
  BoundRow row;
  row.variable = latest->first;
  row.is_lower = latest->second > 0;
  row.bound = bound / scale;
  for (const auto& [variable, coefficient] : terms) {
    if (variable != row.variable)
      row.others.emplace_back(variable, coefficient / scale);
  }
  return row;
}

double SumOthers(const BoundRow& row, std::span<const double> values) {
  double sum = 0.0;
  for (const auto& [variable, coefficient] : row.others) {
    sum += coefficient * values[variable];
  }
  return sum;
}

}  // namespace

EliminationPlan EliminationPlan::Compile(const RequirementSet& requirements,
                                         const ShieldOptions& options) {
  if (requirements.dialect == Dialect::kCnf) {
    throw Error(ErrorKind::kEngineMismatch,
                "the linear engine needs inequalities, not clauses");
  }
  if (!std::isfinite(options.strict_epsilon) || options.strict_epsilon <= 0) {
    throw Error(ErrorKind::kInvalidOptions,
                "strict epsilon must be finite and positive");
  }

  EliminationPlan plan;
  const uint32_t n = requirements.num_variables;
  plan.num_variables_ = n;
  plan.strict_epsilon_ = options.strict_epsilon;

  if (options.ordering) {
    plan.ordering_ = *options.ordering;
    std::vector<bool> seen(n, false);
    bool valid = plan.ordering_.size() == n;
    for (const VariableIndex v : plan.ordering_) {
      valid = valid && v < n && !seen[v];
      if (v < n) seen[v] = true;
    }
    if (!valid) {
      throw Error(ErrorKind::kInvalidOrdering,
                  "ordering must be a permutation of 0.." +
                      std::to_string(n == 0 ? 0 : n - 1));
    }
  } else {
    plan.ordering_.resize(n);
    for (uint32_t v = 0; v < n; ++v) plan.ordering_[v] = v;
  }
  std::vector<uint32_t> position(n);
  for (uint32_t k = 0; k < n; ++k) position[plan.ordering_[k]] = k;
  plan.steps_.resize(n);
  for (uint32_t k = 0; k < n; ++k) plan.steps_[k].variable = plan.ordering_[k];

  std::map<RowKey, KeyInfo> keys;
  auto add_row = [&](BoundRow row) {
    row.id = static_cast<int>(plan.rows_.size());
    EliminationStep& step = plan.steps_[position[row.variable]];
    (row.is_lower ? step.lower : step.upper).push_back(row.id);
    plan.rows_.push_back(std::move(row));
  };

  for (const LinearInequality& inequality : requirements.inequalities) {
    for (CanonicalInequality canonical : inequality.CanonicalForms()) {
      std::erase_if(canonical.coefficients,
                    [](const auto& term) { return term.second == 0.0; });
      if (canonical.strict) {
        canonical.bound += options.strict_epsilon;
        canonical.strict = false;
      }
      auto row = MakeRow(canonical.coefficients, canonical.bound, position);
      if (!row) {
        throw Error(ErrorKind::kDegenerateConstraint,
                    "line " + std::to_string(inequality.source_line) +
                        ": variable-free inequality reached the engine",
                    inequality.source_line);
      }
      row->original = static_cast<int>(plan.originals_.size());
      row->history = {row->original};
      plan.originals_.push_back(std::move(canonical));
      KeyInfo& info = keys[{row->variable, row->is_lower, row->others}];
      info.best_bound = std::max(info.best_bound, row->bound);
      add_row(std::move(*row));
    }
  }
  plan.num_original_rows_ = plan.rows_.size();

  std::vector<int> history;
  for (uint32_t k = n; k-- > 0;) {
    const size_t eliminated = n - k;
    // Copies: add_row may grow the step lists and the row table.
    const std::vector<int> lower = plan.steps_[k].lower;
    const std::vector<int> upper = plan.steps_[k].upper;
    for (const int l : lower) {
      for (const int u : upper) {
        history.clear();
        std::set_union(
            plan.rows_[l].history.begin(), plan.rows_[l].history.end(),
            plan.rows_[u].history.begin(), plan.rows_[u].history.end(),
            std::back_inserter(history));
        if (history.size() > eliminated + 1) continue;
        if (++plan.derived_count_ > options.derived_cap) {
          throw Error(ErrorKind::kComplexityExceeded,
                      "more than " + std::to_string(options.derived_cap) +
                          " implied inequalities generated");
        }
        const BoundRow& lo = plan.rows_[l];
        const BoundRow& up = plan.rows_[u];
        std::map<VariableIndex, double> merged;
        double scale = 1.0;
        for (const auto& [variable, coefficient] : lo.others) {
          merged[variable] += coefficient;
          scale = std::max(scale, std::abs(coefficient));
        }
        for (const auto& [variable, coefficient] : up.others) {
          merged[variable] += coefficient;
          scale = std::max(scale, std::abs(coefficient));
        }
        const double bound = lo.bound + up.bound;
        Terms terms;
        for (const auto& [variable, coefficient] : merged) {
          if (std::abs(coefficient) > kCancellation * scale) {
            terms.emplace_back(variable, coefficient);
          }
        }
        if (terms.empty()) {
          const double magnitude =
              std::max({1.0, std::abs(lo.bound), std::abs(up.bound)});
          if (bound > kInfeasibility * magnitude) {
            throw Error(ErrorKind::kInfeasible,
                        "the inequalities imply 0 >= " + FormatNumber(bound));
          }
          plan.residuals_.push_back(bound);
          continue;
        }
        auto row = MakeRow(terms, bound, position);
        row->history = history;
        KeyInfo& info = keys[{row->variable, row->is_lower, row->others}];
        if (row->bound <= info.best_bound) continue;
        info.best_bound = row->bound;
        if (info.derived_row >= 0) {
          plan.rows_[info.derived_row].bound = row->bound;
          plan.rows_[info.derived_row].history = std::move(row->history);
          continue;
        }
        info.derived_row = static_cast<int>(plan.rows_.size());
        add_row(std::move(*row));
      }
    }
  }
  return plan;
}

std::vector<CanonicalInequality> EliminationPlan::DerivedInequalities() const {
  std::vector<CanonicalInequality> derived;
  for (size_t id = num_original_rows_; id < rows_.size(); ++id) {
    const BoundRow& row = rows_[id];
    CanonicalInequality inequality;
    inequality.coefficients = row.others;
    inequality.coefficients.emplace_back(row.variable,
                                         row.is_lower ? 1.0 : -1.0);
    std::sort(inequality.coefficients.begin(), inequality.coefficients.end());
    inequality.bound = row.bound;
    derived.push_back(std::move(inequality));
  }
  return derived;
}

bool EliminationPlan::Satisfies(std::span<const double> values) const {
  for (const CanonicalInequality& inequality : originals_) {
    double lhs = 0.0;
    for (const auto& [variable, coefficient] : inequality.coefficients) {
      lhs += coefficient * values[variable];
    }
    if (!(lhs >= inequality.bound)) return false;
  }
  return true;
}

LinearCorrection EliminationPlan::Apply(std::span<const double> values) const {
  ValidatePredictions(values, num_variables_);
  LinearCorrection result;
  result.values.assign(values.begin(), values.end());
  result.branches.assign(num_variables_, ClampBranch::kPassThrough);
  result.active_rows.assign(num_variables_, -1);
  if (Satisfies(values)) return result;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (const EliminationStep& step : steps_) {
    double low = -kInf;
    int low_row = -1;
    for (const int id : step.lower) {
      const double candidate =
          rows_[id].bound - SumOthers(rows_[id], result.values);
      if (candidate > low) {
        low = candidate;
        low_row = id;
      }
    }
    double high = kInf;
    int high_row = -1;
    for (const int id : step.upper) {
      const double candidate =
          SumOthers(rows_[id], result.values) - rows_[id].bound;
      if (candidate < high) {
        high = candidate;
        high_row = id;
      }
    }
    const VariableIndex v = step.variable;
    const double y = values[v];
    // min(max(y, low), high); an (ulp-level) empty interval resolves to high.
    if (low > high || y > high) {
      result.values[v] = high;
      result.branches[v] = ClampBranch::kUpper;
      result.active_rows[v] = high_row;
    } else if (y < low) {
      result.values[v] = low;
      result.branches[v] = ClampBranch::kLower;
      result.active_rows[v] = low_row;
    }
  }
  return result;
}

}  // namespace reqshield
