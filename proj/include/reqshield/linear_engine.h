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

// Correction against a conjunction of linear inequalities.
//
// Each inequality is enforced at its latest variable under a processing
// order. Fourier-Motzkin elimination, run from the last variable to the
// first, adds the implied inequalities needed so that clamping variables one
// at a time into [max lower bound, min upper bound] never meets an empty
// interval.

#ifndef REQSHIELD_LINEAR_ENGINE_H_
#define REQSHIELD_LINEAR_ENGINE_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "reqshield/options.h"
#include "reqshield/requirements.h"

namespace reqshield {

// A bound on `variable`:
//   lower:  y_v + sum(others) >= bound,  i.e. y_v >= bound - sum(others)
//   upper: -y_v + sum(others) >= bound,  i.e. y_v <= sum(others) - bound
// where sum(others) = sum(c_i * y_i) over variables earlier in the order.
struct BoundRow {
  int id = 0;
  VariableIndex variable = 0;
  bool is_lower = true;
  std::vector<std::pair<VariableIndex, double>> others;
  double bound = 0.0;
  // Index into the normalized inequalities, or -1 for an implied row.
  int original = -1;
  // Sorted indices into originals() that this row is a combination of.
  std::vector<int> history;
};

struct EliminationStep {
  VariableIndex variable = 0;
  std::vector<int> lower;  // BoundRow ids, ascending
  std::vector<int> upper;
};

enum class ClampBranch : uint8_t { kPassThrough, kLower, kUpper };

struct LinearCorrection {
  std::vector<double> values;
  std::vector<ClampBranch> branches;
  // Active BoundRow id per variable, -1 on pass-through.
  std::vector<int> active_rows;
};

class EliminationPlan {
 public:
  // `requirements` must be normalized linear (or empty). Throws kInfeasible,
  // kComplexityExceeded, kInvalidOrdering or kInvalidOptions.
  static EliminationPlan Compile(const RequirementSet& requirements,
                                 const ShieldOptions& options = {});

  uint32_t num_variables() const { return num_variables_; }
  const std::vector<VariableIndex>& ordering() const { return ordering_; }
  // Steps in processing order; steps()[k].variable == ordering()[k].
  const std::vector<EliminationStep>& steps() const { return steps_; }
  // All rows by id. Originals come first, in the order of the inequalities.
  const std::vector<BoundRow>& rows() const { return rows_; }
  // The enforced inequalities, strict ones already tightened by epsilon.
  const std::vector<CanonicalInequality>& originals() const {
    return originals_;
  }
  // Implied inequalities kept after pruning, as sum(a_i y_i) >= b.
  std::vector<CanonicalInequality> DerivedInequalities() const;
  // Fourier-Motzkin products generated. Pairs whose combined history has
  // more than t + 1 originals after t eliminations are implied by the kept
  // rows and are skipped without being generated or counted.
  size_t derived_count() const { return derived_count_; }
  size_t num_derived_kept() const { return rows_.size() - num_original_rows_; }
  // Bounds b of the variable-free residuals 0 >= b; all are <= tolerance.
  const std::vector<double>& residuals() const { return residuals_; }
  double strict_epsilon() const { return strict_epsilon_; }

  // Throws kInvalidInput on a wrong length or a non-finite value. Inputs that
  // already satisfy every enforced inequality come back unchanged.
  LinearCorrection Apply(std::span<const double> values) const;

  // Exact check of every enforced inequality.
  bool Satisfies(std::span<const double> values) const;

 private:
  EliminationPlan() = default;

  uint32_t num_variables_ = 0;
  std::vector<VariableIndex> ordering_;
  std::vector<EliminationStep> steps_;
  std::vector<BoundRow> rows_;
  size_t num_original_rows_ = 0;
  std::vector<CanonicalInequality> originals_;
  size_t derived_count_ = 0;
  std::vector<double> residuals_;
  double strict_epsilon_ = 0.0;
};

}  // namespace reqshield

#endif  // REQSHIELD_LINEAR_ENGINE_H_
