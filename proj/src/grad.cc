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

#include "reqshield/grad.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "reqshield/error.h"

namespace reqshield {
namespace {

[[noreturn]] void Mismatch(const std::string& what) {
  throw Error(ErrorKind::kTraceMismatch, what);
}

// The branch plus anything else the forward pass decided discretely.
struct Signature {
  VjpTrace trace;
  std::vector<bool> thresholded;

  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature SignatureAt(const Shield& shield, std::span<const double> values) {
  Signature signature{ApplyWithTrace(shield, values).trace, {}};
  if (shield.engine() == EngineKind::kGeneral) {
    for (const double v : values) {
      signature.thresholded.push_back(v >= kTruthThreshold);
    }
  }
  return signature;
}

}  // namespace

TracedCorrection ApplyWithTrace(const Shield& shield,
                                std::span<const double> values) {
  TracedCorrection result;
  result.trace.engine = shield.engine();
  const uint32_t n = shield.num_variables();
  result.trace.branches.assign(n, Branch{});

  if (const CnfPlan* plan = shield.cnf_plan()) {
    CnfCorrection correction = plan->Apply(values);
    for (uint32_t v = 0; v < n; ++v) {
      if (correction.actions[v] == CnfAction::kFlipped) {
        result.trace.branches[v] = {BranchKind::kFlipped, -1};
      } else if (correction.sources[v] != v) {
        result.trace.branches[v] = {BranchKind::kMaxSource,
                                    correction.sources[v]};
      }
    }
    result.values = std::move(correction.values);
    return result;
  }
  if (const EliminationPlan* plan = shield.linear_plan()) {
    LinearCorrection correction = plan->Apply(values);
    for (uint32_t v = 0; v < n; ++v) {
      switch (correction.branches[v]) {
        case ClampBranch::kPassThrough:
          break;
        case ClampBranch::kLower:
          result.trace.branches[v] = {BranchKind::kLowerBound,
                                      correction.active_rows[v]};
          break;
        case ClampBranch::kUpper:
          result.trace.branches[v] = {BranchKind::kUpperBound,
                                      correction.active_rows[v]};
          break;
      }
    }
    result.values = std::move(correction.values);
    return result;
  }
  ValidatePredictions(values, n);
  result.values.assign(values.begin(), values.end());
  return result;
}

std::vector<double> Vjp(const Shield& shield, const VjpTrace& trace,
                        std::span<const double> cotangent) {
  const uint32_t n = shield.num_variables();
  if (trace.engine != shield.engine()) {
    Mismatch("trace from engine '" + std::string(EngineName(trace.engine)) +
             "' used with engine '" + std::string(EngineName(shield.engine())) +
             "'");
  }
  if (trace.branches.size() != n) {
    Mismatch("trace has " + std::to_string(trace.branches.size()) +
             " branches for " + std::to_string(n) + " variables");
  }
  ValidatePredictions(cotangent, n);

  std::vector<double> grad(n, 0.0);
  switch (shield.engine()) {
    case EngineKind::kIdentity:
    case EngineKind::kGeneral:
    case EngineKind::kHierarchy:
      for (uint32_t v = 0; v < n; ++v) {
        const Branch& branch = trace.branches[v];
        switch (branch.kind) {
          case BranchKind::kPassThrough:
            grad[v] += cotangent[v];
            break;
          case BranchKind::kFlipped:
            if (shield.engine() != EngineKind::kGeneral) {
              Mismatch("flip recorded outside the general engine");
            }
            grad[v] -= cotangent[v];
            break;
          case BranchKind::kMaxSource:
            if (shield.engine() != EngineKind::kHierarchy || branch.ref < 0 ||
                branch.ref >= n) {
              Mismatch("invalid max source for y_" + std::to_string(v));
            }
            grad[branch.ref] += cotangent[v];
            break;
          default:
            Mismatch("clamp recorded outside the linear engine");
        }
      }
      return grad;
    case EngineKind::kLinear:
      break;
  }

  const EliminationPlan& plan = *shield.linear_plan();
  // Cotangent with respect to the corrected values, accumulated from the
  // last step backwards: a clamped output feeds earlier corrected outputs.
  std::vector<double> upstream(cotangent.begin(), cotangent.end());
  const auto& steps = plan.steps();
  for (size_t k = steps.size(); k-- > 0;) {
    const VariableIndex v = steps[k].variable;
    const Branch& branch = trace.branches[v];
    const double g = upstream[v];
    if (branch.kind == BranchKind::kPassThrough) {
      grad[v] += g;
      continue;
    }
    const bool lower = branch.kind == BranchKind::kLowerBound;
    if ((!lower && branch.kind != BranchKind::kUpperBound) || branch.ref < 0 ||
        branch.ref >= static_cast<int64_t>(plan.rows().size())) {
      Mismatch("invalid clamp branch for y_" + std::to_string(v));
    }
    const BoundRow& row = plan.rows()[branch.ref];
    if (row.variable != v || row.is_lower != lower) {
      Mismatch("bound row " + std::to_string(branch.ref) +
               " does not bound y_" + std::to_string(v) + " that way");
    }
    // lower: y_v = bound - sum(c_i y_i);  upper: y_v = sum(c_i y_i) - bound.
    const double sign = lower ? -1.0 : 1.0;
    for (const auto& [other, coefficient] : row.others) {
      upstream[other] += sign * coefficient * g;
    }
  }
  return grad;
}

FiniteDifferenceReport FiniteDifferenceCheck(const Shield& shield,
                                             std::span<const double> values,
                                             double step, double tolerance) {
  FiniteDifferenceReport report;
  const uint32_t n = shield.num_variables();
  const Signature center = SignatureAt(shield, values);

  std::vector<double> probe(values.begin(), values.end());
  for (uint32_t j = 0; j < n; ++j) {
    for (const double offset : {-10 * step, -step, step, 10 * step}) {
      probe[j] = values[j] + offset;
      if (!(SignatureAt(shield, probe) == center)) {
        report.status = FiniteDifferenceStatus::kBoundaryTooClose;
        report.boundary_coordinate = j;
        return report;
      }
    }
    probe[j] = values[j];
  }

  // jacobian[i][j] = d out_i / d in_j, from one VJP per output.
  std::vector<std::vector<double>> jacobian(n);
  std::vector<double> unit(n, 0.0);
  for (uint32_t i = 0; i < n; ++i) {
    unit[i] = 1.0;
    jacobian[i] = Vjp(shield, center.trace, unit);
    unit[i] = 0.0;
  }
  for (uint32_t j = 0; j < n; ++j) {
    const double high = values[j] + step;
    const double low = values[j] - step;
    probe[j] = high;
    const std::vector<double> plus = shield.Apply(probe);
    probe[j] = low;
    const std::vector<double> minus = shield.Apply(probe);
    probe[j] = values[j];
    for (uint32_t i = 0; i < n; ++i) {
      const double fd = (plus[i] - minus[i]) / (high - low);
      const double exact = jacobian[i][j];
      const double scale = std::max({1.0, std::abs(fd), std::abs(exact)});
      report.max_relative_error =
          std::max(report.max_relative_error, std::abs(fd - exact) / scale);
    }
  }
  report.status = report.max_relative_error <= tolerance
                      ? FiniteDifferenceStatus::kPassed
                      : FiniteDifferenceStatus::kFailed;
  return report;
}

}  // namespace reqshield
