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

// Backward pass through a shield. Every correction is piecewise linear in its
// input; the forward pass records which piece it used and the vector-Jacobian
// product differentiates that piece. At a kink the recorded piece gives the
// subgradient, with the same tie-breaking as the forward pass.

#ifndef REQSHIELD_GRAD_H_
#define REQSHIELD_GRAD_H_

#include <cstdint>
#include <span>
#include <vector>

#include "reqshield/shield.h"

namespace reqshield {

enum class BranchKind : uint8_t {
  kPassThrough,  // output = input
  kLowerBound,   // linear: clamped up to bound row `ref`
  kUpperBound,   // linear: clamped down to bound row `ref`
  kFlipped,      // general CNF: output = 1 - input
  kMaxSource,    // hierarchy: output = input[ref], ref != self
};

struct Branch {
  BranchKind kind = BranchKind::kPassThrough;
  int64_t ref = -1;

  friend bool operator==(const Branch&, const Branch&) = default;
};

struct VjpTrace {
  EngineKind engine = EngineKind::kIdentity;
  std::vector<Branch> branches;

  friend bool operator==(const VjpTrace&, const VjpTrace&) = default;
};

struct TracedCorrection {
  std::vector<double> values;
  VjpTrace trace;
};

// Same values as Shield::Apply, bit for bit.
TracedCorrection ApplyWithTrace(const Shield& shield,
                                std::span<const double> values);

// cotangent^T * J for the branch recorded in `trace`. Throws kTraceMismatch
// when the trace does not belong to this shield, kInvalidInput on a
// wrong-length cotangent.
std::vector<double> Vjp(const Shield& shield, const VjpTrace& trace,
                        std::span<const double> cotangent);

enum class FiniteDifferenceStatus { kPassed, kFailed, kBoundaryTooClose };

struct FiniteDifferenceReport {
  FiniteDifferenceStatus status = FiniteDifferenceStatus::kPassed;
  // max |fd - vjp| / max(1, |fd|, |vjp|) over all Jacobian entries.
  double max_relative_error = 0.0;
  // Input coordinate whose probe changed branch; -1 otherwise.
  int64_t boundary_coordinate = -1;
};

// Compares the Jacobian rebuilt from unit-cotangent VJPs with central
// differences of Apply. The point must sit more than 10 * step away from any
// branch change along every coordinate; otherwise the check is skipped with
// kBoundaryTooClose.
FiniteDifferenceReport FiniteDifferenceCheck(const Shield& shield,
                                             std::span<const double> values,
                                             double step, double tolerance);

}  // namespace reqshield

#endif  // REQSHIELD_GRAD_H_
