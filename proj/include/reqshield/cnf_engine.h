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

// Correction of real-valued outputs against propositional clauses.
//
// Outputs are read as Booleans through kTruthThreshold. Two engines exist:
//
//  * Hierarchy: every clause is `not a or b` and the implication graph
//    a -> b is acyclic. Each output becomes the max of itself and all of its
//    descendants, so a parent is never less confident than its children.
//
//  * General: any satisfiable clause set. Variables are visited from most to
//    least confident; each keeps its thresholded value when that still
//    extends to a model of the clauses and is reflected to 1 - p otherwise.

#ifndef REQSHIELD_CNF_ENGINE_H_
#define REQSHIELD_CNF_ENGINE_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "reqshield/options.h"
#include "reqshield/requirements.h"

namespace reqshield {

enum class CnfEngineKind { kHierarchy, kGeneral };

enum class CnfAction : uint8_t { kKept, kRaisedByMax, kFlipped };

struct CnfCorrection {
  std::vector<double> values;
  std::vector<CnfAction> actions;
  // Hierarchy: index whose prediction each output copies (argmax over the
  // variable and its descendants, lowest index on ties). General: identity.
  std::vector<VariableIndex> sources;
  // General only: visiting order and the committed Boolean values. A
  // compliant input is returned as is and commits its thresholded values,
  // which need not form a model when some input is exactly 0.5.
  std::vector<VariableIndex> order;
  std::vector<bool> committed;
};

class CnfPlan {
 public:
  // `requirements` must be normalized CNF (or empty). `choice` may force the
  // general engine; forcing the hierarchy engine on a set that does not
  // have the hierarchy shape throws kEngineMismatch. Throws kUnsatisfiable
  // when the clauses have no model.
  static CnfPlan Compile(const RequirementSet& requirements,
                         EngineChoice choice = EngineChoice::kAuto);

  CnfEngineKind engine() const { return engine_; }
  uint32_t num_variables() const { return num_variables_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  // Hierarchy data. Edges are (child, parent) pairs.
  const std::vector<std::pair<VariableIndex, VariableIndex>>& edges() const {
    return edges_;
  }
  const std::vector<VariableIndex>& topological_order() const {
    return topological_order_;
  }
  // Sorted strict descendants (variables that imply it) of each variable.
  const std::vector<std::vector<VariableIndex>>& descendants() const {
    return descendants_;
  }

  // General data: a model of every clause, found at compile time.
  const std::vector<bool>& certificate() const { return certificate_; }

  // Throws kInvalidInput on a wrong length or a non-finite value.
  CnfCorrection Apply(std::span<const double> predictions) const;

  // True when every clause has an element whose degree reaches the
  // threshold.
  static bool IsCompliant(std::span<const Clause> clauses,
                          std::span<const double> values);

 private:
  CnfPlan() = default;

  CnfCorrection ApplyHierarchy(std::span<const double> predictions) const;
  CnfCorrection ApplyGeneral(std::span<const double> predictions) const;

  CnfEngineKind engine_ = CnfEngineKind::kGeneral;
  uint32_t num_variables_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::pair<VariableIndex, VariableIndex>> edges_;
  std::vector<std::vector<VariableIndex>> children_;
  std::vector<VariableIndex> topological_order_;
  std::vector<std::vector<VariableIndex>> descendants_;
  std::vector<bool> certificate_;
};

// Truth degree of a literal for an output value.
inline double LiteralDegree(Literal literal, double value) {
  return literal.positive() ? value : 1.0 - value;
}

}  // namespace reqshield

#endif  // REQSHIELD_CNF_ENGINE_H_
