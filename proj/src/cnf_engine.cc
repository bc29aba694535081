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

#include "reqshield/cnf_engine.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <string>

#include "reqshield/error.h"
#include "reqshield/sat_solver.h"

namespace reqshield {
namespace {

// (child, parent) for `not child or parent`, nullopt for any other shape.
std::optional<std::pair<VariableIndex, VariableIndex>> AsImplication(
    const Clause& clause) {
  if (clause.literals.size() != 2) return std::nullopt;
  const Literal& a = clause.literals[0];
  const Literal& b = clause.literals[1];
  if (a.positive() == b.positive()) return std::nullopt;
  return a.positive() ? std::make_pair(b.variable, a.variable)
                      : std::make_pair(a.variable, b.variable);
}

// Kahn's algorithm, smallest ready index first. Empty result on a cycle.
std::vector<VariableIndex> TopologicalOrder(
    uint32_t num_variables,
    const std::vector<std::pair<VariableIndex, VariableIndex>>& edges) {
  std::vector<std::vector<VariableIndex>> parents(num_variables);
  std::vector<uint32_t> pending_children(num_variables, 0);
  for (const auto& [child, parent] : edges) {
    parents[child].push_back(parent);
    ++pending_children[parent];
  }
  std::priority_queue<VariableIndex, std::vector<VariableIndex>, std::greater<>>
      ready;
  for (VariableIndex v = 0; v < num_variables; ++v) {
    if (pending_children[v] == 0) ready.push(v);
  }
  std::vector<VariableIndex> order;
  order.reserve(num_variables);
  while (!ready.empty()) {
    const VariableIndex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const VariableIndex parent : parents[v]) {
      if (--pending_children[parent] == 0) ready.push(parent);
    }
  }
  if (order.size() != num_variables) order.clear();
  return order;
}

}  // namespace

CnfPlan CnfPlan::Compile(const RequirementSet& requirements,
                         EngineChoice choice) {
  if (requirements.dialect == Dialect::kLinear ||
      choice == EngineChoice::kLinear) {
    throw Error(ErrorKind::kEngineMismatch,
                "the CNF engines need clauses, not linear inequalities");
  }
  CnfPlan plan;
  plan.num_variables_ = requirements.num_variables;
  plan.clauses_ = requirements.clauses;

  bool hierarchy_shape = true;
  for (const Clause& clause : plan.clauses_) {
    const auto edge = AsImplication(clause);
    if (!edge) {
      hierarchy_shape = false;
      break;
    }
    plan.edges_.push_back(*edge);
  }
  if (hierarchy_shape) {
    plan.topological_order_ =
        TopologicalOrder(plan.num_variables_, plan.edges_);
    hierarchy_shape = plan.topological_order_.size() == plan.num_variables_;
  }

  if (choice == EngineChoice::kHierarchy && !hierarchy_shape) {
    throw Error(ErrorKind::kEngineMismatch,
                "the hierarchy engine needs acyclic 'not a or b' clauses only");
  }
  if (hierarchy_shape && choice != EngineChoice::kGeneral) {
    plan.engine_ = CnfEngineKind::kHierarchy;
    plan.children_.assign(plan.num_variables_, {});
    for (const auto& [child, parent] : plan.edges_) {
      plan.children_[parent].push_back(child);
    }
    for (auto& children : plan.children_)
      std::sort(children.begin(), children.end());
    plan.descendants_.assign(plan.num_variables_, {});
    for (const VariableIndex v : plan.topological_order_) {
      std::vector<VariableIndex>& closure = plan.descendants_[v];
      for (const VariableIndex child : plan.children_[v]) {
        closure.push_back(child);
        closure.insert(closure.end(), plan.descendants_[child].begin(),
                       plan.descendants_[child].end());
      }
      std::sort(closure.begin(), closure.end());
      closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    }
    return plan;
  }

  plan.engine_ = CnfEngineKind::kGeneral;
  plan.edges_.clear();
  plan.topological_order_.clear();
  DpllSolver solver(plan.num_variables_, plan.clauses_);
  auto model = solver.Solve(std::vector<bool>(plan.num_variables_, false));
  if (!model) {
    throw Error(ErrorKind::kUnsatisfiable,
                "the requirements admit no assignment, so no output can "
                "satisfy them");
  }
  plan.certificate_ = std::move(*model);
  if (!IsCompliant(plan.clauses_, [&] {
        std::vector<double> v(plan.num_variables_);
        for (uint32_t i = 0; i < plan.num_variables_; ++i) {
          v[i] = plan.certificate_[i] ? 1.0 : 0.0;
        }
        return v;
      }())) {
    throw Error(ErrorKind::kUnsatisfiable,
                "internal: certificate does not satisfy the clauses");
  }
  return plan;
}

bool CnfPlan::IsCompliant(std::span<const Clause> clauses,
                          std::span<const double> values) {
  return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& clause) {
    return std::any_of(
        clause.literals.begin(), clause.literals.end(), [&](Literal literal) {
          return LiteralDegree(literal, values[literal.variable]) >=
                 kTruthThreshold;
        });
  });
}

CnfCorrection CnfPlan::Apply(std::span<const double> predictions) const {
  ValidatePredictions(predictions, num_variables_);
  return engine_ == CnfEngineKind::kHierarchy ? ApplyHierarchy(predictions)
                                              : ApplyGeneral(predictions);
}

CnfCorrection CnfPlan::ApplyHierarchy(
    std::span<const double> predictions) const {
  CnfCorrection result;
  result.values.assign(predictions.begin(), predictions.end());
  result.sources.resize(num_variables_);
  std::iota(result.sources.begin(), result.sources.end(), 0);
  result.actions.assign(num_variables_, CnfAction::kKept);
  for (const VariableIndex v : topological_order_) {
    for (const VariableIndex child : children_[v]) {
      const double candidate = result.values[child];
      const VariableIndex source = result.sources[child];
      if (candidate > result.values[v] ||
          (candidate == result.values[v] && source < result.sources[v])) {
        result.values[v] = candidate;
        result.sources[v] = source;
      }
    }
    if (result.sources[v] != v) result.actions[v] = CnfAction::kRaisedByMax;
  }
  return result;
}

CnfCorrection CnfPlan::ApplyGeneral(std::span<const double> predictions) const {
  CnfCorrection result;
  result.values.assign(predictions.begin(), predictions.end());
  result.actions.assign(num_variables_, CnfAction::kKept);
  result.sources.resize(num_variables_);
  std::iota(result.sources.begin(), result.sources.end(), 0);
  result.committed.assign(num_variables_, false);

  std::vector<bool> thresholded(num_variables_);
  for (uint32_t v = 0; v < num_variables_; ++v) {
    thresholded[v] = predictions[v] >= kTruthThreshold;
  }
  result.order.resize(num_variables_);
  std::iota(result.order.begin(), result.order.end(), 0);
  std::stable_sort(result.order.begin(), result.order.end(),
                   [&](VariableIndex a, VariableIndex b) {
                     return std::abs(predictions[a] - kTruthThreshold) >
                            std::abs(predictions[b] - kTruthThreshold);
                   });
  if (IsCompliant(clauses_, predictions)) {
    for (uint32_t v = 0; v < num_variables_; ++v) {
      result.committed[v] = thresholded[v];
    }
    return result;
  }

  DpllSolver solver(num_variables_, clauses_);
  // Always a model that agrees with everything committed so far.
  std::vector<bool> model = certificate_;
  for (const VariableIndex v : result.order) {
    const bool wanted = thresholded[v];
    bool value = wanted;
    if (const auto fixed = solver.RootValue(v)) {
      value = *fixed;
    } else if (model[v] != wanted) {
      const Literal tentative{
          v, wanted ? Polarity::kPositive : Polarity::kNegative};
      if (auto extension = solver.Solve(thresholded, tentative)) {
        model = std::move(*extension);
      } else {
        value = !wanted;
      }
    }
    const bool ok = solver.AssignAtRoot(
        {v, value ? Polarity::kPositive : Polarity::kNegative});
    if (!ok) {
      throw Error(ErrorKind::kUnsatisfiable,
                  "internal: committed assignment lost extendability");
    }
    result.committed[v] = value;
    if (value != wanted) {
      result.values[v] = 1.0 - predictions[v];
      result.actions[v] = CnfAction::kFlipped;
    }
  }
  return result;
}

}  // namespace reqshield
