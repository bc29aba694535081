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

#ifndef REQSHIELD_SAT_SOLVER_H_
#define REQSHIELD_SAT_SOLVER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "reqshield/requirements.h"

namespace reqshield {

// Complete DPLL search with two-watched-literal unit propagation and
// chronological backtracking. No restarts and no randomness, so the model
// returned for a given root state and phase is always the same.
//
// Assignments made through AssignAtRoot persist across Solve calls; Solve
// itself leaves the root state untouched. An instance is cheap to build and
// is meant to live for one correction.
class DpllSolver {
 public:
  DpllSolver(uint32_t num_variables, std::span<const Clause> clauses);

  // Makes `literal` true at the root and propagates. Returns false if this
  // produces a conflict, after which the solver is inconsistent.
  bool AssignAtRoot(Literal literal);

  // Value fixed at the root (by AssignAtRoot or propagation), if any.
  std::optional<bool> RootValue(VariableIndex variable) const;

  bool root_conflict() const { return root_conflict_; }

  // Searches for a model extending the root assignment plus the optional
  // assumption. Decisions pick the lowest unassigned variable and try
  // phase[variable] first (false past the end of `phase`).
  std::optional<std::vector<bool>> Solve(
      const std::vector<bool>& phase,
      std::optional<Literal> assumption = std::nullopt);

  uint64_t num_decisions() const { return num_decisions_; }
  uint64_t num_conflicts() const { return num_conflicts_; }

 private:
  using Lit = uint32_t;  // 2 * variable + negated

  static Lit Encode(Literal literal) {
    return 2 * literal.variable + (literal.positive() ? 0 : 1);
  }
  // 1 true, 0 false, -1 unassigned.
  int LitValue(Lit lit) const {
    const int8_t value = values_[lit >> 1];
    if (value < 0) return -1;
    return (lit & 1) ? 1 - value : value;
  }
  void Enqueue(Lit lit);
  bool Propagate();
  void Backtrack(size_t level);

  uint32_t num_variables_;
  std::vector<uint32_t> clause_start_;
  std::vector<Lit> literals_;
  std::vector<std::vector<uint32_t>> watches_;  // by literal that went false
  std::vector<int8_t> values_;
  std::vector<Lit> trail_;
  std::vector<size_t> level_start_;
  size_t propagated_ = 0;
  bool root_conflict_ = false;
  uint64_t num_decisions_ = 0;
  uint64_t num_conflicts_ = 0;
};

}  // namespace reqshield

#endif  // REQSHIELD_SAT_SOLVER_H_
