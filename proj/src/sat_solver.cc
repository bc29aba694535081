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

#include "reqshield/sat_solver.h"

#include <cassert>
#include <utility>

namespace reqshield {

DpllSolver::DpllSolver(uint32_t num_variables, std::span<const Clause> clauses)
    : num_variables_(num_variables),
      watches_(2 * static_cast<size_t>(num_variables)),
      values_(num_variables, -1) {
  std::vector<Lit> units;
  for (const Clause& clause : clauses) {
    if (clause.literals.empty()) {
      root_conflict_ = true;
      continue;
    }
    if (clause.literals.size() == 1) {
      units.push_back(Encode(clause.literals.front()));
      continue;
    }
    const uint32_t index = static_cast<uint32_t>(clause_start_.size());
    clause_start_.push_back(static_cast<uint32_t>(literals_.size()));
    for (const Literal& literal : clause.literals) {
      literals_.push_back(Encode(literal));
    }
    watches_[literals_[clause_start_.back()]].push_back(index);
    watches_[literals_[clause_start_.back() + 1]].push_back(index);
  }
  clause_start_.push_back(static_cast<uint32_t>(literals_.size()));

  for (const Lit unit : units) {
    const int value = LitValue(unit);
    if (value == 0) root_conflict_ = true;
    if (value == -1) Enqueue(unit);
  }
  if (!root_conflict_ && !Propagate()) root_conflict_ = true;
}

void DpllSolver::Enqueue(Lit lit) {
  values_[lit >> 1] = (lit & 1) ? 0 : 1;
  trail_.push_back(lit);
}

bool DpllSolver::Propagate() {
  while (propagated_ < trail_.size()) {
    const Lit false_lit = trail_[propagated_++] ^ 1;
    std::vector<uint32_t>& watchers = watches_[false_lit];
    size_t kept = 0;
    size_t i = 0;
    while (i < watchers.size()) {
      const uint32_t clause = watchers[i++];
      Lit* lits = &literals_[clause_start_[clause]];
      const uint32_t size = clause_start_[clause + 1] - clause_start_[clause];
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      if (LitValue(lits[0]) == 1) {
        watchers[kept++] = clause;
        continue;
      }
      bool moved = false;
      for (uint32_t k = 2; k < size; ++k) {
        if (LitValue(lits[k]) != 0) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1]].push_back(clause);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      watchers[kept++] = clause;
      if (LitValue(lits[0]) == 0) {
        while (i < watchers.size()) watchers[kept++] = watchers[i++];
        watchers.resize(kept);
        propagated_ = trail_.size();
        return false;
      }
      Enqueue(lits[0]);
    }
    watchers.resize(kept);
  }
  return true;
}

void DpllSolver::Backtrack(size_t level) {
  if (level >= level_start_.size()) return;
  const size_t keep = level_start_[level];
  for (size_t i = keep; i < trail_.size(); ++i) values_[trail_[i] >> 1] = -1;
  trail_.resize(keep);
  level_start_.resize(level);
  propagated_ = keep;
}

bool DpllSolver::AssignAtRoot(Literal literal) {
  assert(level_start_.empty());
  if (root_conflict_) return false;
  const Lit lit = Encode(literal);
  const int value = LitValue(lit);
  if (value == 1) return true;
  if (value == 0) {
    root_conflict_ = true;
    return false;
  }
  Enqueue(lit);
  if (!Propagate()) root_conflict_ = true;
  return !root_conflict_;
}

std::optional<bool> DpllSolver::RootValue(VariableIndex variable) const {
  assert(level_start_.empty());
  if (values_[variable] < 0) return std::nullopt;
  return values_[variable] == 1;
}

std::optional<std::vector<bool>> DpllSolver::Solve(
    const std::vector<bool>& phase, std::optional<Literal> assumption) {
  if (root_conflict_) return std::nullopt;
  if (assumption) {
    const Lit lit = Encode(*assumption);
    if (LitValue(lit) == 0) return std::nullopt;
    level_start_.push_back(trail_.size());
    if (LitValue(lit) == -1) Enqueue(lit);
    if (!Propagate()) {
      ++num_conflicts_;
      Backtrack(0);
      return std::nullopt;
    }
  }
  // Whether the decision at each level has already been flipped.
  std::vector<bool> flipped;
  std::vector<Lit> decided;
  uint32_t next_candidate = 0;
  while (true) {
    while (next_candidate < num_variables_ && values_[next_candidate] >= 0) {
      ++next_candidate;
    }
    if (next_candidate == num_variables_) {
      std::vector<bool> model(num_variables_);
      for (uint32_t v = 0; v < num_variables_; ++v) model[v] = values_[v] == 1;
      Backtrack(0);
      return model;
    }
    ++num_decisions_;
    const bool value = next_candidate < phase.size() && phase[next_candidate];
    const Lit decision = 2 * next_candidate + (value ? 0 : 1);
    level_start_.push_back(trail_.size());
    decided.push_back(decision);
    flipped.push_back(false);
    Enqueue(decision);
    while (!Propagate()) {
      ++num_conflicts_;
      while (!flipped.empty() && flipped.back()) {
        flipped.pop_back();
        decided.pop_back();
        Backtrack(level_start_.size() - 1);
      }
      if (flipped.empty()) {
        Backtrack(0);
        return std::nullopt;
      }
      Backtrack(level_start_.size() - 1);
      level_start_.push_back(trail_.size());
      flipped.back() = true;
      decided.back() ^= 1;
      Enqueue(decided.back());
    }
    // Backtracking may have unassigned variables below the cursor.
    next_candidate = 0;
  }
}

}  // namespace reqshield
