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

// Requirement files: one requirement per line, either a propositional clause
//
//   not y_0 or y_1 or y_2
//
// or a linear inequality with a constant right-hand side
//
//   y_0 - 2.5*y_1 >= -1
//
// A file must use a single dialect. Blank lines and lines whose first
// non-blank character is '#' are ignored. Keywords are case-sensitive.

#ifndef REQSHIELD_REQUIREMENTS_H_
#define REQSHIELD_REQUIREMENTS_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace reqshield {

using VariableIndex = uint32_t;

enum class Polarity : uint8_t { kPositive, kNegative };

struct Literal {
  VariableIndex variable = 0;
  Polarity polarity = Polarity::kPositive;

  bool positive() const { return polarity == Polarity::kPositive; }
  Literal Negated() const {
    return {variable, positive() ? Polarity::kNegative : Polarity::kPositive};
  }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> literals;
  int source_line = 0;
};

enum class Relation : uint8_t {
  kGreaterEqual,
  kGreater,
  kLessEqual,
  kLess,
  kEqual,
};

std::string_view RelationSymbol(Relation relation);

// sum(coefficients[i].second * y[coefficients[i].first]) >= bound, or > bound
// when strict. Coefficients are sorted by variable index.
struct CanonicalInequality {
  std::vector<std::pair<VariableIndex, double>> coefficients;
  double bound = 0.0;
  bool strict = false;

  friend bool operator==(const CanonicalInequality&,
                         const CanonicalInequality&) = default;
};

struct LinearInequality {
  std::map<VariableIndex, double> terms;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
  int source_line = 0;

  // One canonical inequality, or two for an equality.
  std::vector<CanonicalInequality> CanonicalForms() const;
};

enum class Dialect : uint8_t { kEmpty, kCnf, kLinear };

std::string_view DialectName(Dialect dialect);

struct RequirementSet {
  Dialect dialect = Dialect::kEmpty;
  std::vector<Clause> clauses;
  std::vector<LinearInequality> inequalities;
  uint32_t num_variables = 0;
  std::string source;
  std::vector<std::string> warnings;

  size_t size() const {
    return dialect == Dialect::kCnf ? clauses.size() : inequalities.size();
  }
};

// Parses a requirement file. Every variable index must be below
// `num_variables`; without it, the count is one past the largest index used.
//
// Errors (all with 1-based line/column): kSyntax, kMixedDialect,
// kVariableOutOfRange. When several lines are wrong, syntax errors are
// reported before dialect mixing, which is reported before range errors.
RequirementSet ParseRequirements(std::string_view text,
                                 std::optional<uint32_t> num_variables);

// Canonicalizes a parsed set. Clauses get sorted, duplicate-free literal
// lists; tautologies and repeated clauses are dropped. Inequalities are
// rewritten as sum(a_i * y_i) >= b (or > b), equalities split in two, zero
// coefficients dropped and exact repeats removed. Idempotent.
//
// Throws kDegenerateConstraint for a variable-free inequality that can never
// hold; variable-free inequalities that always hold are dropped with a
// warning.
RequirementSet Normalize(const RequirementSet& requirements);

std::string RenderClause(const Clause& clause);
std::string RenderInequality(const LinearInequality& inequality);
// One requirement per line, parseable by ParseRequirements.
std::string RenderRequirements(const RequirementSet& requirements);

// Shortest decimal text that parses back to the same double.
std::string FormatNumber(double value);

}  // namespace reqshield

#endif  // REQSHIELD_REQUIREMENTS_H_
