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

#include "reqshield/requirements.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <system_error>

#include "reqshield/error.h"

namespace reqshield {
namespace {

enum class TokenKind {
  kNot,
  kOr,
  kVariable,
  kNumber,
  kGreaterEqual,
  kGreater,
  kLessEqual,
  kLess,
  kEqual,
  kPlus,
  kMinus,
  kStar,
  kEnd,
};

struct Token {
  TokenKind kind;
  int column;  // 1-based
  VariableIndex variable = 0;
  double number = 0.0;
};

bool IsRelation(TokenKind kind) {
  return kind == TokenKind::kGreaterEqual || kind == TokenKind::kGreater ||
         kind == TokenKind::kLessEqual || kind == TokenKind::kLess ||
         kind == TokenKind::kEqual;
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsWordChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || IsDigit(c) ||
         c == '_';
}

[[noreturn]] void SyntaxError(int line, int column, const std::string& what) {
  throw Error(ErrorKind::kSyntax,
              "line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + what,
              line, column);
}

std::vector<Token> Lex(std::string_view text, int line) {
  std::vector<Token> tokens;
  size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    const int column = static_cast<int>(pos) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++pos;
      continue;
    }
    if (IsDigit(c)) {
      size_t end = pos;
      while (end < text.size() && IsDigit(text[end])) ++end;
      if (end < text.size() && text[end] == '.') {
        ++end;
        if (end >= text.size() || !IsDigit(text[end])) {
          SyntaxError(line, static_cast<int>(end) + 1,
                      "expected digit after decimal point");
        }
        while (end < text.size() && IsDigit(text[end])) ++end;
      }
      if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
        size_t exp = end + 1;
        if (exp < text.size() && (text[exp] == '+' || text[exp] == '-')) ++exp;
        if (exp < text.size() && IsDigit(text[exp])) {
          while (exp < text.size() && IsDigit(text[exp])) ++exp;
          end = exp;
        }
      }
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(text.data() + pos, text.data() + end, value);
      if (ec != std::errc() || ptr != text.data() + end ||
          !std::isfinite(value)) {
        SyntaxError(line, column, "numeral out of range");
      }
      tokens.push_back({TokenKind::kNumber, column, 0, value});
      pos = end;
      continue;
    }
    if (IsWordChar(c)) {
      size_t end = pos;
      while (end < text.size() && IsWordChar(text[end])) ++end;
      const std::string_view word = text.substr(pos, end - pos);
      if (word == "not") {
        tokens.push_back({TokenKind::kNot, column});
      } else if (word == "or") {
        tokens.push_back({TokenKind::kOr, column});
      } else if (word.size() > 2 && word[0] == 'y' && word[1] == '_' &&
                 std::all_of(word.begin() + 2, word.end(), IsDigit)) {
        VariableIndex index = 0;
        const auto [ptr, ec] =
            std::from_chars(word.data() + 2, word.data() + word.size(), index);
        if (ec != std::errc()) {
          SyntaxError(line, column, "variable index out of range");
        }
        tokens.push_back({TokenKind::kVariable, column, index});
      } else {
        SyntaxError(
            line, column,
            "expected 'not', 'or', a variable y_<k> or a numeral, got '" +
                std::string(word) + "'");
      }
      pos = end;
      continue;
    }
    const char next = pos + 1 < text.size() ? text[pos + 1] : '\0';
    switch (c) {
      case '>':
        tokens.push_back(
            {next == '=' ? TokenKind::kGreaterEqual : TokenKind::kGreater,
             column});
        pos += next == '=' ? 2 : 1;
        continue;
      case '<':
        tokens.push_back(
            {next == '=' ? TokenKind::kLessEqual : TokenKind::kLess, column});
        pos += next == '=' ? 2 : 1;
        continue;
      case '=':
        tokens.push_back({TokenKind::kEqual, column});
        ++pos;
        continue;
      case '+':
        tokens.push_back({TokenKind::kPlus, column});
        ++pos;
        continue;
      case '-':
        tokens.push_back({TokenKind::kMinus, column});
        ++pos;
        continue;
      case '*':
        tokens.push_back({TokenKind::kStar, column});
        ++pos;
        continue;
      default:
        SyntaxError(line, column,
                    std::string("unexpected character '") + c + "'");
    }
  }
  tokens.push_back({TokenKind::kEnd, static_cast<int>(text.size()) + 1});
  return tokens;
}

bool IsSign(TokenKind kind) {
  return kind == TokenKind::kPlus || kind == TokenKind::kMinus;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line)
      : tokens_(std::move(tokens)), line_(line) {}

  Clause ParseClause() {
    Clause clause;
    clause.source_line = line_;
    while (true) {
      Literal literal;
      if (Peek().kind == TokenKind::kNot) {
        literal.polarity = Polarity::kNegative;
        Advance();
      }
      literal.variable =
          Expect(TokenKind::kVariable, "expected variable y_<k>").variable;
      clause.literals.push_back(literal);
      if (Peek().kind == TokenKind::kEnd) break;
      Expect(TokenKind::kOr, "expected 'or' or end of line");
    }
    return clause;
  }

  LinearInequality ParseInequality() {
    LinearInequality inequality;
    inequality.source_line = line_;
    double constant = 0.0;
    bool first = true;
    if (IsRelation(Peek().kind)) {
      SyntaxError(line_, Peek().column, "expected left-hand side");
    }
    while (!IsRelation(Peek().kind)) {
      double sign = 1.0;
      if (Peek().kind == TokenKind::kPlus || Peek().kind == TokenKind::kMinus) {
        sign = Advance().kind == TokenKind::kMinus ? -1.0 : 1.0;
        if (!first && IsSign(Peek().kind) &&
            tokens_[next_ + 1].kind == TokenKind::kNumber) {
          sign *= Advance().kind == TokenKind::kMinus ? -1.0 : 1.0;
        }
      } else if (!first) {
        SyntaxError(line_, Peek().column,
                    "expected '+', '-' or relational operator");
      }
      first = false;
      if (Peek().kind == TokenKind::kVariable) {
        inequality.terms[Advance().variable] += sign;
        continue;
      }
      const double coefficient =
          sign *
          Expect(TokenKind::kNumber, "expected variable or numeral").number;
      if (Peek().kind == TokenKind::kStar) {
        Advance();
        inequality
            .terms[Expect(TokenKind::kVariable, "expected variable after '*'")
                       .variable] += coefficient;
      } else if (Peek().kind == TokenKind::kVariable) {
        inequality.terms[Advance().variable] += coefficient;
      } else {
        constant += coefficient;
      }
    }
    switch (Advance().kind) {
      case TokenKind::kGreaterEqual:
        inequality.relation = Relation::kGreaterEqual;
        break;
      case TokenKind::kGreater:
        inequality.relation = Relation::kGreater;
        break;
      case TokenKind::kLessEqual:
        inequality.relation = Relation::kLessEqual;
        break;
      case TokenKind::kLess:
        inequality.relation = Relation::kLess;
        break;
      default:
        inequality.relation = Relation::kEqual;
        break;
    }
    double sign = 1.0;
    if (Peek().kind == TokenKind::kPlus || Peek().kind == TokenKind::kMinus) {
      sign = Advance().kind == TokenKind::kMinus ? -1.0 : 1.0;
    }
    inequality.rhs =
        sign * Expect(TokenKind::kNumber, "expected constant right-hand side")
                   .number -
        constant;
    Expect(TokenKind::kEnd, "expected end of line");
    return inequality;
  }

 private:
  const Token& Peek() const { return tokens_[next_]; }
  const Token& Advance() { return tokens_[next_++]; }
  const Token& Expect(TokenKind kind, const char* what) {
    if (Peek().kind != kind) SyntaxError(line_, Peek().column, what);
    return Advance();
  }

  std::vector<Token> tokens_;
  size_t next_ = 0;
  int line_;
};

struct ParsedLine {
  int line = 0;
  bool linear = false;
  std::optional<Error> error;
};

void CheckRange(VariableIndex variable, uint32_t num_variables, int line) {
  if (variable >= num_variables) {
    throw Error(ErrorKind::kVariableOutOfRange,
                "line " + std::to_string(line) + ": y_" +
                    std::to_string(variable) + " but only " +
                    std::to_string(num_variables) + " variables",
                line, 0, variable);
  }
}

bool Holds(double lhs, const CanonicalInequality& c) {
  return c.strict ? lhs > c.bound : lhs >= c.bound;
}

}  // namespace

std::string_view RelationSymbol(Relation relation) {
  switch (relation) {
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kGreater:
      return ">";
    case Relation::kLessEqual:
      return "<=";
    case Relation::kLess:
      return "<";
    case Relation::kEqual:
      return "=";
  }
  return "?";
}

std::string_view DialectName(Dialect dialect) {
  switch (dialect) {
    case Dialect::kEmpty:
      return "empty";
    case Dialect::kCnf:
      return "cnf";
    case Dialect::kLinear:
      return "linear";
  }
  return "?";
}

std::vector<CanonicalInequality> LinearInequality::CanonicalForms() const {
  CanonicalInequality forward;
  for (const auto& [variable, coefficient] : terms) {
    forward.coefficients.emplace_back(variable, coefficient);
  }
  forward.bound = rhs;
  CanonicalInequality flipped = forward;
  for (auto& [variable, coefficient] : flipped.coefficients) {
    coefficient = -coefficient;
  }
  flipped.bound = -rhs + 0.0;  // no negative zero
  switch (relation) {
    case Relation::kGreaterEqual:
      return {forward};
    case Relation::kGreater:
      forward.strict = true;
      return {forward};
    case Relation::kLessEqual:
      return {flipped};
    case Relation::kLess:
      flipped.strict = true;
      return {flipped};
    case Relation::kEqual:
      return {forward, flipped};
  }
  return {};
}

RequirementSet ParseRequirements(std::string_view text,
                                 std::optional<uint32_t> num_variables) {
  RequirementSet result;
  result.source = std::string(text);

  std::vector<ParsedLine> lines;
  int line_number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_number;
    start = end + 1;

    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    ParsedLine parsed;
    parsed.line = line_number;
    try {
      std::vector<Token> tokens = Lex(line, line_number);
      parsed.linear =
          std::any_of(tokens.begin(), tokens.end(),
                      [](const Token& t) { return IsRelation(t.kind); });
      LineParser parser(std::move(tokens), line_number);
      if (parsed.linear) {
        result.inequalities.push_back(parser.ParseInequality());
      } else {
        result.clauses.push_back(parser.ParseClause());
      }
    } catch (const Error& e) {
      parsed.error = e;
    }
    lines.push_back(std::move(parsed));
    if (end == text.size()) break;
  }

  for (const ParsedLine& parsed : lines) {
    if (parsed.error) throw *parsed.error;
  }
  if (!result.clauses.empty() && !result.inequalities.empty()) {
    // Report the first line that disagrees with the dialect of the first
    // requirement line.
    const bool first_linear = lines.front().linear;
    for (const ParsedLine& parsed : lines) {
      if (parsed.linear != first_linear) {
        throw Error(ErrorKind::kMixedDialect,
                    "line " + std::to_string(parsed.line) + " is a " +
                        (parsed.linear ? "linear inequality" : "clause") +
                        " but line " + std::to_string(lines.front().line) +
                        " is a " +
                        (first_linear ? "linear inequality" : "clause"),
                    parsed.line);
      }
    }
  }

  result.dialect = !result.clauses.empty()        ? Dialect::kCnf
                   : !result.inequalities.empty() ? Dialect::kLinear
                                                  : Dialect::kEmpty;

  uint32_t inferred = 0;
  for (const Clause& clause : result.clauses) {
    for (const Literal& literal : clause.literals) {
      inferred = std::max(inferred, literal.variable + 1);
    }
  }
  for (const LinearInequality& inequality : result.inequalities) {
    for (const auto& [variable, coefficient] : inequality.terms) {
      inferred = std::max(inferred, variable + 1);
    }
  }
  if (!num_variables) {
    result.num_variables = inferred;
    return result;
  }
  result.num_variables = *num_variables;
  for (const Clause& clause : result.clauses) {
    for (const Literal& literal : clause.literals) {
      CheckRange(literal.variable, result.num_variables, clause.source_line);
    }
  }
  for (const LinearInequality& inequality : result.inequalities) {
    for (const auto& [variable, coefficient] : inequality.terms) {
      CheckRange(variable, result.num_variables, inequality.source_line);
    }
  }
  return result;
}

RequirementSet Normalize(const RequirementSet& requirements) {
  RequirementSet result = requirements;
  result.clauses.clear();
  result.inequalities.clear();

  if (requirements.dialect == Dialect::kCnf) {
    std::set<std::vector<Literal>> seen;
    for (const Clause& clause : requirements.clauses) {
      Clause normalized = clause;
      std::sort(normalized.literals.begin(), normalized.literals.end());
      normalized.literals.erase(
          std::unique(normalized.literals.begin(), normalized.literals.end()),
          normalized.literals.end());
      bool tautology = false;
      for (size_t i = 1; i < normalized.literals.size(); ++i) {
        tautology |= normalized.literals[i].variable ==
                     normalized.literals[i - 1].variable;
      }
      if (tautology) {
        result.warnings.push_back("line " + std::to_string(clause.source_line) +
                                  ": tautology dropped");
        continue;
      }
      if (!seen.insert(normalized.literals).second) {
        result.warnings.push_back("line " + std::to_string(clause.source_line) +
                                  ": duplicate clause dropped");
        continue;
      }
      result.clauses.push_back(std::move(normalized));
    }
  } else if (requirements.dialect == Dialect::kLinear) {
    std::set<
        std::tuple<std::vector<std::pair<VariableIndex, double>>, double, bool>>
        seen;
    for (const LinearInequality& inequality : requirements.inequalities) {
      for (CanonicalInequality canonical : inequality.CanonicalForms()) {
        std::erase_if(canonical.coefficients,
                      [](const auto& term) { return term.second == 0.0; });
        if (canonical.coefficients.empty()) {
          if (!Holds(0.0, canonical)) {
            throw Error(ErrorKind::kDegenerateConstraint,
                        "line " + std::to_string(inequality.source_line) +
                            ": variable-free requirement can never hold",
                        inequality.source_line);
          }
          result.warnings.push_back("line " +
                                    std::to_string(inequality.source_line) +
                                    ": variable-free requirement dropped");
          continue;
        }
        if (!seen.insert({canonical.coefficients, canonical.bound,
                          canonical.strict})
                 .second) {
          result.warnings.push_back("line " +
                                    std::to_string(inequality.source_line) +
                                    ": duplicate inequality dropped");
          continue;
        }
        LinearInequality normalized;
        normalized.terms.insert(canonical.coefficients.begin(),
                                canonical.coefficients.end());
        normalized.relation =
            canonical.strict ? Relation::kGreater : Relation::kGreaterEqual;
        normalized.rhs = canonical.bound;
        normalized.source_line = inequality.source_line;
        result.inequalities.push_back(std::move(normalized));
      }
    }
  }
  return result;
}

std::string FormatNumber(double value) {
  if (value == 0.0) value = 0.0;
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string RenderClause(const Clause& clause) {
  std::string out;
  for (const Literal& literal : clause.literals) {
    if (!out.empty()) out += " or ";
    if (!literal.positive()) out += "not ";
    out += "y_" + std::to_string(literal.variable);
  }
  return out;
}

std::string RenderInequality(const LinearInequality& inequality) {
  std::string out;
  for (const auto& [variable, coefficient] : inequality.terms) {
    const double magnitude = std::abs(coefficient);
    if (out.empty()) {
      if (coefficient < 0) out += "-";
    } else {
      out += coefficient < 0 ? " - " : " + ";
    }
    if (magnitude != 1.0) out += FormatNumber(magnitude) + "*";
    out += "y_" + std::to_string(variable);
  }
  if (out.empty()) out = "0";
  out += " ";
  out += RelationSymbol(inequality.relation);
  out += " " + FormatNumber(inequality.rhs);
  return out;
}

std::string RenderRequirements(const RequirementSet& requirements) {
  std::string out;
  for (const Clause& clause : requirements.clauses) {
    out += RenderClause(clause) + "\n";
  }
  for (const LinearInequality& inequality : requirements.inequalities) {
    out += RenderInequality(inequality) + "\n";
  }
  return out;
}

}  // namespace reqshield
