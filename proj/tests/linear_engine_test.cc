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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracle/oracle.h"
#include "reqshield/error.h"
#include "test_support.h"

namespace reqshield {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using ::testing::Pair;

constexpr char kHemoglobin[] = "y_0 - y_1 >= 0\ny_2 - y_3 >= 0\n";

EliminationPlan PlanOf(std::string_view text, uint32_t n,
                       const ShieldOptions& options = {}) {
  return EliminationPlan::Compile(Normalize(ParseRequirements(text, n)),
                                  options);
}

ErrorKind CompileError(std::string_view text, uint32_t n,
                       const ShieldOptions& options = {}) {
  try {
    PlanOf(text, n, options);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "compiled: " << text;
  return ErrorKind::kIo;
}

TEST(LinearCompileTest, HemoglobinSteps) {
  const EliminationPlan plan = PlanOf(kHemoglobin, 4);
  EXPECT_THAT(plan.ordering(), ElementsAre(0, 1, 2, 3));
  ASSERT_EQ(plan.steps().size(), 4);
  EXPECT_THAT(plan.steps()[1].upper, ElementsAre(0));
  EXPECT_THAT(plan.steps()[1].lower, IsEmpty());
  EXPECT_THAT(plan.steps()[3].upper, ElementsAre(1));
  EXPECT_THAT(plan.steps()[0].upper, IsEmpty());
  EXPECT_THAT(plan.steps()[2].lower, IsEmpty());
  const BoundRow& row = plan.rows()[0];
  EXPECT_EQ(row.variable, 1);
  EXPECT_FALSE(row.is_lower);
  EXPECT_THAT(row.others, ElementsAre(Pair(0, 1.0)));
  EXPECT_EQ(row.bound, 0.0);
  EXPECT_EQ(plan.derived_count(), 0);
  EXPECT_EQ(plan.num_derived_kept(), 0);
}

TEST(LinearCompileTest, DerivesBoundForEarlierVariable) {
  const EliminationPlan plan = PlanOf("y_0 + y_1 >= 2\ny_1 <= 1\n", 2);
  EXPECT_THAT(plan.steps()[1].lower, ElementsAre(0));
  EXPECT_THAT(plan.steps()[1].upper, ElementsAre(1));
  ASSERT_EQ(plan.num_derived_kept(), 1);
  const auto derived = plan.DerivedInequalities();
  ASSERT_EQ(derived.size(), 1);
  EXPECT_THAT(derived[0].coefficients, ElementsAre(Pair(0, 1.0)));
  EXPECT_EQ(derived[0].bound, 1.0);
  ASSERT_EQ(plan.steps()[0].lower.size(), 1);
  EXPECT_EQ(plan.rows()[plan.steps()[0].lower[0]].original, -1);
}

TEST(LinearCompileTest, EmptyPolyhedronIsInfeasible) {
  EXPECT_EQ(CompileError("y_0 >= 1\ny_0 <= 0\n", 1), ErrorKind::kInfeasible);
  EXPECT_EQ(CompileError("y_0 + y_1 >= 3\ny_0 <= 1\ny_1 <= 1\n", 2),
            ErrorKind::kInfeasible);
  EXPECT_EQ(CompileError("y_0 > 0\ny_0 < 0\n", 1), ErrorKind::kInfeasible);
}

TEST(LinearCompileTest, OrderingOverride) {
  ShieldOptions options;
  options.ordering = std::vector<VariableIndex>{1, 0, 3, 2};
  const EliminationPlan plan = PlanOf(kHemoglobin, 4, options);
  EXPECT_THAT(plan.steps()[1].lower, ElementsAre(0));  // y_0 >= y_1
  EXPECT_EQ(plan.steps()[1].variable, 0);
  const auto out = plan.Apply(std::vector<double>{10, 12, 38, 37});
  EXPECT_THAT(out.values, ElementsAre(12, 12, 38, 37));
}

TEST(LinearCompileTest, InvalidOptions) {
  ShieldOptions options;
  options.ordering = std::vector<VariableIndex>{0, 0, 1, 2};
  EXPECT_EQ(CompileError(kHemoglobin, 4, options), ErrorKind::kInvalidOrdering);
  options.ordering = std::vector<VariableIndex>{0, 1, 2};
  EXPECT_EQ(CompileError(kHemoglobin, 4, options), ErrorKind::kInvalidOrdering);
  ShieldOptions epsilon;
  epsilon.strict_epsilon = 0.0;
  EXPECT_EQ(CompileError(kHemoglobin, 4, epsilon), ErrorKind::kInvalidOptions);
}

TEST(LinearCompileTest, ComplexityCap) {
  // Every pair of the 2 * 6 bounds on y_6 produces a product.
  std::string text;
  for (int i = 0; i < 6; ++i) {
    text += "y_6 - y_" + std::to_string(i) + " >= " + std::to_string(-i) + "\n";
    text +=
        "y_6 + y_" + std::to_string(i) + " <= " + std::to_string(20 + i) + "\n";
  }
  ShieldOptions options;
  options.derived_cap = 10;
  EXPECT_EQ(CompileError(text, 7, options), ErrorKind::kComplexityExceeded);
  options.derived_cap = 100;
  EXPECT_EQ(PlanOf(text, 7, options).derived_count(), 36);
}

TEST(LinearCompileTest, StrictInequalityTightened) {
  ShieldOptions options;
  options.strict_epsilon = 0.25;
  const EliminationPlan plan = PlanOf("y_0 > 1\n", 1, options);
  ASSERT_EQ(plan.originals().size(), 1);
  EXPECT_EQ(plan.originals()[0].bound, 1.25);
  EXPECT_FALSE(plan.originals()[0].strict);
  EXPECT_THAT(plan.Apply(std::vector<double>{0.0}).values, ElementsAre(1.25));
}

TEST(LinearApplyTest, HemoglobinClamp) {
  const EliminationPlan plan = PlanOf(kHemoglobin, 4);
  const auto out = plan.Apply(std::vector<double>{10, 12, 38, 37});
  EXPECT_THAT(out.values, ElementsAre(10, 10, 38, 37));
  EXPECT_EQ(out.branches[1], ClampBranch::kUpper);
  EXPECT_EQ(out.active_rows[1], 0);
  EXPECT_EQ(out.branches[0], ClampBranch::kPassThrough);
}

TEST(LinearApplyTest, HemoglobinCompliantIsIdentity) {
  const EliminationPlan plan = PlanOf(kHemoglobin, 4);
  EXPECT_THAT(plan.Apply(std::vector<double>{12, 10, 38, 37}).values,
              ElementsAre(12, 10, 38, 37));
}

TEST(LinearApplyTest, DerivedBoundKeepsIntervalNonEmpty) {
  const EliminationPlan plan = PlanOf("y_0 + y_1 >= 2\ny_1 <= 1\n", 2);
  EXPECT_THAT(plan.Apply(std::vector<double>{0.5, 0.2}).values,
              ElementsAre(1.0, 1.0));
}

TEST(LinearApplyTest, EqualityPins) {
  const EliminationPlan plan = PlanOf("y_0 + y_1 = 3\n", 2);
  EXPECT_THAT(plan.Apply(std::vector<double>{5.0, 7.0}).values,
              ElementsAre(5.0, -2.0));
}

TEST(LinearApplyTest, TrailingUnconstrainedVariablesPassThrough) {
  const EliminationPlan plan = PlanOf("y_0 >= 1\n", 3);
  EXPECT_THAT(plan.Apply(std::vector<double>{0.0, -4.0, 9.0}).values,
              ElementsAre(1.0, -4.0, 9.0));
}

TEST(LinearApplyTest, RejectsBadInput) {
  const EliminationPlan plan = PlanOf(kHemoglobin, 4);
  EXPECT_THROW(plan.Apply(std::vector<double>{1, 2, 3}), Error);
  EXPECT_THROW(plan.Apply(std::vector<double>{
                   1, 2, 3, std::numeric_limits<double>::infinity()}),
               Error);
}

// Interval [L, U] for step `step`, evaluated from the plan's rows at `y`.
std::pair<double, double> Interval(const EliminationPlan& plan, size_t step,
                                   const std::vector<double>& y) {
  double low = -std::numeric_limits<double>::infinity();
  double high = std::numeric_limits<double>::infinity();
  auto others = [&](const BoundRow& row) {
    double sum = 0.0;
    for (const auto& [v, c] : row.others) sum += c * y[v];
    return sum;
  };
  for (const int id : plan.steps()[step].lower) {
    const BoundRow& row = plan.rows()[id];
    low = std::max(low, row.bound - others(row));
  }
  for (const int id : plan.steps()[step].upper) {
    const BoundRow& row = plan.rows()[id];
    high = std::min(high, others(row) - row.bound);
  }
  return {low, high};
}

class LinearFuzzTest : public ::testing::Test {
 protected:
  template <typename Body>
  void ForEachCase(uint64_t seed, int cases, int inputs, Body body) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> nvars(1, 8);
    std::uniform_int_distribution<uint32_t> nrows(1, 15);
    for (int c = 0; c < cases; ++c) {
      const uint32_t n = nvars(rng);
      const testing::LinearCase lin =
          testing::RandomFeasibleLinear(rng, n, nrows(rng));
      const RequirementSet rs = Normalize(ParseRequirements(lin.text, n));
      const EliminationPlan plan = EliminationPlan::Compile(rs);
      for (int i = 0; i < inputs; ++i) {
        body(rs, plan, testing::RandomLinearInput(rng, n), lin);
      }
    }
  }
};

TEST_F(LinearFuzzTest, EveryInequalityHolds) {
  ForEachCase(41, 150, 20,
              [](const RequirementSet& rs, const EliminationPlan& plan,
                 const std::vector<double>& y, const testing::LinearCase&) {
                const auto out = plan.Apply(y);
                for (const auto& inequality : rs.inequalities) {
                  for (const auto& form : inequality.CanonicalForms()) {
                    const double slack = testing::Slack(form, out.values);
                    EXPECT_GE(slack, -1e-9) << rs.source;
                    if (form.strict) {
                      EXPECT_GT(slack, 0.0) << rs.source;
                    }
                  }
                }
              });
}

TEST_F(LinearFuzzTest, IdentityOnFeasibleAndIdempotent) {
  ForEachCase(42, 150, 20,
              [](const RequirementSet&, const EliminationPlan& plan,
                 const std::vector<double>& y, const testing::LinearCase& lin) {
                const auto once = plan.Apply(y);
                EXPECT_EQ(plan.Apply(once.values).values, once.values);
                if (plan.Satisfies(y)) {
                  EXPECT_EQ(once.values, y);
                }
                EXPECT_EQ(plan.Apply(lin.witness).values, lin.witness);
              });
}

TEST_F(LinearFuzzTest, IntervalsNeverEmpty) {
  ForEachCase(43, 150, 20,
              [](const RequirementSet&, const EliminationPlan& plan,
                 const std::vector<double>& y, const testing::LinearCase&) {
                const auto out = plan.Apply(y);
                for (size_t step = 0; step < plan.steps().size(); ++step) {
                  const auto [low, high] = Interval(plan, step, out.values);
                  EXPECT_LE(low, high + 1e-12);
                  const VariableIndex v = plan.steps()[step].variable;
                  EXPECT_GE(out.values[v], low - 1e-9);
                  EXPECT_LE(out.values[v], high + 1e-9);
                }
              });
}

TEST_F(LinearFuzzTest, DerivedInequalitiesAreImplied) {
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<uint32_t> nvars(1, 6);
  std::uniform_int_distribution<uint32_t> nrows(1, 10);
  int checked = 0;
  for (int c = 0; c < 150; ++c) {
    const uint32_t n = nvars(rng);
    const testing::LinearCase lin =
        testing::RandomFeasibleLinear(rng, n, nrows(rng));
    const EliminationPlan plan =
        EliminationPlan::Compile(Normalize(ParseRequirements(lin.text, n)));
    const auto derived = plan.DerivedInequalities();
    if (derived.empty()) continue;
    std::vector<std::vector<double>> extra = {lin.witness};
    for (int i = 0; i < 20; ++i) {
      extra.push_back(plan.Apply(testing::RandomLinearInput(rng, n)).values);
    }
    const auto report = oracle::ImpliedConstraintSampler(
        testing::ToDense(plan.originals(), n), testing::ToDense(derived, n),
        5000, 1000 + c, extra);
    EXPECT_NE(report.status, oracle::SamplerStatus::kCounterexample)
        << lin.text;
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST_F(LinearFuzzTest, MonotoneInEachCoordinate) {
  ForEachCase(45, 100, 10,
              [](const RequirementSet&, const EliminationPlan& plan,
                 const std::vector<double>& y, const testing::LinearCase&) {
                for (size_t k = 0; k < y.size(); ++k) {
                  std::vector<double> lower = y;
                  std::vector<double> upper = y;
                  lower[k] -= 0.75;
                  upper[k] += 0.75;
                  const double a = plan.Apply(lower).values[k];
                  const double b = plan.Apply(y).values[k];
                  const double c = plan.Apply(upper).values[k];
                  EXPECT_LE(a, b);
                  EXPECT_LE(b, c);
                }
              });
}

}  // namespace
}  // namespace reqshield
