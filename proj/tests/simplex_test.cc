// Copyright 2026 The milpenv Authors
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

#include "milpenv/simplex.h"

#include <cmath>
#include <cstring>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "test_problems.h"

namespace milpenv {
namespace {

using ::milpenv::testing::RandomBoundedLp;
using ::milpenv::testing::VertexEnumerationLp;

// Dual objective of an OPTIMAL result, assembled from the row duals and the
// reduced costs at the bounds they price. Also checks dual sign feasibility.
double DualObjective(const Problem& p, const LpResult& r,
                     const BoundOverrides& overrides = {}) {
  std::vector<double> lo = p.var_lower;
  std::vector<double> up = p.var_upper;
  for (const BoundOverride& o : overrides) {
    lo[o.var] = o.lower;
    up[o.var] = o.upper;
  }
  double obj = 0.0;
  for (int i = 0; i < p.num_cons(); ++i) {
    const double y = r.duals[i];
    switch (p.constraints[i].relation) {
      case Relation::kLessEqual:
        EXPECT_LE(y, kOptimalityTol);
        break;
      case Relation::kGreaterEqual:
        EXPECT_GE(y, -kOptimalityTol);
        break;
      case Relation::kEqual:
        break;
    }
    obj += y * p.constraints[i].rhs;
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    const double d = r.reduced_costs[j];
    if (d > kOptimalityTol) {
      EXPECT_TRUE(std::isfinite(lo[j]));
      obj += d * lo[j];
    } else if (d < -kOptimalityTol) {
      EXPECT_TRUE(std::isfinite(up[j]));
      obj += d * up[j];
    } else if (std::isfinite(lo[j]) || std::isfinite(up[j])) {
      obj += d * (std::isfinite(lo[j]) ? lo[j] : up[j]);
    }
  }
  return obj;
}

void ExpectPrimalFeasible(const Problem& p, const LpResult& r) {
  for (int j = 0; j < p.num_vars(); ++j) {
    EXPECT_GE(r.primal[j], p.var_lower[j] - kFeasibilityTol);
    EXPECT_LE(r.primal[j], p.var_upper[j] + kFeasibilityTol);
  }
  for (const Constraint& row : p.constraints) {
    double act = 0.0;
    for (const Term& t : row.terms) act += t.coef * r.primal[t.var];
    if (row.relation != Relation::kGreaterEqual) {
      EXPECT_LE(act, row.rhs + 1e-6);
    }
    if (row.relation != Relation::kLessEqual) {
      EXPECT_GE(act, row.rhs - 1e-6);
    }
  }
}

TEST(SimplexTest, SingleVariable) {
  Problem p;
  p.AddVariable(-1.0, 0.0, kInf, false, "x");
  p.AddConstraint({{0, 1.0}}, Relation::kLessEqual, 1.0);
  LpResult r = SolveLp(p);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(r.primal[0], 1.0);
  EXPECT_DOUBLE_EQ(r.objective, -1.0);
}

TEST(SimplexTest, ContradictoryRowsAreInfeasible) {
  EXPECT_EQ(SolveLp(testing::ContradictoryRows()).status,
            LpStatus::kInfeasible);
}

TEST(SimplexTest, InvertedOverrideIsInfeasible) {
  Problem p;
  p.AddVariable(1.0, 0.0, 5.0, false, "x");
  EXPECT_EQ(SolveLp(p, {{0, 2.0, 1.0}}).status, LpStatus::kInfeasible);
}

TEST(SimplexTest, TwoVariablePolytopeMatchesVertexEnumeration) {
  Problem p;
  p.AddVariable(-1.0, 0.0, 1.0, false, "x");
  p.AddVariable(-1.0, 0.0, 1.0, false, "y");
  p.AddConstraint({{0, 1.0}, {1, 1.0}}, Relation::kLessEqual, 1.5);
  LpResult r = SolveLp(p);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  const auto oracle = VertexEnumerationLp(p, p.var_lower, p.var_upper);
  ASSERT_TRUE(oracle.has_value());
  EXPECT_DOUBLE_EQ(*oracle, -1.5);
  EXPECT_NEAR(r.objective, *oracle, 1e-9);
}

TEST(SimplexTest, UnboundedRay) {
  Problem p;
  p.AddVariable(-1.0, 0.0, kInf, false, "x");
  EXPECT_EQ(SolveLp(p).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, UnboundedThroughRows) {
  Problem p;
  p.AddVariable(-1.0, 0.0, kInf, false, "x");
  p.AddVariable(0.0, 0.0, kInf, false, "y");
  p.AddConstraint({{0, 1.0}, {1, -1.0}}, Relation::kLessEqual, 2.0);
  EXPECT_EQ(SolveLp(p).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, FreeVariablesAndEqualities) {
  // min x + 2y  s.t.  x + y = 3,  x - y >= -1,  x, y free.
  Problem p;
  p.AddVariable(1.0, -kInf, kInf, false, "x");
  p.AddVariable(2.0, -kInf, kInf, false, "y");
  p.AddConstraint({{0, 1.0}, {1, 1.0}}, Relation::kEqual, 3.0);
  p.AddConstraint({{0, 1.0}, {1, -1.0}}, Relation::kGreaterEqual, -1.0);
  // Unbounded: x -> +inf, y = 3 - x -> -inf decreases x + 2y = 6 - x.
  EXPECT_EQ(SolveLp(p).status, LpStatus::kUnbounded);
  p.AddConstraint({{0, 1.0}}, Relation::kLessEqual, 10.0);
  LpResult r = SolveLp(p);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.primal[0], 10.0, 1e-9);
  EXPECT_NEAR(r.primal[1], -7.0, 1e-9);
  EXPECT_NEAR(r.objective, -4.0, 1e-9);
}

TEST(SimplexTest, EmptyProblem) {
  Problem p;
  LpResult r = SolveLp(p);
  EXPECT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.objective, 0.0);
  EXPECT_EQ(r.iterations, 0);
}

TEST(SimplexTest, BealeCyclingExampleTerminates) {
  // Classic instance on which Dantzig's rule cycles without anti-cycling.
  Problem p;
  p.AddVariable(-0.75, 0.0, kInf, false);
  p.AddVariable(20.0, 0.0, kInf, false);
  p.AddVariable(-0.5, 0.0, kInf, false);
  p.AddVariable(6.0, 0.0, kInf, false);
  p.AddConstraint({{0, 0.25}, {1, -8.0}, {2, -1.0}, {3, 9.0}},
                  Relation::kLessEqual, 0.0);
  p.AddConstraint({{0, 0.5}, {1, -12.0}, {2, -0.5}, {3, 3.0}},
                  Relation::kLessEqual, 0.0);
  p.AddConstraint({{2, 1.0}}, Relation::kLessEqual, 1.0);
  LpResult r = SolveLp(p);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -1.25, 1e-9);
}

TEST(SimplexTest, IterationLimit) {
  Problem p;
  for (int j = 0; j < 4; ++j) p.AddVariable(-1.0, 0.0, kInf, false);
  p.AddConstraint({{0, 1.0}, {1, 2.0}, {2, 3.0}, {3, 1.0}},
                  Relation::kLessEqual, 4.0);
  p.AddConstraint({{0, 2.0}, {1, 1.0}, {2, 1.0}, {3, 3.0}},
                  Relation::kLessEqual, 5.0);
  LpResult r = SolveLp(p, {}, LpLimits{.max_iterations = 1});
  EXPECT_EQ(r.status, LpStatus::kIterationLimit);
  EXPECT_EQ(r.iterations, 1);
}

TEST(SimplexTest, BasisStatusReportsTightRows) {
  Problem p;
  p.AddVariable(-1.0, 0.0, 1.0, false, "x");
  p.AddVariable(-1.0, 0.0, 1.0, false, "y");
  p.AddConstraint({{0, 1.0}, {1, 1.0}}, Relation::kLessEqual, 1.5);
  p.AddConstraint({{0, 1.0}}, Relation::kGreaterEqual, -3.0);
  LpResult r = SolveLp(p);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.row_status[0], BasisStatus::kAtUpper);
  EXPECT_EQ(r.row_status[1], BasisStatus::kBasic);
  int basic = 0;
  for (BasisStatus s : r.var_status) basic += s == BasisStatus::kBasic;
  for (BasisStatus s : r.row_status) basic += s == BasisStatus::kBasic;
  EXPECT_EQ(basic, p.num_cons());
}

TEST(SimplexPropertyTest, MatchesVertexEnumerationOnRandomLps) {
  std::mt19937_64 rng(20240601);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Problem p = RandomBoundedLp(rng);
    const auto oracle = VertexEnumerationLp(p, p.var_lower, p.var_upper);
    const LpResult r = SolveLp(p);
    if (!oracle) {
      EXPECT_EQ(r.status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(r.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(r.objective, *oracle, 1e-6) << "trial " << trial;
    ExpectPrimalFeasible(p, r);
    // Strong duality at the returned basis.
    EXPECT_NEAR(DualObjective(p, r), r.objective, 1e-6) << "trial " << trial;
  }
  EXPECT_GT(feasible, 50);
}

TEST(SimplexPropertyTest, OverridesMatchVertexEnumeration) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const Problem p = RandomBoundedLp(rng, 5, 5);
    BoundOverrides overrides;
    std::vector<double> lo = p.var_lower, up = p.var_upper;
    const int j = static_cast<int>(rng() % p.num_vars());
    const double mid = std::floor((lo[j] + up[j]) / 2.0);
    overrides.push_back({j, lo[j], mid});
    up[j] = mid;
    const auto oracle = VertexEnumerationLp(p, lo, up);
    const LpResult r = SolveLp(p, overrides);
    if (!oracle) {
      EXPECT_EQ(r.status, LpStatus::kInfeasible);
      continue;
    }
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    EXPECT_NEAR(r.objective, *oracle, 1e-6);
    EXPECT_NEAR(DualObjective(p, r, overrides), r.objective, 1e-6);
  }
}

TEST(SimplexPropertyTest, RepeatedSolvesAreBitwiseIdentical) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Problem p = RandomBoundedLp(rng);
    const LpResult a = SolveLp(p);
    const LpResult b = SolveLp(p);
    ASSERT_EQ(a.status, b.status);
    ASSERT_EQ(a.iterations, b.iterations);
    ASSERT_EQ(a.primal.size(), b.primal.size());
    EXPECT_EQ(std::memcmp(&a.objective, &b.objective, sizeof(double)), 0);
    for (std::size_t k = 0; k < a.primal.size(); ++k) {
      EXPECT_EQ(std::memcmp(&a.primal[k], &b.primal[k], sizeof(double)), 0);
    }
  }
}

TEST(SimplexPropertyTest, WarmStartMatchesVertexEnumeration) {
  std::mt19937_64 rng(31337);
  int warm_feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Problem p = RandomBoundedLp(rng);
    const LpResult parent = SolveLp(p);
    if (parent.status != LpStatus::kOptimal) continue;
    // Tighten one variable around its parent value, as branching does.
    const int j = static_cast<int>(rng() % p.num_vars());
    std::vector<double> lo = p.var_lower, up = p.var_upper;
    const double cut = std::floor(parent.primal[j]);
    BoundOverrides overrides;
    if (rng() % 2 == 0 && cut > lo[j]) {
      overrides.push_back({j, lo[j], cut - 1.0 >= lo[j] ? cut - 1.0 : lo[j]});
    } else {
      overrides.push_back({j, std::min(up[j], cut + 1.0), up[j]});
    }
    lo[j] = overrides.back().lower;
    up[j] = overrides.back().upper;
    const auto oracle = VertexEnumerationLp(p, lo, up);
    const LpResult warm = SolveLp(p, overrides, {}, &parent);
    if (!oracle) {
      EXPECT_EQ(warm.status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++warm_feasible;
    ASSERT_EQ(warm.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(warm.objective, *oracle, 1e-6) << "trial " << trial;
    ExpectPrimalFeasible(p, warm);
    EXPECT_NEAR(DualObjective(p, warm, overrides), warm.objective, 1e-6);
  }
  EXPECT_GT(warm_feasible, 50);
}

TEST(SimplexTest, WarmStartFromOwnOptimumTakesNoPivots) {
  const Problem p = ::milpenv::testing::Knapsack();
  const LpResult cold = SolveLp(p);
  ASSERT_EQ(cold.status, LpStatus::kOptimal);
  const LpResult warm = SolveLp(p, {}, {}, &cold);
  ASSERT_EQ(warm.status, LpStatus::kOptimal);
  EXPECT_EQ(warm.iterations, 0);
  EXPECT_NEAR(warm.objective, cold.objective, 1e-12);
}

TEST(SimplexTest, MismatchedWarmStartFallsBackToColdStart) {
  const Problem p = ::milpenv::testing::Knapsack();
  LpResult bogus;
  bogus.status = LpStatus::kOptimal;
  bogus.var_status = {BasisStatus::kBasic};  // wrong size
  const LpResult r = SolveLp(p, {}, {}, &bogus);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -49.0 / 6.0, 1e-9);
}

}  // namespace
}  // namespace milpenv
