// Copyright 2026 The ipgkit Authors
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


#include "ipgkit/milp.h"

#include <gtest/gtest.h>

#include <random>

#include "test_util.h"

namespace ipgkit {
namespace {

using testing::uniform;

MilpProblem binaryProgram(int n) {
  MilpProblem p;
  for (int j = 0; j < n; ++j) {
    p.lp.addVariable(0, 1);
    p.binaryIndices.push_back(j);
  }
  return p;
}

std::optional<Rational> enumerateOptimum(const MilpProblem& p) {
  std::optional<Rational> best;
  for (auto& x : testing::allBinary(p.lp.numVars())) {
    bool ok = true;
    for (const auto& c : p.lp.constraints) ok = ok && c.isSatisfiedBy(x);
    if (!ok) continue;
    Rational v = dot(p.lp.objective, x);
    if (!best || (p.lp.sense == ObjectiveSense::kMaximize ? v > *best : v < *best)) best = v;
  }
  return best;
}

MilpProblem randomProgram(std::mt19937_64& rng) {
  const int n = static_cast<int>(uniform(rng, 1, 12));
  MilpProblem p = binaryProgram(n);
  p.lp.sense = uniform(rng, 0, 3) ? ObjectiveSense::kMaximize : ObjectiveSense::kMinimize;
  p.lp.objective = testing::randomVector(rng, n, 20, 4);
  const int m = static_cast<int>(uniform(rng, 0, 4));
  for (int r = 0; r < m; ++r) {
    LinearConstraint c;
    c.coeffs = testing::randomVector(rng, n, 9);
    c.sense = static_cast<Sense>(uniform(rng, 0, 2));
    if (c.sense == Sense::kEqual && uniform(rng, 0, 1)) c.sense = Sense::kLessEqual;
    c.rhs = Rational(uniform(rng, -4, 12));
    p.lp.addConstraint(std::move(c));
  }
  return p;
}

TEST(Milp, KnapsackRow) {
  MilpProblem p = binaryProgram(2);
  p.lp.objective = {1, 2};
  p.lp.addConstraint({{3, 4}, Sense::kLessEqual, 5});
  MilpResult r = solveMilp(p);
  ASSERT_EQ(r.status, MilpStatus::kOptimal);
  EXPECT_EQ(r.point, (RationalVector{0, 1}));
  EXPECT_EQ(r.value, 2);
}

TEST(Milp, ContradictoryRows) {
  MilpProblem p = binaryProgram(1);
  p.lp.objective = {0};
  p.lp.addConstraint({{1}, Sense::kGreaterEqual, 1});
  p.lp.addConstraint({{1}, Sense::kLessEqual, 0});
  EXPECT_EQ(solveMilp(p).status, MilpStatus::kInfeasible);
}

// Welfare over the knapsack game: x1+2x2+3y1+5y2-7x1y1-7x2y2.
TEST(Milp, KnapsackGameWelfare) {
  MilpProblem p = binaryProgram(4);
  p.lp.objective = {1, 2, 3, 5};
  p.lp.addConstraint({{3, 4, 0, 0}, Sense::kLessEqual, 5});
  p.lp.addConstraint({{0, 0, 2, 5}, Sense::kLessEqual, 5});
  auto lin = linearizeProducts(p.lp, {{0, 2}, {1, 3}});
  p.lp.objective[lin.auxIndices[0]] = -7;
  p.lp.objective[lin.auxIndices[1]] = -7;
  MilpResult r = solveMilp(p);
  ASSERT_EQ(r.status, MilpStatus::kOptimal);
  EXPECT_EQ(r.value, 6);
  EXPECT_EQ(RationalVector(r.point.begin(), r.point.begin() + 4), (RationalVector{1, 0, 0, 1}));
}

TEST(Milp, LinearizationTruthTable) {
  for (int x = 0; x <= 1; ++x) {
    for (int y = 0; y <= 1; ++y) {
      for (auto sense : {ObjectiveSense::kMaximize, ObjectiveSense::kMinimize}) {
        MilpProblem p = binaryProgram(2);
        p.lp.lower = {x, y};
        p.lp.upper = {x, y};
        auto lin = linearizeProducts(p.lp, {{0, 1}});
        p.lp.sense = sense;
        p.lp.objective[lin.auxIndices[0]] = 1;
        MilpResult r = solveMilp(p);
        ASSERT_EQ(r.status, MilpStatus::kOptimal);
        EXPECT_EQ(r.point[lin.auxIndices[0]], x * y);
      }
    }
  }
  LinearProgram lp;
  lp.addVariable(0, 1);
  EXPECT_THROW(linearizeProducts(lp, {{0, 0}}), Error);
  EXPECT_THROW(linearizeProducts(lp, {{0, 3}}), Error);
}

TEST(Milp, RejectsNonBinaryBounds) {
  MilpProblem p;
  p.lp.addVariable(0, 2);
  p.binaryIndices = {0};
  EXPECT_THROW(solveMilp(p), Error);
  p.binaryIndices = {1};
  EXPECT_THROW(solveMilp(p), Error);
}

TEST(Milp, NodeLimitCarriesIncumbent) {
  // Equal weights 3 under capacity 20: the relaxation takes 6 2/3 items.
  MilpProblem p = binaryProgram(12);
  p.lp.objective.clear();
  for (int j = 0; j < 12; ++j) p.lp.objective.emplace_back(j + 1);
  p.lp.addConstraint({RationalVector(12, Rational(3)), Sense::kLessEqual, 20});
  MilpOptions options;
  options.nodeLimit = 2;
  EXPECT_THROW(solveMilp(p, options), MilpLimitError);
  options.nodeLimit = 40;
  try {
    solveMilp(p, options);
  } catch (const MilpLimitError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLimitExceeded);
    if (e.incumbent()) EXPECT_LE(e.incumbent()->value, 57);
  }
  MilpResult full = solveMilp(p);
  EXPECT_EQ(full.value, 12 + 11 + 10 + 9 + 8 + 7);
}

TEST(Milp, MatchesEnumeration) {
  std::mt19937_64 rng(21);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    MilpProblem p = randomProgram(rng);
    auto expected = enumerateOptimum(p);
    MilpResult r = solveMilp(p);
    if (!expected) {
      EXPECT_EQ(r.status, MilpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(r.status, MilpStatus::kOptimal) << "trial " << trial;
    EXPECT_EQ(r.value, *expected) << "trial " << trial;
    for (const auto& c : p.lp.constraints) EXPECT_TRUE(c.isSatisfiedBy(r.point));
  }
  EXPECT_GT(feasible, 100);
}

TEST(Milp, ColdAndWarmSearchesAgree) {
  std::mt19937_64 rng(22);
  MilpOptions cold;
  cold.warmStart = false;
  for (int trial = 0; trial < 100; ++trial) {
    MilpProblem p = randomProgram(rng);
    MilpResult a = solveMilp(p), b = solveMilp(p, cold);
    ASSERT_EQ(a.status, b.status);
    if (a.status == MilpStatus::kOptimal) EXPECT_EQ(a.value, b.value);
  }
}

TEST(Milp, ChildBoundsNeverExceedParent) {
  std::mt19937_64 rng(23);
  int checked = 0;
  MilpOptions options;
  options.onChildBound = [&](double parent, double child) {
    ++checked;
    EXPECT_LE(child, parent + 1e-7);
  };
  for (int trial = 0; trial < 100; ++trial) solveMilp(randomProgram(rng), options);
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace ipgkit
