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


#include "ipgkit/knapsack.h"

#include <gtest/gtest.h>

#include <random>

#include "ipgkit/milp.h"
#include "test_util.h"

namespace ipgkit {
namespace {

using testing::uniform;

struct Best {
  Rational primary;
  Rational secondary;
};

Best enumerateSubsets(const KnapsackProblem& p) {
  const int n = static_cast<int>(p.weights.size());
  std::optional<Best> best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::int64_t w = 0;
    Rational a = 0, b = 0;
    for (int k = 0; k < n; ++k) {
      if (!((mask >> k) & 1)) continue;
      w += p.weights[k];
      a += p.primaryProfit[k];
      if (p.secondaryProfit) b += (*p.secondaryProfit)[k];
    }
    if (w > p.capacity) continue;
    if (!best || a > best->primary || (a == best->primary && b > best->secondary)) best = Best{a, b};
  }
  return *best;
}

KnapsackProblem randomKnapsack(std::mt19937_64& rng, int maxItems, bool secondary) {
  KnapsackProblem p;
  const int n = static_cast<int>(uniform(rng, 1, maxItems));
  for (int k = 0; k < n; ++k) p.weights.push_back(uniform(rng, 0, 12));
  p.capacity = uniform(rng, 0, 40);
  // Small ranges so ties are common.
  p.primaryProfit = testing::randomVector(rng, n, 4, uniform(rng, 1, 3));
  if (secondary) p.secondaryProfit = testing::randomVector(rng, n, 5);
  return p;
}

TEST(Knapsack, SmallExamples) {
  auto a = solveKnapsack({{3, 4}, 5, {1, 2}, std::nullopt});
  EXPECT_EQ(a.selection, (Strategy{0, 1}));
  EXPECT_EQ(a.primaryValue, 2);
  auto b = solveKnapsack({{2, 5}, 5, {3, 1}, std::nullopt});
  EXPECT_EQ(b.selection, (Strategy{1, 0}));
  EXPECT_EQ(b.primaryValue, 3);
  auto c = solveKnapsack({{1, 2}, 0, {5, 5}, std::nullopt});
  EXPECT_EQ(c.selection, (Strategy{0, 0}));
  EXPECT_EQ(c.primaryValue, 0);
}

TEST(Knapsack, SecondaryBreaksTies) {
  // Both items give primary 1; the second is better for the tie-break.
  auto r = solveKnapsack({{1, 1}, 1, {1, 1}, RationalVector{0, 3}});
  EXPECT_EQ(r.selection, (Strategy{0, 1}));
  EXPECT_EQ(r.secondaryValue, 3);
  // A zero-profit item is taken only for the secondary objective.
  auto z = solveKnapsack({{1}, 1, {0}, RationalVector{2}});
  EXPECT_EQ(z.selection, (Strategy{1}));
  auto n = solveKnapsack({{1}, 1, {0}, RationalVector{-2}});
  EXPECT_EQ(n.selection, (Strategy{0}));
}

TEST(Knapsack, RejectsBadInput) {
  EXPECT_THROW(solveKnapsack({{1, 2}, 3, {1}, std::nullopt}), Error);
  EXPECT_THROW(solveKnapsack({{-1}, 3, {1}, std::nullopt}), Error);
  EXPECT_THROW(solveKnapsack({{1}, -1, {1}, std::nullopt}), Error);
  try {
    solveKnapsack({{1, 1}, 100, {1, 1}, std::nullopt}, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLimitExceeded);
  }
}

TEST(Knapsack, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    KnapsackProblem p = randomKnapsack(rng, 15, trial % 2 == 0);
    const Best expected = enumerateSubsets(p);
    KnapsackSolution s = solveKnapsack(p);
    EXPECT_EQ(s.primaryValue, expected.primary) << "trial " << trial;
    EXPECT_EQ(s.secondaryValue, expected.secondary) << "trial " << trial;
    std::int64_t w = 0;
    for (std::size_t k = 0; k < p.weights.size(); ++k) w += s.selection[k] * p.weights[k];
    EXPECT_LE(w, p.capacity);
    EXPECT_EQ(dot(p.primaryProfit, s.selection), s.primaryValue);
  }
}

TEST(Knapsack, PrimaryMatchesMilp) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    KnapsackProblem p = randomKnapsack(rng, 15, false);
    MilpProblem m;
    RationalVector w;
    for (std::size_t k = 0; k < p.weights.size(); ++k) {
      m.binaryIndices.push_back(m.lp.addVariable(0, 1, p.primaryProfit[k]));
      w.emplace_back(p.weights[k]);
    }
    m.lp.addConstraint({w, Sense::kLessEqual, Rational(p.capacity)});
    EXPECT_EQ(solveKnapsack(p).primaryValue, solveMilp(m).value) << "trial " << trial;
  }
}

// Values too large for the integer path take the rational one.
TEST(Knapsack, HugeProfitsUseExactPath) {
  const Rational big = Rational(boost::multiprecision::mpz_int(1) << 61);
  auto r = solveKnapsack({{1, 1, 1}, 2, {Rational(1, 3), big, big + 1}, std::nullopt});
  EXPECT_EQ(r.selection, (Strategy{0, 1, 1}));
  EXPECT_EQ(r.primaryValue, 2 * big + 1);
}

TEST(IntegerKnapsack, AgreesWithRationalSolver) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(uniform(rng, 1, 12));
    std::vector<std::int64_t> weights;
    for (int k = 0; k < n; ++k) weights.push_back(uniform(rng, 0, 9));
    const std::int64_t capacity = uniform(rng, 0, 30);
    IntegerKnapsack solver(weights, capacity);
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<std::int64_t> a, b;
      RationalVector ra, rb;
      for (int k = 0; k < n; ++k) {
        a.push_back(uniform(rng, -3, 3));
        b.push_back(uniform(rng, -3, 3));
        ra.emplace_back(a.back());
        rb.emplace_back(b.back());
      }
      EXPECT_EQ(solver.solve(a, b), solveKnapsack({weights, capacity, ra, rb}).selection) << "trial " << trial;
    }
  }
}

}  // namespace
}  // namespace ipgkit
