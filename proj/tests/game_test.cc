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

#include "ipgkit/game.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_util.h"

namespace ipgkit {
namespace {

using testing::knapsackGame;

PureProfile pure(Strategy a, Strategy b) { return PureProfile{{std::move(a), std::move(b)}}; }

TEST(StrategySet, KnapsackMembership) {
  GameInstance g = knapsackGame();
  EXPECT_FALSE(isFeasible(g.strategySet(0), {1, 1}));
  EXPECT_TRUE(isFeasible(g.strategySet(0), {0, 1}));
  EXPECT_TRUE(isFeasible(g.strategySet(0), {1, 0}));
  EXPECT_TRUE(isFeasible(g.strategySet(1), {0, 0}));
  EXPECT_FALSE(isFeasible(g.strategySet(1), {1, 1}));
  EXPECT_THROW(isFeasible(g.strategySet(0), {1}), Error);
  EXPECT_THROW(isFeasible(g.strategySet(0), {2, 0}), Error);
}

TEST(StrategySet, ZeroIsFeasibleUnderNonnegativeUpperRows) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(testing::uniform(rng, 1, 6));
    std::vector<LinearConstraint> rows;
    for (int r = 0; r < 3; ++r) rows.push_back({testing::randomVector(rng, n, 5), Sense::kLessEqual, Rational(testing::uniform(rng, 0, 5))});
    EXPECT_TRUE(isFeasible(StrategySet(n, rows), Strategy(n, 0)));
  }
}

TEST(StrategySet, RecognizesSingleKnapsacks) {
  EXPECT_TRUE(StrategySet(2, {{{3, 4}, Sense::kLessEqual, 5}}).isSingleKnapsack());
  EXPECT_FALSE(StrategySet(2, {{{3, -4}, Sense::kLessEqual, 5}}).isSingleKnapsack());
  EXPECT_FALSE(StrategySet(2, {{{3, 4}, Sense::kGreaterEqual, 5}}).isSingleKnapsack());
  EXPECT_FALSE(StrategySet(2, {{{Rational(1, 2), 4}, Sense::kLessEqual, 5}}).isSingleKnapsack());
  EXPECT_FALSE(StrategySet(2, {}).isSingleKnapsack());
  EXPECT_THROW(StrategySet(0, {}), Error);
  EXPECT_THROW(StrategySet(2, {{{1}, Sense::kLessEqual, 1}}), Error);
}

TEST(GameInstance, RejectsInconsistentData) {
  PayoffSpec ok;
  ok.ownLinear = {1};
  std::vector<Player> one{testing::makePlayer(1, {}, ok)};
  EXPECT_THROW(GameInstance("g", one), Error);

  PayoffSpec self = ok;
  self.bilinear[0] = {{1}};
  EXPECT_THROW(GameInstance("g", {testing::makePlayer(1, {}, self), testing::makePlayer(1, {}, ok)}), Error);

  PayoffSpec wrong_rows = ok;
  wrong_rows.bilinear[1] = {{1}, {2}};
  EXPECT_THROW(GameInstance("g", {testing::makePlayer(1, {}, wrong_rows), testing::makePlayer(1, {}, ok)}), Error);

  PayoffSpec wrong_opp = ok;
  wrong_opp.oppLinear[1] = {1, 2};
  EXPECT_THROW(GameInstance("g", {testing::makePlayer(1, {}, wrong_opp), testing::makePlayer(1, {}, ok)}), Error);

  PayoffSpec bad_own;
  bad_own.ownLinear = {1, 2};
  EXPECT_THROW(GameInstance("g", {testing::makePlayer(1, {}, bad_own), testing::makePlayer(1, {}, ok)}), Error);
}

TEST(Evaluate, KnapsackPurePayoffs) {
  GameInstance g = knapsackGame();
  EXPECT_EQ(evaluatePure(g, pure({0, 1}, {1, 0}), 0), 2);
  EXPECT_EQ(evaluatePure(g, pure({0, 1}, {1, 0}), 1), 3);
  EXPECT_EQ(evaluatePure(g, pure({1, 0}, {1, 0}), 0), -1);
  EXPECT_EQ(evaluatePure(g, pure({1, 0}, {1, 0}), 1), -2);
  EXPECT_EQ(evaluatePure(g, pure({0, 0}, {0, 0}), 0), 0);
  EXPECT_THROW(evaluatePure(g, pure({0, 1}, {1, 0}), 2), Error);
  EXPECT_THROW(evaluatePure(g, PureProfile{{{0, 1}}}, 0), Error);
}

MixedProfile knapsackMixed() {
  MixedProfile m;
  m.players.push_back({{{1, 0}, {0, 1}}, {Rational(2, 9), Rational(7, 9)}});
  m.players.push_back({{{1, 0}, {0, 1}}, {Rational(2, 5), Rational(3, 5)}});
  return m;
}

TEST(Evaluate, KnapsackMixedPayoffs) {
  GameInstance g = knapsackGame();
  // Player 1 is indifferent between its supports at 1/5; player 2 at 17/9.
  EXPECT_EQ(evaluateMixed(g, knapsackMixed(), 0), Rational(1, 5));
  EXPECT_EQ(evaluateMixed(g, knapsackMixed(), 1), Rational(17, 9));
}

Rational expectationBrute(const GameInstance& g, const MixedProfile& m, int player) {
  Rational total = 0;
  std::vector<std::size_t> idx(m.players.size(), 0);
  while (true) {
    Rational weight = 1;
    std::vector<Strategy> x;
    for (std::size_t i = 0; i < m.players.size(); ++i) {
      weight *= m.players[i].probabilities[idx[i]];
      x.push_back(m.players[i].support[idx[i]]);
    }
    total += weight * testing::payoffBrute(g, x, player);
    int i = static_cast<int>(m.players.size()) - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < m.players[i].support.size()) break;
      idx[i] = 0;
    }
    if (i < 0) return total;
  }
}

TEST(Evaluate, MixedEqualsSumOverOutcomes) {
  std::mt19937_64 rng(11);
  testing::RandomGameSpec spec;
  spec.players = 3;
  spec.maxVars = 3;
  spec.maxDen = 4;
  for (int trial = 0; trial < 60; ++trial) {
    GameInstance g = testing::randomGame(rng, spec);
    MixedProfile m;
    for (int i = 0; i < g.numPlayers(); ++i) {
      auto all = testing::allBinary(g.numVars(i));
      std::shuffle(all.begin(), all.end(), rng);
      const int k = static_cast<int>(testing::uniform(rng, 1, std::min<int>(3, all.size())));
      MixedStrategy s;
      Rational left = 1;
      for (int t = 0; t < k; ++t) {
        s.support.push_back(all[t]);
        Rational p = t + 1 == k ? left : left * Rational(testing::uniform(rng, 1, 5), 7);
        s.probabilities.push_back(p);
        left -= p;
      }
      m.players.push_back(std::move(s));
    }
    for (int i = 0; i < g.numPlayers(); ++i) EXPECT_EQ(evaluateMixed(g, m, i), expectationBrute(g, m, i));
  }
}

TEST(Evaluate, PointMassMatchesPure) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    GameInstance g = testing::randomGame(rng, {});
    PureProfile p;
    for (int i = 0; i < g.numPlayers(); ++i) {
      auto all = testing::allBinary(g.numVars(i));
      p.strategies.push_back(all[testing::uniform(rng, 0, all.size() - 1)]);
    }
    MixedProfile m = MixedProfile::pointMass(p);
    EXPECT_TRUE(m.isPure());
    EXPECT_EQ(m.toPure(), p);
    for (int i = 0; i < g.numPlayers(); ++i) {
      EXPECT_EQ(evaluateMixed(g, m, i), evaluatePure(g, p, i));
      EXPECT_EQ(evaluatePure(g, p, i), testing::payoffBrute(g, p.strategies, i));
    }
  }
}

TEST(Evaluate, AffineInOwnStrategy) {
  std::mt19937_64 rng(17);
  testing::RandomGameSpec spec;
  spec.maxDen = 3;
  for (int trial = 0; trial < 40; ++trial) {
    GameInstance g = testing::randomGame(rng, spec);
    const int i = static_cast<int>(testing::uniform(rng, 0, 1));
    const int n = g.numVars(i);
    PureProfile base;
    for (int j = 0; j < 2; ++j) {
      auto all = testing::allBinary(g.numVars(j));
      base.strategies.push_back(all[testing::uniform(rng, 0, all.size() - 1)]);
    }
    for (const auto& x : testing::allBinary(n)) {
      for (const auto& y : testing::allBinary(n)) {
        bool disjoint = true;
        Strategy sum(n);
        for (int k = 0; k < n; ++k) {
          sum[k] = x[k] + y[k];
          disjoint = disjoint && sum[k] <= 1;
        }
        if (!disjoint) continue;
        auto at = [&](const Strategy& s) {
          PureProfile p = base;
          p.strategies[i] = s;
          return evaluatePure(g, p, i);
        };
        EXPECT_EQ(at(x) + at(y) - at(Strategy(n, 0)), at(sum));
      }
    }
  }
}

TEST(Profiles, ValidationCatchesMalformedMixtures) {
  GameInstance g = knapsackGame();
  EXPECT_NO_THROW(validateProfile(g, knapsackMixed()));
  MixedProfile bad_sum = knapsackMixed();
  bad_sum.players[0].probabilities[0] = Rational(1, 9);
  EXPECT_THROW(validateProfile(g, bad_sum), Error);
  MixedProfile repeated = knapsackMixed();
  repeated.players[1].support[1] = {1, 0};
  EXPECT_THROW(validateProfile(g, repeated), Error);
  MixedProfile negative = knapsackMixed();
  negative.players[0].probabilities = {Rational(-1, 9), Rational(10, 9)};
  EXPECT_THROW(validateProfile(g, negative), Error);
  MixedProfile within_tolerance = knapsackMixed();
  within_tolerance.players[0].probabilities[0] += Rational(1, 10000000);
  EXPECT_NO_THROW(validateProfile(g, within_tolerance));
  EXPECT_FALSE(knapsackMixed().isPure());
  EXPECT_THROW(knapsackMixed().toPure(), Error);
}

TEST(Profiles, MeanStrategy) {
  RationalVector mean = meanStrategy(knapsackMixed().players[0]);
  EXPECT_EQ(mean, (RationalVector{Rational(2, 9), Rational(7, 9)}));
}

TEST(Binarize, SingletonRange) {
  BinarizedInteger b = binarizeBoundedInteger(1, 1);
  EXPECT_EQ(b.numBits, 0);
  EXPECT_FALSE(b.upperBound.has_value());
  EXPECT_EQ(b.decode({}), 1);
}

TEST(Binarize, OneToFour) {
  BinarizedInteger b = binarizeBoundedInteger(1, 4);
  ASSERT_EQ(b.numBits, 2);
  EXPECT_EQ(b.bitWeights, (std::vector<std::int64_t>{1, 2}));
  ASSERT_TRUE(b.upperBound.has_value());
  EXPECT_EQ(b.upperBound->coeffs, (RationalVector{1, 2}));
  EXPECT_EQ(b.upperBound->rhs, 3);
  std::set<std::int64_t> values;
  for (const auto& code : testing::allBinary(2)) {
    EXPECT_TRUE(b.upperBound->isSatisfiedBy(code));
    values.insert(b.decode(code));
  }
  EXPECT_EQ(values, (std::set<std::int64_t>{1, 2, 3, 4}));
}

TEST(Binarize, ZeroToTwoExcludesCodeThree) {
  BinarizedInteger b = binarizeBoundedInteger(0, 2);
  ASSERT_EQ(b.numBits, 2);
  EXPECT_FALSE(b.upperBound->isSatisfiedBy(Strategy{1, 1}));
  for (std::int64_t v = 0; v <= 2; ++v) EXPECT_EQ(b.decode(b.encode(v)), v);
  EXPECT_THROW(b.encode(3), Error);
  EXPECT_THROW(binarizeBoundedInteger(3, 2), Error);
}

TEST(Binarize, RoundTripsRandomRanges) {
  for (std::int64_t lo = -5; lo <= 5; ++lo) {
    for (std::int64_t hi = lo; hi <= lo + 20; ++hi) {
      BinarizedInteger b = binarizeBoundedInteger(lo, hi);
      int expected_bits = 0;
      while ((std::int64_t{1} << expected_bits) < hi - lo + 1) ++expected_bits;
      EXPECT_EQ(b.numBits, expected_bits);
      std::set<std::int64_t> seen;
      for (const auto& code : testing::allBinary(b.numBits)) {
        if (b.upperBound && !b.upperBound->isSatisfiedBy(code)) continue;
        seen.insert(b.decode(code));
      }
      EXPECT_EQ(static_cast<std::int64_t>(seen.size()), hi - lo + 1);
      EXPECT_EQ(*seen.begin(), lo);
      EXPECT_EQ(*seen.rbegin(), hi);
    }
  }
}

}  // namespace
}  // namespace ipgkit
