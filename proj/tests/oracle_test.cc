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


#include "ipgkit/oracle.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.h"

namespace ipgkit {
namespace {

using testing::knapsackGame;
using testing::uniform;

PureProfile pure(Strategy a, Strategy b) { return PureProfile{{std::move(a), std::move(b)}}; }

MixedProfile knapsackMixedNE() {
  return MixedProfile{{{{{1, 0}, {0, 1}}, {Rational(2, 9), Rational(7, 9)}},
                       {{{1, 0}, {0, 1}}, {Rational(2, 5), Rational(3, 5)}}}};
}

// Largest gain over the current payoff among every feasible deviation.
Rational bruteGain(const GameInstance& game, const std::vector<Strategy>& x, int i) {
  Rational current = testing::payoffBrute(game, x, i);
  Rational best = current;
  auto y = x;
  for (const auto& d : testing::feasibleBrute(game.strategySet(i))) {
    y[i] = d;
    best = std::max(best, testing::payoffBrute(game, y, i));
  }
  return best - current;
}

bool bruteCertifies(const GameInstance& game, const std::vector<Strategy>& x) {
  for (int i = 0; i < game.numPlayers(); ++i) {
    if (!isFeasible(game.strategySet(i), x[i])) return false;
    if (bruteGain(game, x, i) > game.tolerance()) return false;
  }
  return true;
}

GameInstance permuted(const GameInstance& game, const std::vector<int>& order) {
  // New player k is old player order[k].
  std::vector<int> inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inverse[order[k]] = static_cast<int>(k);
  std::vector<Player> players;
  for (int old : order) {
    Player p = game.player(old);
    PayoffSpec pay;
    pay.constant = p.payoff.constant;
    pay.ownLinear = p.payoff.ownLinear;
    for (auto& [j, e] : p.payoff.oppLinear) pay.oppLinear[inverse[j]] = e;
    for (auto& [j, q] : p.payoff.bilinear) pay.bilinear[inverse[j]] = q;
    p.payoff = std::move(pay);
    players.push_back(std::move(p));
  }
  return GameInstance(game.name(), std::move(players));
}

std::vector<Strategy> randomPoint(std::mt19937_64& rng, const GameInstance& game) {
  std::vector<Strategy> x;
  for (int i = 0; i < game.numPlayers(); ++i) {
    auto all = testing::allBinary(game.numVars(i));
    x.push_back(all[uniform(rng, 0, static_cast<std::int64_t>(all.size()) - 1)]);
  }
  return x;
}

TEST(BestResponse, KnapsackGameExamples) {
  GameInstance g = knapsackGame();
  auto r = bestResponse(g, 0, pure({0, 0}, {1, 0}));
  EXPECT_EQ(r.strategy, (Strategy{0, 1}));
  EXPECT_EQ(r.value, 2);
  auto m = bestResponse(g, 1, knapsackMixedNE());
  EXPECT_EQ(m.value, Rational(17, 9));
  EXPECT_EQ(evaluateMixed(g, {{knapsackMixedNE().players[0], {{{1, 0}}, {1}}}}, 1), Rational(17, 9));
  EXPECT_EQ(evaluateMixed(g, {{knapsackMixedNE().players[0], {{{0, 1}}, {1}}}}, 1), Rational(17, 9));
}

TEST(BestResponse, OnlyZeroFeasible) {
  PayoffSpec p;
  p.constant = 7;
  p.ownLinear = {5, 4};
  p.bilinear[1] = {{1}, {1}};
  PayoffSpec q;
  q.ownLinear = {1};
  std::vector<Player> players;
  players.push_back(testing::makePlayer(2, {{{1, 1}, Sense::kLessEqual, 0}}, p));
  players.push_back(testing::makePlayer(1, {}, q));
  GameInstance g("zero", std::move(players));
  auto r = bestResponse(g, 0, PureProfile{{{0, 0}, {1}}});
  EXPECT_EQ(r.strategy, (Strategy{0, 0}));
  EXPECT_EQ(r.value, 7);
}

TEST(BestResponse, EmptyStrategySetIsInfeasible) {
  PayoffSpec p;
  p.ownLinear = {1};
  std::vector<Player> players;
  players.push_back(testing::makePlayer(1, {{{1}, Sense::kGreaterEqual, 2}}, p));
  players.push_back(testing::makePlayer(1, {}, p));
  GameInstance g("empty", std::move(players));
  try {
    bestResponse(g, 0, PureProfile{{{0}, {0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(Improve, KnapsackGameVerdicts) {
  GameInstance g = knapsackGame();
  EXPECT_TRUE(improve(g, pure({0, 1}, {1, 0})).yes);
  EXPECT_TRUE(improve(g, pure({1, 0}, {0, 1})).yes);

  OracleVerdict zero = improve(g, pure({0, 0}, {0, 0}));
  EXPECT_FALSE(zero.yes);
  ASSERT_EQ(zero.information.size(), 2u);
  EXPECT_EQ(zero.information[0].player, 0);
  EXPECT_EQ(zero.information[0].strategy, (Strategy{0, 1}));
  EXPECT_EQ(zero.information[0].improvement, 2);
  EXPECT_EQ(zero.information[1].player, 1);
  EXPECT_EQ(zero.information[1].strategy, (Strategy{0, 1}));
  EXPECT_EQ(zero.information[1].improvement, 5);
  EXPECT_EQ(zero.worstViolation, 5);

  OracleVerdict mixed = improve(g, knapsackMixedNE());
  EXPECT_TRUE(mixed.yes);
  EXPECT_TRUE(mixed.information.empty());
  EXPECT_EQ(mixed.worstViolation, 0);
}

TEST(Improve, MembershipFailureIsReported) {
  GameInstance g = knapsackGame();
  OracleVerdict v = improve(g, pure({1, 1}, {1, 0}));
  EXPECT_FALSE(v.yes);
  ASSERT_FALSE(v.information.empty());
  EXPECT_EQ(v.information[0].player, 0);
  EXPECT_TRUE(v.information[0].membershipFailure);
  EXPECT_TRUE(isFeasible(g.strategySet(0), v.information[0].strategy));
}

TEST(EpsilonOf, KnapsackGame) {
  GameInstance g = knapsackGame();
  EXPECT_EQ(epsilonOf(g, pure({0, 1}, {1, 0})), 0);
  EXPECT_EQ(epsilonOf(g, knapsackMixedNE()), 0);
  EXPECT_EQ(epsilonOf(g, pure({0, 0}, {0, 0})), 5);
  EXPECT_EQ(epsilonOf(g, pure({0, 1}, {0, 1})), 2);
  try {
    epsilonOf(g, pure({1, 1}, {0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMembership);
  }
}

TEST(Improve, AgreesWithBruteForceOnPureProfiles) {
  std::mt19937_64 rng(41);
  int yes = 0;
  for (int trial = 0; trial < 150; ++trial) {
    testing::RandomGameSpec spec;
    spec.players = static_cast<int>(uniform(rng, 2, 3));
    spec.maxVars = spec.players == 2 ? 5 : 3;
    spec.generalConstraint = trial % 3 == 0 ? 0.6 : 0.0;
    spec.maxConstraints = 2;
    spec.maxDen = trial % 2 ? 1 : 3;
    GameInstance g = testing::randomGame(rng, spec);
    bool empty = false;
    for (int i = 0; i < g.numPlayers(); ++i) empty = empty || testing::feasibleBrute(g.strategySet(i)).empty();
    if (empty) continue;
    for (auto& x : testing::pureEquilibriaBrute(g)) {
      EXPECT_TRUE(improve(g, PureProfile{x}).yes) << "trial " << trial;
      ++yes;
    }
    for (int k = 0; k < 10; ++k) {
      auto x = randomPoint(rng, g);
      OracleVerdict v = improve(g, PureProfile{x});
      EXPECT_EQ(v.yes, bruteCertifies(g, x)) << "trial " << trial;
      EXPECT_EQ(v.yes, v.information.empty());
      bool feasible = true;
      for (int i = 0; i < g.numPlayers(); ++i) feasible = feasible && isFeasible(g.strategySet(i), x[i]);
      if (feasible) {
        Rational worst = 0;
        for (int i = 0; i < g.numPlayers(); ++i) worst = std::max(worst, bruteGain(g, x, i));
        EXPECT_EQ(v.worstViolation, worst);
        EXPECT_EQ(epsilonOf(g, PureProfile{x}), worst);
      }
    }
  }
  EXPECT_GT(yes, 20);
}

TEST(Improve, MixedProfilesAgreeWithDeviationEnumeration) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 80; ++trial) {
    testing::RandomGameSpec spec;
    spec.maxVars = 4;
    GameInstance g = testing::randomGame(rng, spec);
    MixedProfile profile;
    for (int i = 0; i < 2; ++i) {
      auto feasible = testing::feasibleBrute(g.strategySet(i));
      std::shuffle(feasible.begin(), feasible.end(), rng);
      const int k = static_cast<int>(std::min<std::size_t>(feasible.size(), uniform(rng, 1, 3)));
      MixedStrategy s;
      Rational left = 1;
      for (int t = 0; t < k; ++t) {
        s.support.push_back(feasible[t]);
        Rational p = t + 1 == k ? left : left * Rational(uniform(rng, 1, 3), 4);
        s.probabilities.push_back(p);
        left -= p;
      }
      profile.players.push_back(std::move(s));
    }
    Rational worst = 0;
    for (int i = 0; i < 2; ++i) {
      const Rational current = evaluateMixed(g, profile, i);
      Rational best = current;
      for (auto& d : testing::feasibleBrute(g.strategySet(i))) {
        MixedProfile dev = profile;
        dev.players[i] = MixedStrategy{{d}, {1}};
        best = std::max(best, evaluateMixed(g, dev, i));
      }
      EXPECT_EQ(bestResponse(g, i, profile).value, best);
      EXPECT_GE(best, current);
      worst = std::max(worst, Rational(best - current));
    }
    OracleVerdict v = improve(g, profile);
    EXPECT_EQ(v.worstViolation, worst) << "trial " << trial;
    EXPECT_EQ(v.yes, worst <= g.tolerance());
  }
}

// Terms that only depend on the opponents cannot change what a player prefers.
TEST(Improve, OpponentOnlyTermsDoNotMatter) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    testing::RandomGameSpec spec;
    spec.maxVars = 4;
    GameInstance g = testing::randomGame(rng, spec);
    std::vector<Player> players = g.players();
    for (auto& p : players) {
      for (auto& [j, e] : p.payoff.oppLinear) std::fill(e.begin(), e.end(), Rational(0));
    }
    GameInstance stripped("stripped", players);
    for (int k = 0; k < 5; ++k) {
      auto x = randomPoint(rng, g);
      PureProfile profile{x};
      EXPECT_EQ(improve(g, profile).yes, improve(stripped, profile).yes);
      for (int i = 0; i < 2; ++i) {
        // The argmax sets coincide: each game's best response is optimal in the other.
        auto a = bestResponse(g, i, profile);
        auto b = bestResponse(stripped, i, profile);
        auto y = x;
        y[i] = b.strategy;
        EXPECT_EQ(testing::payoffBrute(g, y, i), a.value);
        y[i] = a.strategy;
        EXPECT_EQ(testing::payoffBrute(stripped, y, i), b.value);
      }
    }
  }
}

TEST(EpsilonOf, InvariantUnderPlayerOrder) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    testing::RandomGameSpec spec;
    spec.players = 3;
    spec.maxVars = 3;
    GameInstance g = testing::randomGame(rng, spec);
    const std::vector<int> order{2, 0, 1};
    GameInstance h = permuted(g, order);
    auto x = randomPoint(rng, g);
    std::vector<Strategy> y;
    for (int old : order) y.push_back(x[old]);
    bool feasible = true;
    for (int i = 0; i < 3; ++i) feasible = feasible && isFeasible(g.strategySet(i), x[i]);
    if (!feasible) continue;
    EXPECT_EQ(epsilonOf(g, PureProfile{x}), epsilonOf(h, PureProfile{y}));
  }
}

}  // namespace
}  // namespace ipgkit
