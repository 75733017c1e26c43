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

#include "ipgkit/knapsack.h"
#include "ipgkit/milp.h"

namespace ipgkit {

namespace {

std::vector<RationalVector> pointsOf(const PureProfile& profile) {
  std::vector<RationalVector> points;
  for (const auto& x : profile.strategies) points.emplace_back(x.begin(), x.end());
  return points;
}

std::vector<RationalVector> meansOf(const MixedProfile& profile) {
  std::vector<RationalVector> means;
  for (const auto& s : profile.players) means.push_back(meanStrategy(s));
  return means;
}

BestResponse viaKnapsack(const StrategySet& set, const AffinePayoff& affine) {
  const auto& c = set.constraints().front();
  KnapsackProblem problem;
  for (const auto& w : c.coeffs) {
    problem.weights.push_back(boost::multiprecision::numerator(w).convert_to<std::int64_t>());
  }
  // Integer weights make floor(rhs) the effective capacity.
  const auto num = boost::multiprecision::numerator(c.rhs);
  const auto den = boost::multiprecision::denominator(c.rhs);
  problem.capacity = static_cast<std::int64_t>(num / den);
  problem.primaryProfit = affine.linear;
  auto solution = solveKnapsack(problem);
  return {solution.selection, affine.constant + solution.primaryValue};
}

BestResponse viaMilp(const StrategySet& set, const AffinePayoff& affine) {
  MilpProblem problem;
  const int n = set.numVars();
  problem.lp.sense = ObjectiveSense::kMaximize;
  problem.lp.objective = affine.linear;
  problem.lp.lower.assign(n, Rational(0));
  problem.lp.upper.assign(n, Rational(1));
  problem.lp.constraints = set.constraints();
  for (int j = 0; j < n; ++j) problem.binaryIndices.push_back(j);
  auto result = solveMilp(problem);
  if (result.status == MilpStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasible, "best response: strategy set is empty");
  }
  Strategy x(n);
  for (int j = 0; j < n; ++j) x[j] = result.point[j] == 1 ? 1 : 0;
  return {std::move(x), affine.constant + result.value};
}

template <typename Profile>
OracleVerdict improveImpl(const GameInstance& game, const Profile& profile,
                          const std::vector<RationalVector>& points) {
  OracleVerdict verdict;
  for (int i = 0; i < game.numPlayers(); ++i) {
    bool member = true;
    if constexpr (std::is_same_v<Profile, PureProfile>) {
      member = isFeasible(game.strategySet(i), profile.strategies[i]);
    } else {
      for (const auto& s : profile.players[i].support) member = member && isFeasible(game.strategySet(i), s);
    }
    BestResponse response = bestResponseToMeans(game, i, points);
    AffinePayoff affine = affinePayoff(game, i, points);
    const Rational current = affine.constant + dot(affine.linear, points[i]);
    Rational gain = response.value - current;
    if (member && gain > verdict.worstViolation) verdict.worstViolation = gain;
    if (!member || gain > game.tolerance()) {
      verdict.information.push_back({i, std::move(response.strategy), std::move(gain), !member});
    }
  }
  verdict.yes = verdict.information.empty();
  return verdict;
}

}  // namespace

BestResponse bestResponseToMeans(const GameInstance& game, int player,
                                 const std::vector<RationalVector>& opponents) {
  if (player < 0 || player >= game.numPlayers()) {
    throw Error(ErrorCode::kInvalidArgument, "no such player " + std::to_string(player));
  }
  AffinePayoff affine = affinePayoff(game, player, opponents);
  const auto& set = game.strategySet(player);
  if (set.isSingleKnapsack()) return viaKnapsack(set, affine);
  return viaMilp(set, affine);
}

BestResponse bestResponse(const GameInstance& game, int player, const PureProfile& profile) {
  validateProfile(game, profile);
  return bestResponseToMeans(game, player, pointsOf(profile));
}

BestResponse bestResponse(const GameInstance& game, int player, const MixedProfile& profile) {
  validateProfile(game, profile);
  return bestResponseToMeans(game, player, meansOf(profile));
}

OracleVerdict improve(const GameInstance& game, const PureProfile& profile) {
  validateProfile(game, profile);
  return improveImpl(game, profile, pointsOf(profile));
}

OracleVerdict improve(const GameInstance& game, const MixedProfile& profile) {
  validateProfile(game, profile);
  return improveImpl(game, profile, meansOf(profile));
}

Rational epsilonOf(const GameInstance& game, const PureProfile& profile) {
  auto verdict = improve(game, profile);
  for (const auto& d : verdict.information) {
    if (d.membershipFailure) throw Error(ErrorCode::kMembership, "epsilon undefined: infeasible strategy");
  }
  return verdict.worstViolation;
}

Rational epsilonOf(const GameInstance& game, const MixedProfile& profile) {
  auto verdict = improve(game, profile);
  for (const auto& d : verdict.information) {
    if (d.membershipFailure) throw Error(ErrorCode::kMembership, "epsilon undefined: infeasible strategy");
  }
  return verdict.worstViolation;
}

}  // namespace ipgkit
