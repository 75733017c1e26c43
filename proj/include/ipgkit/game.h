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

#ifndef IPGKIT_GAME_H_
#define IPGKIT_GAME_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipgkit/rational.h"

namespace ipgkit {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

std::string_view senseSymbol(Sense sense);

// coeffs . x  (sense)  rhs
struct LinearConstraint {
  RationalVector coeffs;
  Sense sense = Sense::kLessEqual;
  Rational rhs = 0;

  bool isSatisfied(const Rational& lhs) const;
  bool isSatisfiedBy(const Strategy& x) const;
  bool isSatisfiedBy(const RationalVector& x) const;
  // lhs - rhs for >=, rhs - lhs for <=; |lhs - rhs| negated for =.
  Rational slack(const RationalVector& x) const;
};

// Binary strategy set {x in {0,1}^numVars : constraints}.
class StrategySet {
 public:
  StrategySet() = default;
  StrategySet(int num_vars, std::vector<LinearConstraint> constraints);

  int numVars() const { return num_vars_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

  // True when the set is {x : w.x <= C} with nonnegative integer weights and
  // a nonnegative capacity, i.e. a single 0-1 knapsack.
  bool isSingleKnapsack() const;

 private:
  int num_vars_ = 0;
  std::vector<LinearConstraint> constraints_;
};

bool isFeasible(const StrategySet& set, const Strategy& x);

// f(x; x^-i) = constant + own.x + sum_j opp[j].x^j + sum_j x^T bilinear[j] x^j
struct PayoffSpec {
  Rational constant = 0;
  RationalVector ownLinear;
  std::map<int, RationalVector> oppLinear;
  std::map<int, RationalMatrix> bilinear;
};

struct Player {
  StrategySet strategies;
  PayoffSpec payoff;
};

class GameInstance {
 public:
  // Validates dimensions; throws Error on inconsistencies.
  GameInstance(std::string name, std::vector<Player> players,
               Rational tolerance = defaultTolerance());

  const std::string& name() const { return name_; }
  int numPlayers() const { return static_cast<int>(players_.size()); }
  const Player& player(int i) const { return players_.at(i); }
  const std::vector<Player>& players() const { return players_; }
  const StrategySet& strategySet(int i) const { return players_.at(i).strategies; }
  const PayoffSpec& payoff(int i) const { return players_.at(i).payoff; }
  int numVars(int i) const { return players_.at(i).strategies.numVars(); }
  int totalVars() const;
  const Rational& tolerance() const { return tolerance_; }

 private:
  std::string name_;
  std::vector<Player> players_;
  Rational tolerance_;
};

struct PureProfile {
  std::vector<Strategy> strategies;

  bool operator==(const PureProfile&) const = default;
  auto operator<=>(const PureProfile&) const = default;
};

struct MixedStrategy {
  std::vector<Strategy> support;
  RationalVector probabilities;
};

struct MixedProfile {
  std::vector<MixedStrategy> players;

  static MixedProfile pointMass(const PureProfile& profile);
  bool isPure() const;
  // Only valid when isPure().
  PureProfile toPure() const;
};

void validateProfile(const GameInstance& game, const PureProfile& profile);
// Checks dimensions, nonnegativity, distinct supports and that every player's
// probabilities sum to one within the game tolerance.
void validateProfile(const GameInstance& game, const MixedProfile& profile);

// Probability-weighted mean of the support strategies.
RationalVector meanStrategy(const MixedStrategy& strategy);

// Coefficients of player i's payoff as an affine function of its own
// variables once the opponents are fixed to (mean) vectors.
struct AffinePayoff {
  Rational constant;
  RationalVector linear;

  Rational evaluate(const Strategy& x) const { return constant + dot(linear, x); }
};

// opponents[j] is ignored for j == player.
AffinePayoff affinePayoff(const GameInstance& game, int player,
                          const std::vector<RationalVector>& opponents);

Rational evaluatePure(const GameInstance& game, const PureProfile& profile, int player);
Rational evaluateMixed(const GameInstance& game, const MixedProfile& profile, int player);

// Bounded integer lower..upper written as lower + sum_k 2^k b_k.
struct BinarizedInteger {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  int numBits = 0;
  // 2^k per bit.
  std::vector<std::int64_t> bitWeights;
  // sum_k 2^k b_k <= upper - lower; absent when numBits == 0.
  std::optional<LinearConstraint> upperBound;

  std::int64_t decode(const Strategy& bits) const;
  Strategy encode(std::int64_t value) const;
};

BinarizedInteger binarizeBoundedInteger(std::int64_t lower, std::int64_t upper);

}  // namespace ipgkit

#endif  // IPGKIT_GAME_H_
