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

#include <algorithm>
#include <set>

namespace ipgkit {

std::string_view senseSymbol(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "?";
}

bool LinearConstraint::isSatisfied(const Rational& lhs) const {
  switch (sense) {
    case Sense::kLessEqual: return lhs <= rhs;
    case Sense::kGreaterEqual: return lhs >= rhs;
    case Sense::kEqual: return lhs == rhs;
  }
  return false;
}

bool LinearConstraint::isSatisfiedBy(const Strategy& x) const {
  return isSatisfied(dot(coeffs, x));
}

bool LinearConstraint::isSatisfiedBy(const RationalVector& x) const {
  return isSatisfied(dot(coeffs, x));
}

Rational LinearConstraint::slack(const RationalVector& x) const {
  Rational lhs = dot(coeffs, x);
  switch (sense) {
    case Sense::kLessEqual: return rhs - lhs;
    case Sense::kGreaterEqual: return lhs - rhs;
    case Sense::kEqual: return -abs(lhs - rhs);
  }
  return 0;
}

StrategySet::StrategySet(int num_vars, std::vector<LinearConstraint> constraints)
    : num_vars_(num_vars), constraints_(std::move(constraints)) {
  if (num_vars_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "strategy set needs at least one variable");
  }
  for (const auto& c : constraints_) {
    if (static_cast<int>(c.coeffs.size()) != num_vars_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "constraint has " + std::to_string(c.coeffs.size()) +
                      " coefficients, expected " + std::to_string(num_vars_));
    }
  }
}

bool StrategySet::isSingleKnapsack() const {
  if (constraints_.size() != 1) return false;
  const auto& c = constraints_.front();
  if (c.sense != Sense::kLessEqual || c.rhs < 0) return false;
  return std::all_of(c.coeffs.begin(), c.coeffs.end(), [](const Rational& w) {
    return w >= 0 && boost::multiprecision::denominator(w) == 1;
  });
}

namespace {

void checkBinary(const Strategy& x, int expected, const std::string& what) {
  if (static_cast<int>(x.size()) != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                what + " has length " + std::to_string(x.size()) + ", expected " +
                    std::to_string(expected));
  }
  for (int v : x) {
    if (v != 0 && v != 1) throw Error(ErrorCode::kInvalidArgument, what + " is not binary");
  }
}

RationalVector toRational(const Strategy& x) { return RationalVector(x.begin(), x.end()); }

}  // namespace

bool isFeasible(const StrategySet& set, const Strategy& x) {
  checkBinary(x, set.numVars(), "strategy");
  return std::all_of(set.constraints().begin(), set.constraints().end(),
                     [&](const LinearConstraint& c) { return c.isSatisfiedBy(x); });
}

GameInstance::GameInstance(std::string name, std::vector<Player> players, Rational tolerance)
    : name_(std::move(name)), players_(std::move(players)), tolerance_(std::move(tolerance)) {
  const int n = numPlayers();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "a game needs at least two players");
  if (tolerance_ < 0) throw Error(ErrorCode::kInvalidArgument, "tolerance must be nonnegative");
  for (int i = 0; i < n; ++i) {
    const auto& set = players_[i].strategies;
    const auto& pay = players_[i].payoff;
    const std::string who = "player " + std::to_string(i);
    if (set.numVars() < 1) throw Error(ErrorCode::kInvalidArgument, who + " has no variables");
    if (static_cast<int>(pay.ownLinear.size()) != set.numVars()) {
      throw Error(ErrorCode::kDimensionMismatch, who + ": ownLinear has wrong length");
    }
    for (const auto& [j, e] : pay.oppLinear) {
      if (j == i || j < 0 || j >= n) {
        throw Error(ErrorCode::kInvalidArgument, who + ": oppLinear refers to invalid player " + std::to_string(j));
      }
      if (static_cast<int>(e.size()) != players_[j].strategies.numVars()) {
        throw Error(ErrorCode::kDimensionMismatch, who + ": oppLinear[" + std::to_string(j) + "] has wrong length");
      }
    }
    for (const auto& [j, q] : pay.bilinear) {
      if (j == i || j < 0 || j >= n) {
        throw Error(ErrorCode::kInvalidArgument, who + ": bilinear refers to invalid player " + std::to_string(j));
      }
      if (static_cast<int>(q.size()) != set.numVars()) {
        throw Error(ErrorCode::kDimensionMismatch, who + ": bilinear[" + std::to_string(j) + "] has wrong row count");
      }
      for (const auto& row : q) {
        if (static_cast<int>(row.size()) != players_[j].strategies.numVars()) {
          throw Error(ErrorCode::kDimensionMismatch, who + ": bilinear[" + std::to_string(j) + "] has wrong column count");
        }
      }
    }
  }
}

int GameInstance::totalVars() const {
  int total = 0;
  for (const auto& p : players_) total += p.strategies.numVars();
  return total;
}

MixedProfile MixedProfile::pointMass(const PureProfile& profile) {
  MixedProfile mixed;
  for (const auto& x : profile.strategies) mixed.players.push_back({{x}, {Rational(1)}});
  return mixed;
}

bool MixedProfile::isPure() const {
  return std::all_of(players.begin(), players.end(), [](const MixedStrategy& s) {
    return s.support.size() == 1;
  });
}

PureProfile MixedProfile::toPure() const {
  if (!isPure()) throw Error(ErrorCode::kInvalidArgument, "profile is not pure");
  PureProfile pure;
  for (const auto& s : players) pure.strategies.push_back(s.support.front());
  return pure;
}

void validateProfile(const GameInstance& game, const PureProfile& profile) {
  if (static_cast<int>(profile.strategies.size()) != game.numPlayers()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile covers " + std::to_string(profile.strategies.size()) +
                                                   " players, game has " + std::to_string(game.numPlayers()));
  }
  for (int i = 0; i < game.numPlayers(); ++i) {
    checkBinary(profile.strategies[i], game.numVars(i), "strategy of player " + std::to_string(i));
  }
}

void validateProfile(const GameInstance& game, const MixedProfile& profile) {
  if (static_cast<int>(profile.players.size()) != game.numPlayers()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile covers " + std::to_string(profile.players.size()) +
                                                   " players, game has " + std::to_string(game.numPlayers()));
  }
  for (int i = 0; i < game.numPlayers(); ++i) {
    const auto& s = profile.players[i];
    const std::string who = "player " + std::to_string(i);
    if (s.support.empty() || s.support.size() != s.probabilities.size()) {
      throw Error(ErrorCode::kInvalidArgument, who + ": support and probabilities disagree");
    }
    Rational total = 0;
    for (std::size_t k = 0; k < s.support.size(); ++k) {
      checkBinary(s.support[k], game.numVars(i), who + " support strategy");
      if (s.probabilities[k] < 0) throw Error(ErrorCode::kInvalidArgument, who + ": negative probability");
      total += s.probabilities[k];
    }
    if (abs(total - 1) > game.tolerance()) {
      throw Error(ErrorCode::kInvalidArgument, who + ": probabilities sum to " + toString(total));
    }
    std::set<Strategy> distinct(s.support.begin(), s.support.end());
    if (distinct.size() != s.support.size()) {
      throw Error(ErrorCode::kInvalidArgument, who + ": repeated support strategy");
    }
  }
}

RationalVector meanStrategy(const MixedStrategy& strategy) {
  if (strategy.support.empty()) return {};
  RationalVector mean(strategy.support.front().size(), Rational(0));
  for (std::size_t k = 0; k < strategy.support.size(); ++k) {
    const auto& p = strategy.probabilities[k];
    if (p == 0) continue;
    for (std::size_t v = 0; v < mean.size(); ++v) {
      if (strategy.support[k][v] != 0) mean[v] += p;
    }
  }
  return mean;
}

AffinePayoff affinePayoff(const GameInstance& game, int player,
                          const std::vector<RationalVector>& opponents) {
  if (static_cast<int>(opponents.size()) != game.numPlayers()) {
    throw Error(ErrorCode::kDimensionMismatch, "opponent vectors do not cover every player");
  }
  const auto& pay = game.payoff(player);
  AffinePayoff out{pay.constant, pay.ownLinear};
  for (const auto& [j, e] : pay.oppLinear) out.constant += dot(e, opponents[j]);
  for (const auto& [j, q] : pay.bilinear) {
    const auto& y = opponents[j];
    if (y.size() != q.front().size()) {
      throw Error(ErrorCode::kDimensionMismatch, "opponent vector has wrong length");
    }
    for (std::size_t r = 0; r < q.size(); ++r) out.linear[r] += dot(q[r], y);
  }
  return out;
}

Rational evaluatePure(const GameInstance& game, const PureProfile& profile, int player) {
  validateProfile(game, profile);
  if (player < 0 || player >= game.numPlayers()) {
    throw Error(ErrorCode::kInvalidArgument, "no such player " + std::to_string(player));
  }
  std::vector<RationalVector> points;
  points.reserve(profile.strategies.size());
  for (const auto& x : profile.strategies) points.push_back(toRational(x));
  return affinePayoff(game, player, points).evaluate(profile.strategies[player]);
}

Rational evaluateMixed(const GameInstance& game, const MixedProfile& profile, int player) {
  validateProfile(game, profile);
  if (player < 0 || player >= game.numPlayers()) {
    throw Error(ErrorCode::kInvalidArgument, "no such player " + std::to_string(player));
  }
  std::vector<RationalVector> means;
  means.reserve(profile.players.size());
  for (const auto& s : profile.players) means.push_back(meanStrategy(s));
  AffinePayoff affine = affinePayoff(game, player, means);
  return affine.constant + dot(affine.linear, means[player]);
}

std::int64_t BinarizedInteger::decode(const Strategy& bits) const {
  if (static_cast<int>(bits.size()) != numBits) {
    throw Error(ErrorCode::kDimensionMismatch, "wrong number of bits");
  }
  std::int64_t value = lower;
  for (int k = 0; k < numBits; ++k) value += bitWeights[k] * bits[k];
  return value;
}

Strategy BinarizedInteger::encode(std::int64_t value) const {
  if (value < lower || value > upper) throw Error(ErrorCode::kInvalidArgument, "value out of range");
  Strategy bits(numBits, 0);
  std::int64_t code = value - lower;
  for (int k = 0; k < numBits; ++k) bits[k] = static_cast<int>((code >> k) & 1);
  return bits;
}

BinarizedInteger binarizeBoundedInteger(std::int64_t lower, std::int64_t upper) {
  if (lower > upper) {
    throw Error(ErrorCode::kInvalidArgument, "binarize: lower bound exceeds upper bound");
  }
  BinarizedInteger out;
  out.lower = lower;
  out.upper = upper;
  const std::uint64_t range = static_cast<std::uint64_t>(upper - lower);
  while (out.numBits < 63 && (std::uint64_t{1} << out.numBits) <= range) ++out.numBits;
  for (int k = 0; k < out.numBits; ++k) out.bitWeights.push_back(std::int64_t{1} << k);
  if (out.numBits > 0) {
    LinearConstraint bound;
    for (auto w : out.bitWeights) bound.coeffs.emplace_back(w);
    bound.sense = Sense::kLessEqual;
    bound.rhs = Rational(static_cast<std::int64_t>(range));
    out.upperBound = std::move(bound);
  }
  return out;
}

}  // namespace ipgkit
