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

#ifndef IPGKIT_ORACLE_H_
#define IPGKIT_ORACLE_H_

#include <vector>

#include "ipgkit/game.h"

namespace ipgkit {

struct BestResponse {
  Strategy strategy;
  Rational value;
};

// Best response of `player` when opponent j plays (the mean of) opponents[j].
// Single-knapsack strategy sets go to the dynamic program, anything else to
// branch-and-bound.
BestResponse bestResponseToMeans(const GameInstance& game, int player,
                                 const std::vector<RationalVector>& opponents);
// The entry of `player` in the profile is ignored.
BestResponse bestResponse(const GameInstance& game, int player, const PureProfile& profile);
BestResponse bestResponse(const GameInstance& game, int player, const MixedProfile& profile);

struct Deviation {
  int player = 0;
  // A feasible best response of `player`.
  Strategy strategy;
  // Best-response value minus the current (expected) payoff.
  Rational improvement;
  // True when the deviation was reported because the current strategy (or
  // one of its support strategies) is infeasible.
  bool membershipFailure = false;
};

struct OracleVerdict {
  bool yes = false;
  std::vector<Deviation> information;
  // max_i (best response - current payoff), floored at 0.
  Rational worstViolation = 0;
};

// Membership and stability steps for every player. `yes` means the profile
// is a tolerance-approximate equilibrium; every violating player is listed.
OracleVerdict improve(const GameInstance& game, const PureProfile& profile);
OracleVerdict improve(const GameInstance& game, const MixedProfile& profile);

// Smallest absolute epsilon for which the profile is an epsilon-equilibrium.
// Throws ErrorCode::kMembership for infeasible profiles.
Rational epsilonOf(const GameInstance& game, const PureProfile& profile);
Rational epsilonOf(const GameInstance& game, const MixedProfile& profile);

}  // namespace ipgkit

#endif  // IPGKIT_ORACLE_H_
