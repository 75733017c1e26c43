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

#ifndef IPGKIT_VERIFY_H_
#define IPGKIT_VERIFY_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "ipgkit/game.h"

namespace ipgkit {

// Exhaustive ground truth for small games. Nothing here calls the solvers
// it is used to check; only the LP kernel is shared.

inline constexpr int kPureEnumerationCap = 24;
inline constexpr int kMixedEnumerationCap = 12;

// Feasible strategies of a set in lexicographic order.
std::vector<Strategy> enumerateStrategies(const StrategySet& set, int maxVars = kPureEnumerationCap);

// All pure equilibria (exact comparisons, no tolerance) in lexicographic order.
std::vector<PureProfile> enumeratePureNE(const GameInstance& game, int cap = kPureEnumerationCap);

// All equilibria found by support enumeration of a two-player game, pure
// ones included, deduplicated to 1e-9 on the probability vectors.
std::vector<MixedProfile> enumerateMixedNE2p(const GameInstance& game,
                                             int cap = kMixedEnumerationCap);

struct EquilibriumSet {
  std::vector<PureProfile> pure;
  std::vector<MixedProfile> mixed;
  bool complete = false;
};

EquilibriumSet enumerateEquilibria(const GameInstance& game);

// Bounded two-player game with payoffs -x1*x2 and x2*x1, where x1 is an
// integer in [1, upper] (or [2, upper] when restricted) and x2 is in {-1, 1}.
GameInstance approximationGame(bool restrictFirstPlayer, std::int64_t upper = 4);
std::pair<std::int64_t, std::int64_t> decodeApproximationProfile(const PureProfile& profile,
                                                                 std::int64_t upper = 4);

struct ApproximationReport {
  std::vector<std::pair<std::int64_t, std::int64_t>> originalEquilibria;
  std::vector<std::pair<std::int64_t, std::int64_t>> approximationEquilibria;
  bool originalHasUniqueOneOne = false;
  bool approximationHasTwoOne = false;
  bool twoOneRejectedByOriginal = false;

  bool passed() const {
    return originalHasUniqueOneOne && approximationHasTwoOne && twoOneRejectedByOriginal;
  }
};

ApproximationReport checkApproximationScenarios();

}  // namespace ipgkit

#endif  // IPGKIT_VERIFY_H_
