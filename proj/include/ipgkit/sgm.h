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

#ifndef IPGKIT_SGM_H_
#define IPGKIT_SGM_H_

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "ipgkit/game.h"
#include "ipgkit/oracle.h"

namespace ipgkit {

// Inner approximation of a two-player game: a growing, duplicate-free list of
// feasible pure strategies per player.
class SampledGame {
 public:
  explicit SampledGame(int numPlayers) : samples_(numPlayers) {}

  const std::vector<Strategy>& sample(int player) const { return samples_.at(player); }
  int numPlayers() const { return static_cast<int>(samples_.size()); }
  int iteration() const { return iteration_; }
  const std::vector<std::pair<int, Strategy>>& history() const { return history_; }

  // Returns false when the strategy is already sampled.
  bool add(int player, const Strategy& strategy);
  void nextIteration() { ++iteration_; }

 private:
  std::vector<std::vector<Strategy>> samples_;
  std::vector<std::pair<int, Strategy>> history_;
  int iteration_ = 0;
};

// Each player starts from its best response to an all-zeros opponent.
SampledGame initializeSample(const GameInstance& game);

// Mixed equilibrium of the sampled game by support enumeration: supports by
// increasing total size, then increasing imbalance, then lexicographically.
// Probabilities are exact.
MixedProfile playSampled(const GameInstance& game, const SampledGame& sample);
// As above, but gives up and returns nullopt once the deadline passes.
std::optional<MixedProfile> playSampled(const GameInstance& game, const SampledGame& sample,
                                        std::optional<std::chrono::steady_clock::time_point> deadline);

struct SgmOptions {
  int maxIterations = 1000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SgmResult {
  enum class Status { kEquilibrium, kIterationLimit, kTimeLimit };
  Status status = Status::kIterationLimit;
  // The certified equilibrium; on an iteration limit the lowest-epsilon
  // profile seen, on a time limit the last sampled-game equilibrium.
  MixedProfile profile;
  Rational epsilon;
  int iterations = 0;
  SampledGame sample{2};
};

SgmResult solveSgm(const GameInstance& game, const SgmOptions& options = {});

}  // namespace ipgkit

#endif  // IPGKIT_SGM_H_
