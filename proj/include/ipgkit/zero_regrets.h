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

#ifndef IPGKIT_ZERO_REGRETS_H_
#define IPGKIT_ZERO_REGRETS_H_

#include <chrono>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "ipgkit/game.h"
#include "ipgkit/milp.h"

namespace ipgkit {

// h(x) = constant + sum_i linear[i].x^i + sum_t (x^first)^T matrix x^second.
struct SelectionFunction {
  struct Bilinear {
    int first = 0;
    int second = 0;
    RationalMatrix matrix;
  };

  Rational constant = 0;
  std::vector<RationalVector> linear;
  std::vector<Bilinear> bilinear;

  static SelectionFunction welfare(const GameInstance& game);
  static SelectionFunction playerPayoff(const GameInstance& game, int player);

  void validate(const GameInstance& game) const;
  Rational evaluate(const PureProfile& profile) const;
};

// Variable layout of the joint space: every player's binaries, followed by
// one product variable per interacting pair of binaries (those appearing in
// payoffs first, then those only in the selection function).
class JointLayout {
 public:
  explicit JointLayout(const GameInstance& game, const SelectionFunction* selection = nullptr);

  int width() const { return width_; }
  int offset(int player) const { return offsets_.at(player); }
  // Index of the variable for x^p_a * x^q_b (p != q).
  int product(int p, int a, int q, int b) const;
  // (binary index, binary index, product index) triples in index order.
  const std::vector<std::tuple<int, int, int>>& products() const { return product_list_; }

  RationalVector jointPoint(const PureProfile& profile) const;
  PureProfile decode(const GameInstance& game, const RationalVector& point) const;

 private:
  void addProduct(int p, int a, int q, int b);

  std::vector<int> offsets_;
  int width_ = 0;
  std::map<std::tuple<int, int, int, int>, int> product_index_;
  std::vector<std::tuple<int, int, int>> product_list_;
};

// f^owner(x^owner; x^-owner) >= f^owner(deviation; x^-owner), linear in the
// joint variables and products. Valid for every pure equilibrium.
struct EquilibriumCut {
  int owner = 0;
  Strategy deviation;
  LinearConstraint inequality;

  // Exact slack at a pure profile; nonnegative iff the cut holds.
  Rational slackAt(const JointLayout& layout, const PureProfile& profile) const;
};

EquilibriumCut makeCut(const GameInstance& game, const JointLayout& layout, int player,
                       const Strategy& deviation);
// Uses the payoff-only layout; buildMasterMilp pads such cuts when the
// selection function adds products.
EquilibriumCut makeCut(const GameInstance& game, int player, const Strategy& deviation);

MilpProblem buildMasterMilp(const GameInstance& game, const SelectionFunction& selection,
                            const std::vector<EquilibriumCut>& cuts);

struct ZeroRegretsOptions {
  int maxIterations = 10000;
  bool epsilonTrack = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  MilpOptions milp;
};

struct ZeroRegretsResult {
  enum class Status { kOptimalPureNE, kNoPureNE, kIterationLimit, kTimeLimit };
  Status status = Status::kIterationLimit;
  // The selected equilibrium, or on a limit the tracked best candidate.
  std::optional<PureProfile> profile;
  Rational hValue;
  Rational epsilon;
  int iterations = 0;
  // Every cut generated; for kNoPureNE this is the emptiness certificate.
  std::vector<EquilibriumCut> cuts;
};

// Maximizes the selection function over pure equilibria by cutting off
// unstable master solutions with equilibrium inequalities.
ZeroRegretsResult solveZeroRegrets(const GameInstance& game, const SelectionFunction& selection,
                                   const ZeroRegretsOptions& options = {});

}  // namespace ipgkit

#endif  // IPGKIT_ZERO_REGRETS_H_
