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

#ifndef IPGKIT_CNG_H_
#define IPGKIT_CNG_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipgkit/game.h"

namespace ipgkit {

// Defender/attacker resource-protection game. Player 0 is the defender
// (x_i = 1 protects resource i), player 1 the attacker (alpha_i = 1 attacks).
struct CngInstance {
  RationalVector defenderCriticality;  // p^d
  RationalVector attackerCriticality;  // p^a
  std::vector<std::int64_t> defenderCost;  // d
  std::vector<std::int64_t> attackerCost;  // a
  std::int64_t defenderBudget = 0;  // D
  std::int64_t attackerBudget = 0;  // A
  Rational delta;    // attacked, unprotected
  Rational eta;      // attacked, protected
  Rational epsilon;  // protected, not attacked
  Rational gamma;    // attacker's opportunity cost

  int size() const { return static_cast<int>(defenderCriticality.size()); }
  // Throws ErrorCode::kInvalidArgument on violated invariants.
  void validate() const;
};

// Expands the per-resource cases into a two-player bilinear game.
GameInstance toGameInstance(const CngInstance& cng, const std::string& name = "cng");

// Payoffs straight from the four per-resource outcomes (normal operations,
// successful attack, mitigated attack, mitigation without attack).
Rational defenderPayoff(const CngInstance& cng, const Strategy& protect, const Strategy& attack);
Rational attackerPayoff(const CngInstance& cng, const Strategy& protect, const Strategy& attack);

bool withinBudget(const std::vector<std::int64_t>& cost, std::int64_t budget, const Strategy& x);

enum class TieBreak { kOptimistic, kPessimistic };

struct McnpOptions {
  TieBreak tieBreak = TieBreak::kOptimistic;
  int enumerationCap = 22;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct McnpSolution {
  Strategy protect;
  Strategy attack;
  Rational leaderValue;
  std::int64_t leaderStrategies = 0;
  // False when the deadline stopped the enumeration early.
  bool complete = true;
};

// Sequential defender-then-attacker game solved by enumerating the budget
// feasible defender strategies; the attacker answers with a lexicographic
// knapsack (own payoff, then +/- the defender's payoff).
McnpSolution solveMcnp(const CngInstance& cng, const McnpOptions& options = {});

// max f^d over the joint budget-feasible set.
Rational bestDefenderOutcome(const CngInstance& cng);

Rational priceOfStability(const CngInstance& cng, const Strategy& protect, const Strategy& attack);
Rational priceOfStability(const CngInstance& cng, const Strategy& protect, const Strategy& attack,
                          const Rational& bestOutcome);

struct GeneratorProfile {
  std::int64_t criticalityMin = 1;
  std::int64_t criticalityMax = 100;
  std::int64_t costMin = 1;
  std::int64_t costMax = 25;
  // Budget = ceil(fraction * total cost), fraction drawn from this list.
  std::vector<Rational> budgetFractions{Rational(3, 10), Rational(9, 20), Rational(3, 5)};
  // delta, eta, epsilon and gamma are multiples of 1/scalarGrid.
  std::int64_t scalarGrid = 100;
  Rational gammaMax{3, 10};

  void validate() const;
};

// Deterministic per (seed, size, index).
std::vector<CngInstance> generateInstances(int size, int count, std::uint64_t seed,
                                           const GeneratorProfile& profile = {});

}  // namespace ipgkit

#endif  // IPGKIT_CNG_H_
