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

#ifndef IPGKIT_KNAPSACK_H_
#define IPGKIT_KNAPSACK_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ipgkit/rational.h"

namespace ipgkit {

struct KnapsackProblem {
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
  RationalVector primaryProfit;
  // Tie-break objective among primary-optimal selections.
  std::optional<RationalVector> secondaryProfit;
};

struct KnapsackSolution {
  Strategy selection;
  Rational primaryValue;
  Rational secondaryValue;
};

// Default bound on items * (capacity + 1) for the dynamic-programming table.
inline constexpr std::int64_t kDefaultKnapsackStateCap = std::int64_t{1} << 26;

// Lexicographic (primary, secondary) maximization over {s : w.s <= capacity}.
// Among selections with equal value pairs the one found first wins, which is
// the selection that leaves later items out.
KnapsackSolution solveKnapsack(const KnapsackProblem& problem,
                               std::int64_t stateCap = kDefaultKnapsackStateCap);

// Integer-profit solver for repeated solves over fixed weights, with the
// same tie rules as solveKnapsack. Callers keep profit sums within int64.
class IntegerKnapsack {
 public:
  IntegerKnapsack(std::vector<std::int64_t> weights, std::int64_t capacity,
                  std::int64_t stateCap = kDefaultKnapsackStateCap);

  const Strategy& solve(const std::vector<std::int64_t>& primary, const std::vector<std::int64_t>& secondary);

 private:
  std::vector<std::int64_t> weights_;
  std::int64_t capacity_;
  std::vector<std::pair<std::int64_t, std::int64_t>> best_;
  std::vector<std::vector<char>> take_;
  Strategy selection_;
};

}  // namespace ipgkit

#endif  // IPGKIT_KNAPSACK_H_
