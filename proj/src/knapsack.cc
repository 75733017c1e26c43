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

#include "ipgkit/knapsack.h"

namespace ipgkit {

namespace {

void checkShape(const std::vector<std::int64_t>& weights, std::int64_t capacity, std::int64_t stateCap) {
  if (capacity < 0) throw Error(ErrorCode::kInvalidArgument, "knapsack: negative capacity");
  for (auto w : weights) {
    if (w < 0) throw Error(ErrorCode::kInvalidArgument, "knapsack: negative weight");
  }
  const std::int64_t width = capacity + 1;
  if (width > stateCap || static_cast<std::int64_t>(weights.size()) * width > stateCap) {
    throw Error(ErrorCode::kLimitExceeded, "knapsack: dynamic-programming table exceeds the state cap");
  }
}

// best[c] holds the lexicographically best (primary, secondary) pair using
// capacity c; an item replaces the entry only on strict improvement.
template <typename Num>
void runDp(const std::vector<std::int64_t>& weights, std::int64_t capacity, const std::vector<Num>& primary,
           const std::vector<Num>& secondary, std::vector<std::pair<Num, Num>>& best,
           std::vector<std::vector<char>>& take) {
  const std::size_t n = weights.size();
  best.assign(capacity + 1, {Num(0), Num(0)});
  take.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    take[k].assign(capacity + 1, 0);
    const std::int64_t w = weights[k];
    if (w > capacity) continue;
    for (std::int64_t c = capacity; c >= w; --c) {
      const auto& base = best[c - w];
      Num p = base.first + primary[k];
      auto& current = best[c];
      if (p > current.first || (p == current.first && base.second + secondary[k] > current.second)) {
        current.second = base.second + secondary[k];
        current.first = std::move(p);
        take[k][c] = 1;
      }
    }
  }
}

Strategy reconstruct(const std::vector<std::int64_t>& weights, std::int64_t capacity,
                     const std::vector<std::vector<char>>& take) {
  Strategy selection(weights.size(), 0);
  std::int64_t c = capacity;
  for (std::size_t k = weights.size(); k-- > 0;) {
    if (take[k][c]) {
      selection[k] = 1;
      c -= weights[k];
    }
  }
  return selection;
}

}  // namespace

KnapsackSolution solveKnapsack(const KnapsackProblem& problem, std::int64_t stateCap) {
  const std::size_t n = problem.weights.size();
  if (problem.primaryProfit.size() != n ||
      (problem.secondaryProfit && problem.secondaryProfit->size() != n)) {
    throw Error(ErrorCode::kDimensionMismatch, "knapsack: profit and weight lengths differ");
  }
  checkShape(problem.weights, problem.capacity, stateCap);

  const RationalVector secondary = problem.secondaryProfit ? *problem.secondaryProfit : RationalVector(n, Rational(0));
  std::vector<std::vector<char>> take;
  auto fast_primary = scaleToIntegers(problem.primaryProfit);
  auto fast_secondary = scaleToIntegers(secondary);
  if (fast_primary && fast_secondary) {
    std::vector<std::pair<std::int64_t, std::int64_t>> best;
    runDp(problem.weights, problem.capacity, *fast_primary, *fast_secondary, best, take);
  } else {
    std::vector<std::pair<Rational, Rational>> best;
    runDp(problem.weights, problem.capacity, problem.primaryProfit, secondary, best, take);
  }

  KnapsackSolution solution;
  solution.selection = reconstruct(problem.weights, problem.capacity, take);
  solution.primaryValue = dot(problem.primaryProfit, solution.selection);
  solution.secondaryValue = dot(secondary, solution.selection);
  return solution;
}

IntegerKnapsack::IntegerKnapsack(std::vector<std::int64_t> weights, std::int64_t capacity, std::int64_t stateCap)
    : weights_(std::move(weights)), capacity_(capacity) {
  checkShape(weights_, capacity_, stateCap);
}

const Strategy& IntegerKnapsack::solve(const std::vector<std::int64_t>& primary,
                                       const std::vector<std::int64_t>& secondary) {
  if (primary.size() != weights_.size() || secondary.size() != weights_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "knapsack: profit and weight lengths differ");
  }
  runDp(weights_, capacity_, primary, secondary, best_, take_);
  selection_ = reconstruct(weights_, capacity_, take_);
  return selection_;
}

}  // namespace ipgkit
