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

#ifndef IPGKIT_MILP_H_
#define IPGKIT_MILP_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ipgkit/lp.h"

namespace ipgkit {

struct MilpProblem {
  LinearProgram lp;
  std::vector<int> binaryIndices;

  void validate() const;
};

enum class MilpStatus { kOptimal, kInfeasible };

struct MilpResult {
  MilpStatus status = MilpStatus::kInfeasible;
  // Exact point: binaries are 0/1, continuous parts certified by an exact
  // basis re-solve.
  RationalVector point;
  Rational value;
  std::int64_t nodes = 0;
};

struct MilpOptions {
  std::int64_t nodeLimit = 2'000'000;
  double integralityTolerance = 1e-9;
  // Nodes whose bound does not beat the incumbent by more than this are pruned.
  double pruneTolerance = 1e-9;
  // Invoked for every child node with (parent bound, child bound), both in
  // maximization form. Used to check bound monotonicity.
  std::function<void(double, double)> onChildBound;
  // Re-optimize children from the parent's final tableau.
  bool warmStart = true;
  LpOptions lp;
};

// Raised when the node limit is hit; carries the incumbent when one exists.
class MilpLimitError : public Error {
 public:
  MilpLimitError(const std::string& message, std::optional<MilpResult> incumbent)
      : Error(ErrorCode::kLimitExceeded, message), incumbent_(std::move(incumbent)) {}
  const std::optional<MilpResult>& incumbent() const { return incumbent_; }

 private:
  std::optional<MilpResult> incumbent_;
};

// Depth-first branch-and-bound over the binary indices, branching on the most
// fractional variable (lowest index on ties).
MilpResult solveMilp(const MilpProblem& problem, const MilpOptions& options = {});

struct ProductLinearization {
  // Index of z for each requested pair, in request order.
  std::vector<int> auxIndices;
};

// For every pair (j, k) adds z in [0, 1] with z <= x_j, z <= x_k and
// z >= x_j + x_k - 1, so z = x_j x_k whenever x_j and x_k are binary.
ProductLinearization linearizeProducts(LinearProgram& lp,
                                       const std::vector<std::pair<int, int>>& pairs);

}  // namespace ipgkit

#endif  // IPGKIT_MILP_H_
