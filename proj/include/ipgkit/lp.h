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

#ifndef IPGKIT_LP_H_
#define IPGKIT_LP_H_

#include <memory>
#include <vector>

#include "ipgkit/game.h"
#include "ipgkit/rational.h"

namespace ipgkit {

enum class ObjectiveSense { kMaximize, kMinimize };

// Linear program over box-bounded variables. Every bound must be finite.
struct LinearProgram {
  ObjectiveSense sense = ObjectiveSense::kMaximize;
  RationalVector objective;
  std::vector<LinearConstraint> constraints;
  RationalVector lower;
  RationalVector upper;

  int numVars() const { return static_cast<int>(objective.size()); }
  // Appends a variable and widens every existing constraint; returns its index.
  int addVariable(Rational lo, Rational hi, Rational cost = 0);
  void addConstraint(LinearConstraint constraint);
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpOptions {
  // Re-solve the final basis in exact arithmetic and check the point.
  bool certify = false;
  int iterationLimit = 200000;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degeneracyThreshold = 50;
  double feasibilityTolerance = 1e-9;
  double optimalityTolerance = 1e-9;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> point;
  double value = 0.0;
  // Set only when LpOptions::certify was requested and the basis re-solve
  // produced a point satisfying every constraint and bound exactly.
  bool certified = false;
  RationalVector exactPoint;
  Rational exactValue;
  int iterations = 0;
};

// Bounded-variable primal simplex on a dense tableau. The constraint data is
// converted to double once; bounds may be overridden per solve, which is what
// branch-and-bound uses.
class DenseSimplex {
 public:
  explicit DenseSimplex(const LinearProgram& lp);

  // Final tableau of a solve, reusable after bound changes.
  struct WarmStart;
  using WarmStartPtr = std::shared_ptr<const WarmStart>;

  LpResult solve(const LpOptions& options = {}) const;
  // When basis is non-null and the solve is optimal, the final tableau is stored there.
  LpResult solve(const std::vector<double>& lower, const std::vector<double>& upper,
                 const LpOptions& options = {}, WarmStartPtr* basis = nullptr) const;
  // Dual simplex from an earlier optimal tableau of this program. Falls back to
  // a cold solve when the dual iterations stall or the result drifts.
  LpResult resolve(const WarmStart& from, const std::vector<double>& lower, const std::vector<double>& upper,
                   const LpOptions& options = {}, WarmStartPtr* basis = nullptr) const;

  int numVars() const { return num_vars_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

 private:
  bool checkBounds(const std::vector<double>& lower, const std::vector<double>& upper) const;
  std::vector<double> phase2Costs() const;
  LpResult finish(const std::shared_ptr<WarmStart>& start, const std::vector<double>& lower,
                  const std::vector<double>& upper, const LpOptions& options, int iterations,
                  WarmStartPtr* basis) const;

  const LinearProgram* lp_;
  int num_vars_;
  int num_rows_;
  std::vector<std::vector<double>> matrix_;
  std::vector<double> rhs_;
  std::vector<Sense> senses_;
  std::vector<double> cost_;  // maximization form
  std::vector<double> lower_;
  std::vector<double> upper_;
};

LpResult solveLp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace ipgkit

#endif  // IPGKIT_LP_H_
