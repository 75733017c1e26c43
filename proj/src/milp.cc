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

#include "ipgkit/milp.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ipgkit {

namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
  LpResult relaxation;
  int depth = 0;
  DenseSimplex::WarmStartPtr basis;
};

double maxForm(const LinearProgram& lp, double value) {
  return lp.sense == ObjectiveSense::kMaximize ? value : -value;
}

Rational maxForm(const LinearProgram& lp, const Rational& value) {
  return lp.sense == ObjectiveSense::kMaximize ? value : Rational(-value);
}

}  // namespace

void MilpProblem::validate() const {
  lp.validate();
  for (int j : binaryIndices) {
    if (j < 0 || j >= lp.numVars()) {
      throw Error(ErrorCode::kInvalidArgument, "binary index out of range");
    }
    if (lp.lower[j] < 0 || lp.upper[j] > 1) {
      throw Error(ErrorCode::kInvalidArgument, "binary variable with bounds outside [0,1]");
    }
  }
}

MilpResult solveMilp(const MilpProblem& problem, const MilpOptions& options) {
  problem.validate();
  const auto& lp = problem.lp;
  const int n = lp.numVars();
  DenseSimplex simplex(lp);

  std::vector<bool> is_binary(n, false);
  for (int j : problem.binaryIndices) is_binary[j] = true;
  const bool has_continuous =
      std::count(is_binary.begin(), is_binary.end(), false) > 0;

  std::optional<MilpResult> incumbent;
  Rational incumbent_value;  // maximization form
  double incumbent_bound = -std::numeric_limits<double>::infinity();
  std::int64_t nodes = 0;

  auto solveNode = [&](Node& node, const Node* parent) -> bool {
    if (++nodes > options.nodeLimit) {
      if (incumbent) incumbent->nodes = nodes;
      throw MilpLimitError("branch-and-bound node limit reached", incumbent);
    }
    auto* keep = options.warmStart ? &node.basis : nullptr;
    node.relaxation = parent && parent->basis
                          ? simplex.resolve(*parent->basis, node.lower, node.upper, options.lp, keep)
                          : simplex.solve(node.lower, node.upper, options.lp, keep);
    if (node.relaxation.status == LpStatus::kUnbounded) {
      throw Error(ErrorCode::kNumerical, "unbounded relaxation under finite bounds");
    }
    return node.relaxation.status == LpStatus::kOptimal;
  };

  // Rounds an integral relaxation and certifies it exactly.
  auto acceptIntegral = [&](const Node& node) {
    std::vector<double> lo = node.lower;
    std::vector<double> hi = node.upper;
    RationalVector point(n);
    for (int j = 0; j < n; ++j) {
      if (!is_binary[j]) continue;
      const double rounded = std::round(node.relaxation.point[j]);
      lo[j] = hi[j] = rounded;
      point[j] = static_cast<int>(rounded);
    }
    if (has_continuous) {
      LpOptions certify = options.lp;
      certify.certify = true;
      LpResult fixed = simplex.solve(lo, hi, certify);
      if (fixed.status != LpStatus::kOptimal || !fixed.certified) {
        throw Error(ErrorCode::kNumerical, "could not certify an integral node exactly");
      }
      point = fixed.exactPoint;
    } else {
      for (int j = 0; j < n; ++j) {
        if (point[j] < lp.lower[j] || point[j] > lp.upper[j]) {
          throw Error(ErrorCode::kNumerical, "rounded point violates a bound");
        }
      }
      for (const auto& c : lp.constraints) {
        if (!c.isSatisfiedBy(point)) {
          throw Error(ErrorCode::kNumerical, "rounded point violates a constraint");
        }
      }
    }
    Rational value = dot(lp.objective, point);
    Rational max_value = maxForm(lp, value);
    if (!incumbent || max_value > incumbent_value) {
      incumbent = MilpResult{MilpStatus::kOptimal, std::move(point), std::move(value), 0};
      incumbent_value = max_value;
      incumbent_bound = toDouble(max_value);
    }
  };

  auto branchVariable = [&](const LpResult& relaxation) {
    int best = -1;
    double best_distance = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!is_binary[j]) continue;
      const double v = relaxation.point[j];
      const double frac = v - std::floor(v);
      if (frac <= options.integralityTolerance || frac >= 1.0 - options.integralityTolerance) continue;
      const double distance = std::abs(frac - 0.5);
      if (best < 0 || distance < best_distance) {
        best = j;
        best_distance = distance;
      }
    }
    return best;
  };

  Node root{simplex.lower(), simplex.upper(), {}, 0, nullptr};
  if (!solveNode(root, nullptr)) return MilpResult{MilpStatus::kInfeasible, {}, 0, nodes};

  std::vector<Node> open;
  std::optional<Node> current = std::move(root);
  while (current || !open.empty()) {
    if (!current) {
      // Backtrack: deepest node first, best bound among equally deep nodes.
      auto pick = open.begin();
      for (auto it = open.begin(); it != open.end(); ++it) {
        const double bound = maxForm(lp, it->relaxation.value);
        const double pick_bound = maxForm(lp, pick->relaxation.value);
        if (it->depth > pick->depth || (it->depth == pick->depth && bound > pick_bound)) pick = it;
      }
      current = std::move(*pick);
      open.erase(pick);
    }
    Node node = std::move(*current);
    current.reset();
    const double bound = maxForm(lp, node.relaxation.value);
    if (incumbent && bound <= incumbent_bound + options.pruneTolerance) continue;

    const int var = branchVariable(node.relaxation);
    if (var < 0) {
      acceptIntegral(node);
      continue;
    }
    Node down{node.lower, node.upper, {}, node.depth + 1, nullptr};
    down.upper[var] = 0.0;
    Node up{node.lower, node.upper, {}, node.depth + 1, nullptr};
    up.lower[var] = 1.0;
    const bool down_ok = solveNode(down, &node);
    const bool up_ok = solveNode(up, &node);
    node.basis.reset();
    if (options.onChildBound) {
      if (down_ok) options.onChildBound(bound, maxForm(lp, down.relaxation.value));
      if (up_ok) options.onChildBound(bound, maxForm(lp, up.relaxation.value));
    }
    if (down_ok && up_ok) {
      const double down_bound = maxForm(lp, down.relaxation.value);
      const double up_bound = maxForm(lp, up.relaxation.value);
      if (down_bound > up_bound) {
        open.push_back(std::move(up));
        current = std::move(down);
      } else {
        open.push_back(std::move(down));
        current = std::move(up);
      }
    } else if (down_ok) {
      current = std::move(down);
    } else if (up_ok) {
      current = std::move(up);
    }
  }

  if (!incumbent) return MilpResult{MilpStatus::kInfeasible, {}, 0, nodes};
  incumbent->nodes = nodes;
  return *incumbent;
}

ProductLinearization linearizeProducts(LinearProgram& lp,
                                       const std::vector<std::pair<int, int>>& pairs) {
  ProductLinearization out;
  for (const auto& [j, k] : pairs) {
    if (j < 0 || k < 0 || j >= lp.numVars() || k >= lp.numVars() || j == k) {
      throw Error(ErrorCode::kInvalidArgument, "invalid product pair");
    }
    const int z = lp.addVariable(0, 1);
    out.auxIndices.push_back(z);
    const int width = lp.numVars();
    LinearConstraint le_x{RationalVector(width), Sense::kLessEqual, 0};
    le_x.coeffs[z] = 1;
    le_x.coeffs[j] = -1;
    LinearConstraint le_y{RationalVector(width), Sense::kLessEqual, 0};
    le_y.coeffs[z] = 1;
    le_y.coeffs[k] = -1;
    LinearConstraint ge_sum{RationalVector(width), Sense::kGreaterEqual, -1};
    ge_sum.coeffs[z] = 1;
    ge_sum.coeffs[j] = -1;
    ge_sum.coeffs[k] = -1;
    lp.addConstraint(std::move(le_x));
    lp.addConstraint(std::move(le_y));
    lp.addConstraint(std::move(ge_sum));
  }
  return out;
}

}  // namespace ipgkit
