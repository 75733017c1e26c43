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

#include "ipgkit/lp.h"

#include <cmath>
#include <limits>
#include <optional>

namespace ipgkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTolerance = 1e-11;

enum class VarState { kBasic, kAtLower, kAtUpper };

// Column layout: [structural | slack | artificial].
struct Tableau {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<double>> t;  // B^-1 [A | I | D]
  std::vector<double> beta;            // B^-1 b
  std::vector<int> basis;              // basic column per row
  std::vector<VarState> state;
  std::vector<double> lo, hi, value;
};

void pivot(Tableau& tab, int row, int col) {
  auto& prow = tab.t[row];
  const double inv = 1.0 / prow[col];
  for (double& v : prow) v *= inv;
  tab.beta[row] *= inv;
  prow[col] = 1.0;
  for (int r = 0; r < tab.rows; ++r) {
    if (r == row) continue;
    const double factor = tab.t[r][col];
    if (factor == 0.0) continue;
    auto& target = tab.t[r];
    for (int c = 0; c < tab.cols; ++c) {
      if (prow[c] != 0.0) target[c] -= factor * prow[c];
    }
    target[col] = 0.0;
    tab.beta[r] -= factor * tab.beta[row];
  }
}

void refreshBasicValues(Tableau& tab) {
  for (int r = 0; r < tab.rows; ++r) {
    double v = tab.beta[r];
    const auto& row = tab.t[r];
    for (int c = 0; c < tab.cols; ++c) {
      if (tab.state[c] != VarState::kBasic && row[c] != 0.0 && tab.value[c] != 0.0) {
        v -= row[c] * tab.value[c];
      }
    }
    tab.value[tab.basis[r]] = v;
  }
}

enum class PhaseOutcome { kOptimal, kUnbounded, kIterationLimit };

PhaseOutcome runPhase(Tableau& tab, const std::vector<double>& cost, const LpOptions& options,
                      int& iterations) {
  int degenerate_run = 0;
  std::vector<double> reduced(tab.cols);
  while (true) {
    if (iterations >= options.iterationLimit) return PhaseOutcome::kIterationLimit;
    const bool bland = degenerate_run >= options.degeneracyThreshold;

    for (int c = 0; c < tab.cols; ++c) reduced[c] = cost[c];
    for (int r = 0; r < tab.rows; ++r) {
      const double cb = cost[tab.basis[r]];
      if (cb == 0.0) continue;
      const auto& row = tab.t[r];
      for (int c = 0; c < tab.cols; ++c) {
        if (row[c] != 0.0) reduced[c] -= cb * row[c];
      }
    }

    int entering = -1;
    double best = 0.0;
    for (int c = 0; c < tab.cols; ++c) {
      if (tab.state[c] == VarState::kBasic || tab.lo[c] == tab.hi[c]) continue;
      double gain = 0.0;
      if (tab.state[c] == VarState::kAtLower && reduced[c] > options.optimalityTolerance) {
        gain = reduced[c];
      } else if (tab.state[c] == VarState::kAtUpper && reduced[c] < -options.optimalityTolerance) {
        gain = -reduced[c];
      } else {
        continue;
      }
      if (bland) {
        entering = c;
        break;
      }
      if (gain > best) {
        best = gain;
        entering = c;
      }
    }
    if (entering < 0) return PhaseOutcome::kOptimal;

    const double dir = tab.state[entering] == VarState::kAtLower ? 1.0 : -1.0;
    double step = tab.hi[entering] - tab.lo[entering];
    int leaving_row = -1;
    double leaving_alpha = 0.0;
    for (int r = 0; r < tab.rows; ++r) {
      const double alpha = dir * tab.t[r][entering];
      const int k = tab.basis[r];
      double limit = kInf;
      if (alpha > kPivotTolerance) {
        if (tab.lo[k] > -kInf) limit = std::max(0.0, (tab.value[k] - tab.lo[k]) / alpha);
      } else if (alpha < -kPivotTolerance) {
        if (tab.hi[k] < kInf) limit = std::max(0.0, (tab.hi[k] - tab.value[k]) / -alpha);
      } else {
        continue;
      }
      if (limit == kInf) continue;
      bool take = false;
      if (limit < step - 1e-12) {
        take = true;
      } else if (limit <= step + 1e-12 && leaving_row >= 0) {
        take = bland ? k < tab.basis[leaving_row] : std::abs(alpha) > std::abs(leaving_alpha);
      }
      if (take) {
        step = limit;
        leaving_row = r;
        leaving_alpha = alpha;
      }
    }
    if (step == kInf) return PhaseOutcome::kUnbounded;

    ++iterations;
    degenerate_run = step < 1e-12 ? degenerate_run + 1 : 0;
    if (leaving_row < 0) {
      // Bound flip.
      tab.state[entering] =
          tab.state[entering] == VarState::kAtLower ? VarState::kAtUpper : VarState::kAtLower;
      tab.value[entering] =
          tab.state[entering] == VarState::kAtLower ? tab.lo[entering] : tab.hi[entering];
    } else {
      const int leaving = tab.basis[leaving_row];
      tab.state[leaving] = leaving_alpha > 0 ? VarState::kAtLower : VarState::kAtUpper;
      tab.value[leaving] = leaving_alpha > 0 ? tab.lo[leaving] : tab.hi[leaving];
      tab.value[entering] += dir * step;
      pivot(tab, leaving_row, entering);
      tab.basis[leaving_row] = entering;
      tab.state[entering] = VarState::kBasic;
    }
    refreshBasicValues(tab);
  }
}

enum class DualOutcome { kFeasible, kInfeasible, kIterationLimit };

// Bounded dual simplex from a dual feasible basis whose basic values may
// violate their bounds.
DualOutcome runDual(Tableau& tab, const std::vector<double>& cost, const LpOptions& options,
                    int& iterations, int limit) {
  constexpr double kEligible = 1e-9;
  std::vector<double> reduced(tab.cols);
  while (true) {
    int row = -1;
    double worst = 0.0;
    bool below = false;
    for (int r = 0; r < tab.rows; ++r) {
      const int k = tab.basis[r];
      const double v = tab.value[k];
      const double tol = options.feasibilityTolerance * (1.0 + std::abs(v));
      if (v < tab.lo[k] - tol && tab.lo[k] - v > worst) {
        worst = tab.lo[k] - v;
        row = r;
        below = true;
      } else if (v > tab.hi[k] + tol && v - tab.hi[k] > worst) {
        worst = v - tab.hi[k];
        row = r;
        below = false;
      }
    }
    if (row < 0) return DualOutcome::kFeasible;
    if (iterations >= limit) return DualOutcome::kIterationLimit;

    for (int c = 0; c < tab.cols; ++c) reduced[c] = cost[c];
    for (int r = 0; r < tab.rows; ++r) {
      const double cb = cost[tab.basis[r]];
      if (cb == 0.0) continue;
      const auto& trow = tab.t[r];
      for (int c = 0; c < tab.cols; ++c) {
        if (trow[c] != 0.0) reduced[c] -= cb * trow[c];
      }
    }

    const auto& prow = tab.t[row];
    int entering = -1;
    double best_ratio = kInf;
    double best_alpha = 0.0;
    for (int c = 0; c < tab.cols; ++c) {
      if (tab.state[c] == VarState::kBasic || tab.lo[c] == tab.hi[c]) continue;
      const double a = prow[c];
      const bool at_lower = tab.state[c] == VarState::kAtLower;
      const bool eligible = below ? (at_lower ? a < -kEligible : a > kEligible)
                                  : (at_lower ? a > kEligible : a < -kEligible);
      if (!eligible) continue;
      const double ratio = std::abs(reduced[c]) / std::abs(a);
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && std::abs(a) > std::abs(best_alpha))) {
        best_ratio = ratio;
        best_alpha = a;
        entering = c;
      }
    }
    if (entering < 0) return DualOutcome::kInfeasible;

    const int leaving = tab.basis[row];
    tab.state[leaving] = below ? VarState::kAtLower : VarState::kAtUpper;
    tab.value[leaving] = below ? tab.lo[leaving] : tab.hi[leaving];
    pivot(tab, row, entering);
    tab.basis[row] = entering;
    tab.state[entering] = VarState::kBasic;
    ++iterations;
    refreshBasicValues(tab);
  }
}

// Solves B y = rhs exactly; returns nullopt for a singular basis.
std::optional<RationalVector> solveExact(RationalMatrix m, RationalVector rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) {
        if (m[col][c] != 0) m[r][c] -= factor * m[col][c];
      }
      rhs[r] -= factor * rhs[col];
    }
  }
  RationalVector y(n);
  for (std::size_t r = 0; r < n; ++r) y[r] = rhs[r] / m[r][r];
  return y;
}

}  // namespace

struct DenseSimplex::WarmStart {
  Tableau tab;
  std::vector<double> artSign;
};

int LinearProgram::addVariable(Rational lo, Rational hi, Rational cost) {
  objective.push_back(std::move(cost));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  for (auto& c : constraints) c.coeffs.emplace_back(0);
  return numVars() - 1;
}

void LinearProgram::addConstraint(LinearConstraint constraint) {
  if (static_cast<int>(constraint.coeffs.size()) != numVars()) {
    throw Error(ErrorCode::kDimensionMismatch, "constraint width does not match the program");
  }
  constraints.push_back(std::move(constraint));
}

void LinearProgram::validate() const {
  const auto n = objective.size();
  if (lower.size() != n || upper.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "bounds do not match the number of variables");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) {
      throw Error(ErrorCode::kInvalidArgument, "variable " + std::to_string(j) + " has empty bounds");
    }
  }
  for (const auto& c : constraints) {
    if (c.coeffs.size() != n) throw Error(ErrorCode::kDimensionMismatch, "constraint width mismatch");
  }
}

DenseSimplex::DenseSimplex(const LinearProgram& lp)
    : lp_(&lp), num_vars_(lp.numVars()), num_rows_(static_cast<int>(lp.constraints.size())) {
  lp.validate();
  const double sign = lp.sense == ObjectiveSense::kMaximize ? 1.0 : -1.0;
  for (const auto& c : lp.objective) cost_.push_back(sign * toDouble(c));
  for (const auto& v : lp.lower) lower_.push_back(toDouble(v));
  for (const auto& v : lp.upper) upper_.push_back(toDouble(v));
  for (const auto& c : lp.constraints) {
    std::vector<double> row;
    row.reserve(c.coeffs.size());
    for (const auto& a : c.coeffs) row.push_back(toDouble(a));
    matrix_.push_back(std::move(row));
    rhs_.push_back(toDouble(c.rhs));
    senses_.push_back(c.sense);
  }
}

LpResult DenseSimplex::solve(const LpOptions& options) const { return solve(lower_, upper_, options); }

bool DenseSimplex::checkBounds(const std::vector<double>& lower, const std::vector<double>& upper) const {
  for (int j = 0; j < num_vars_; ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
      throw Error(ErrorCode::kInvalidArgument, "simplex requires finite variable bounds");
    }
    if (lower[j] > upper[j]) return false;
  }
  return true;
}

std::vector<double> DenseSimplex::phase2Costs() const {
  std::vector<double> cost(num_vars_ + 2 * num_rows_, 0.0);
  for (int j = 0; j < num_vars_; ++j) cost[j] = cost_[j];
  return cost;
}

LpResult DenseSimplex::solve(const std::vector<double>& lower, const std::vector<double>& upper,
                             const LpOptions& options, WarmStartPtr* basis) const {
  const int n = num_vars_;
  const int m = num_rows_;
  LpResult result;
  if (!checkBounds(lower, upper)) return result;

  auto start = std::make_shared<WarmStart>();
  Tableau& tab = start->tab;
  tab.rows = m;
  tab.cols = n + 2 * m;
  tab.t.assign(m, std::vector<double>(tab.cols, 0.0));
  tab.beta.assign(m, 0.0);
  tab.basis.assign(m, -1);
  tab.state.assign(tab.cols, VarState::kAtLower);
  tab.lo.assign(tab.cols, 0.0);
  tab.hi.assign(tab.cols, 0.0);
  tab.value.assign(tab.cols, 0.0);

  for (int j = 0; j < n; ++j) {
    tab.lo[j] = lower[j];
    tab.hi[j] = upper[j];
    tab.value[j] = lower[j];
  }
  std::vector<double>& art_sign = start->artSign;
  art_sign.assign(m, 1.0);
  std::vector<bool> needs_artificial(m, false);
  for (int r = 0; r < m; ++r) {
    const int s = n + r;
    switch (senses_[r]) {
      case Sense::kLessEqual: tab.lo[s] = 0.0; tab.hi[s] = kInf; break;
      case Sense::kGreaterEqual: tab.lo[s] = -kInf; tab.hi[s] = 0.0; tab.state[s] = VarState::kAtUpper; break;
      case Sense::kEqual: tab.lo[s] = 0.0; tab.hi[s] = 0.0; break;
    }
    double residual = rhs_[r];
    for (int j = 0; j < n; ++j) residual -= matrix_[r][j] * tab.value[j];
    const double row_scale = 1.0 + std::abs(rhs_[r]);
    const bool slack_fits = residual >= tab.lo[s] - options.feasibilityTolerance * row_scale &&
                            residual <= tab.hi[s] + options.feasibilityTolerance * row_scale;
    const int a = n + m + r;
    tab.lo[a] = 0.0;
    tab.hi[a] = 0.0;
    if (slack_fits) {
      for (int j = 0; j < n; ++j) tab.t[r][j] = matrix_[r][j];
      tab.t[r][s] = 1.0;
      tab.beta[r] = rhs_[r];
      tab.basis[r] = s;
      tab.state[s] = VarState::kBasic;
    } else {
      needs_artificial[r] = true;
      art_sign[r] = residual >= 0 ? 1.0 : -1.0;
      const double sg = art_sign[r];  // row scaled by 1/sg so the artificial has coefficient 1
      for (int j = 0; j < n; ++j) tab.t[r][j] = matrix_[r][j] * sg;
      tab.t[r][s] = sg;
      tab.t[r][a] = 1.0;
      tab.beta[r] = rhs_[r] * sg;
      tab.basis[r] = a;
      tab.state[a] = VarState::kBasic;
      tab.hi[a] = kInf;
      tab.value[s] = tab.state[s] == VarState::kAtUpper ? tab.hi[s] : tab.lo[s];
    }
  }
  for (int c = n; c < n + m; ++c) {
    if (tab.state[c] != VarState::kBasic) {
      tab.value[c] = tab.state[c] == VarState::kAtUpper ? tab.hi[c] : tab.lo[c];
    }
  }
  refreshBasicValues(tab);

  int iterations = 0;
  bool any_artificial = false;
  for (bool b : needs_artificial) any_artificial = any_artificial || b;
  if (any_artificial) {
    std::vector<double> phase1(tab.cols, 0.0);
    for (int r = 0; r < m; ++r) {
      if (needs_artificial[r]) phase1[n + m + r] = -1.0;
    }
    auto outcome = runPhase(tab, phase1, options, iterations);
    if (outcome == PhaseOutcome::kIterationLimit) {
      throw Error(ErrorCode::kNumerical, "simplex iteration limit reached in phase 1");
    }
    double infeasibility = 0.0;
    double scale = 1.0;
    for (int r = 0; r < m; ++r) {
      scale = std::max(scale, std::abs(rhs_[r]));
      if (needs_artificial[r]) infeasibility += std::abs(tab.value[n + m + r]);
    }
    if (infeasibility > options.feasibilityTolerance * scale * 10) {
      result.status = LpStatus::kInfeasible;
      result.iterations = iterations;
      return result;
    }
    for (int r = 0; r < m; ++r) {
      const int a = n + m + r;
      tab.hi[a] = 0.0;
      if (tab.state[a] != VarState::kBasic) {
        tab.state[a] = VarState::kAtLower;
        tab.value[a] = 0.0;
      }
    }
    refreshBasicValues(tab);
  }

  auto outcome = runPhase(tab, phase2Costs(), options, iterations);
  if (outcome == PhaseOutcome::kIterationLimit) {
    throw Error(ErrorCode::kNumerical, "simplex iteration limit reached in phase 2");
  }
  result.iterations = iterations;
  if (outcome == PhaseOutcome::kUnbounded) {
    // Finite structural bounds make this unreachable.
    result.status = LpStatus::kUnbounded;
    return result;
  }
  return finish(start, lower, upper, options, iterations, basis);
}

LpResult DenseSimplex::resolve(const WarmStart& from, const std::vector<double>& lower,
                               const std::vector<double>& upper, const LpOptions& options,
                               WarmStartPtr* basis) const {
  const int n = num_vars_;
  const int m = num_rows_;
  LpResult result;
  if (!checkBounds(lower, upper)) return result;

  auto start = std::make_shared<WarmStart>(from);
  Tableau& tab = start->tab;
  for (int j = 0; j < n; ++j) {
    tab.lo[j] = lower[j];
    tab.hi[j] = upper[j];
    if (tab.state[j] != VarState::kBasic) {
      tab.value[j] = tab.state[j] == VarState::kAtUpper ? upper[j] : lower[j];
    }
  }
  refreshBasicValues(tab);

  int iterations = 0;
  const auto cost = phase2Costs();
  const auto dual = runDual(tab, cost, options, iterations, 50 * (m + 1));
  if (dual == DualOutcome::kIterationLimit) return solve(lower, upper, options, basis);
  if (dual == DualOutcome::kInfeasible) {
    result.iterations = iterations;
    return result;
  }
  if (runPhase(tab, cost, options, iterations) != PhaseOutcome::kOptimal) {
    return solve(lower, upper, options, basis);
  }
  // Guard against drift accumulated along a chain of warm starts.
  for (int j = 0; j < n; ++j) {
    const double v = tab.value[j];
    if (v < lower[j] - 1e-7 * (1.0 + std::abs(lower[j])) || v > upper[j] + 1e-7 * (1.0 + std::abs(upper[j]))) {
      return solve(lower, upper, options, basis);
    }
  }
  for (int r = 0; r < m; ++r) {
    double lhs = 0.0, mass = std::abs(rhs_[r]);
    for (int j = 0; j < n; ++j) {
      lhs += matrix_[r][j] * tab.value[j];
      mass += std::abs(matrix_[r][j] * tab.value[j]);
    }
    const double tol = 1e-7 * (1.0 + mass);
    const bool ok = senses_[r] == Sense::kLessEqual    ? lhs <= rhs_[r] + tol
                    : senses_[r] == Sense::kGreaterEqual ? lhs >= rhs_[r] - tol
                                                         : std::abs(lhs - rhs_[r]) <= tol;
    if (!ok) return solve(lower, upper, options, basis);
  }
  return finish(start, lower, upper, options, iterations, basis);
}

LpResult DenseSimplex::finish(const std::shared_ptr<WarmStart>& start, const std::vector<double>& lower,
                              const std::vector<double>& upper, const LpOptions& options, int iterations,
                              WarmStartPtr* basis) const {
  const int n = num_vars_;
  const int m = num_rows_;
  const Tableau& tab = start->tab;
  const std::vector<double>& art_sign = start->artSign;
  if (basis) *basis = start;
  LpResult result;
  result.iterations = iterations;
  result.status = LpStatus::kOptimal;
  result.point.assign(tab.value.begin(), tab.value.begin() + n);
  double value = 0.0;
  for (int j = 0; j < n; ++j) value += cost_[j] * result.point[j];
  result.value = lp_->sense == ObjectiveSense::kMaximize ? value : -value;

  if (!options.certify) return result;

  // Exact re-solve of the final basis.
  auto exactBound = [&](int c) -> Rational {
    if (c < n) {
      const double v = tab.state[c] == VarState::kAtUpper ? upper[c] : lower[c];
      const Rational& declared = tab.state[c] == VarState::kAtUpper ? lp_->upper[c] : lp_->lower[c];
      return v == toDouble(declared) ? declared : Rational(v);
    }
    return 0;
  };
  auto column = [&](int c, int r) -> Rational {
    if (c < n) return lp_->constraints[r].coeffs[c];
    if (c < n + m) return c - n == r ? Rational(1) : Rational(0);
    return c - n - m == r ? Rational(static_cast<int>(art_sign[r])) : Rational(0);
  };
  RationalMatrix basis_matrix(m, RationalVector(m));
  RationalVector rhs(m);
  for (int r = 0; r < m; ++r) {
    rhs[r] = lp_->constraints[r].rhs;
    for (int k = 0; k < m; ++k) basis_matrix[r][k] = column(tab.basis[k], r);
  }
  RationalVector exact(tab.cols);
  for (int c = 0; c < tab.cols; ++c) {
    if (tab.state[c] == VarState::kBasic) continue;
    exact[c] = exactBound(c);
    if (exact[c] == 0) continue;
    for (int r = 0; r < m; ++r) {
      Rational a = column(c, r);
      if (a != 0) rhs[r] -= a * exact[c];
    }
  }
  auto basic = solveExact(std::move(basis_matrix), std::move(rhs));
  if (!basic) return result;
  for (int k = 0; k < m; ++k) exact[tab.basis[k]] = (*basic)[k];
  for (int r = 0; r < m; ++r) {
    if (exact[n + m + r] != 0) return result;
  }
  RationalVector point(exact.begin(), exact.begin() + n);
  for (int j = 0; j < n; ++j) {
    const Rational lo = lower[j] == toDouble(lp_->lower[j]) ? lp_->lower[j] : Rational(lower[j]);
    const Rational hi = upper[j] == toDouble(lp_->upper[j]) ? lp_->upper[j] : Rational(upper[j]);
    if (point[j] < lo || point[j] > hi) return result;
  }
  for (const auto& c : lp_->constraints) {
    if (!c.isSatisfiedBy(point)) return result;
  }
  result.certified = true;
  result.exactValue = dot(lp_->objective, point);
  result.exactPoint = std::move(point);
  return result;
}

LpResult solveLp(const LinearProgram& lp, const LpOptions& options) {
  return DenseSimplex(lp).solve(options);
}

}  // namespace ipgkit
