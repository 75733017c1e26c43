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

#include "ipgkit/sgm.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "ipgkit/lp.h"

namespace ipgkit {

namespace {

void requireTwoPlayers(const GameInstance& game) {
  if (game.numPlayers() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "mixed equilibria are computed for two-player games only");
  }
}

// payoff[k][l] = f^i(sample_i[k]; sample_j[l]).
RationalMatrix payoffTable(const GameInstance& game, int player, const std::vector<Strategy>& own,
                           const std::vector<Strategy>& other) {
  const int opponent = 1 - player;
  RationalMatrix table(own.size(), RationalVector(other.size()));
  std::vector<RationalVector> points(2);
  points[player] = RationalVector(game.numVars(player), Rational(0));
  for (std::size_t l = 0; l < other.size(); ++l) {
    points[opponent] = RationalVector(other[l].begin(), other[l].end());
    AffinePayoff affine = affinePayoff(game, player, points);
    for (std::size_t k = 0; k < own.size(); ++k) table[k][l] = affine.evaluate(own[k]);
  }
  return table;
}

// Replaces every entry by its rank within its column; comparisons inside a
// column are preserved exactly.
std::vector<std::vector<int>> columnRanks(const RationalMatrix& table) {
  const std::size_t rows = table.size();
  const std::size_t cols = rows ? table.front().size() : 0;
  std::vector<std::vector<int>> ranks(rows, std::vector<int>(cols));
  std::vector<int> order(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) order[r] = static_cast<int>(r);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return table[x][c] < table[y][c]; });
    int rank = 0;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k > 0 && table[order[k - 1]][c] < table[order[k]][c]) ++rank;
      ranks[order[k]][c] = rank;
    }
  }
  return ranks;
}

// Strategy k is strictly dominated by some other pure strategy against every
// opponent strategy in `against`.
bool conditionallyDominated(const std::vector<std::vector<int>>& table, int k, const std::vector<int>& against) {
  for (int other = 0; other < static_cast<int>(table.size()); ++other) {
    if (other == k) continue;
    bool dominates = true;
    for (int l : against) {
      if (!(table[other][l] > table[k][l])) {
        dominates = false;
        break;
      }
    }
    if (dominates) return true;
  }
  return false;
}

// Calls visit(subset) for every size-k subset of `items` in lexicographic
// order; stops when visit returns true.
template <typename Visit>
bool forEachSubset(const std::vector<int>& items, int k, Visit&& visit) {
  const int n = static_cast<int>(items.size());
  if (k > n) return false;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> subset(k);
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = items[idx[i]];
    if (visit(subset)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::pair<Rational, Rational> range(const RationalMatrix& table) {
  Rational lo = table[0][0];
  Rational hi = table[0][0];
  for (const auto& row : table) {
    for (const auto& v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

std::vector<std::vector<double>> toDoubles(const RationalMatrix& table) {
  std::vector<std::vector<double>> out;
  for (const auto& row : table) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(toDouble(v));
    out.push_back(std::move(r));
  }
  return out;
}

// True when no mixture w over `mix` equalizes the rows in `support` of
// `table` while keeping every other row at or below that value. Decided
// only when the first |mix| support rows determine w uniquely; otherwise
// returns false and leaves the question to the exact LP.
bool clearlyInfeasible(const std::vector<std::vector<double>>& table, double scale,
                       const std::vector<int>& support, const std::vector<int>& mix) {
  const int k = static_cast<int>(mix.size());
  if (static_cast<int>(support.size()) < k) return false;
  // Unknowns w_0..w_{k-1}, v. Equations: table[r].w - v = 0 for the first k
  // support rows, sum w = 1.
  const int n = k + 1;
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (int e = 0; e < k; ++e) {
    for (int c = 0; c < k; ++c) m[e][c] = table[support[e]][mix[c]];
    m[e][k] = -1.0;
  }
  for (int c = 0; c < k; ++c) m[k][c] = 1.0;
  m[k][n] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-9 * scale) return false;
    std::swap(m[piv], m[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0.0) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<double> w(k);
  for (int c = 0; c < k; ++c) w[c] = m[c][n] / m[c][c];
  const double v = m[k][n] / m[k][k];
  constexpr double kMargin = 1e-7;
  for (double x : w) {
    if (x < -kMargin) return true;
  }
  const double tol = kMargin * scale;
  std::vector<bool> in_support(table.size(), false);
  for (int r : support) in_support[r] = true;
  for (int r = 0; r < static_cast<int>(table.size()); ++r) {
    double value = 0.0;
    for (int c = 0; c < k; ++c) value += table[r][mix[c]] * w[c];
    if (in_support[r] ? std::abs(value - v) > tol : value > v + tol) return true;
  }
  return false;
}

// Phase-one simplex in doubles for one side of the indifference system:
// some w over `mix` makes every row of `support` a best response among all
// rows of `table`. True only when the minimum infeasibility is clearly
// positive; stalls and near-zero outcomes return false.
bool sideClearlyInfeasible(const std::vector<std::vector<double>>& table, double scale,
                           const std::vector<int>& support, const std::vector<int>& mix) {
  const int m = static_cast<int>(table.size());
  const int k = static_cast<int>(mix.size());
  const int s0 = support.front();
  std::vector<bool> in_support(m, false);
  for (int r : support) in_support[r] = true;

  // Columns: w (k), one slack per non-support row, one artificial per equality row.
  const int slacks = m - static_cast<int>(support.size());
  const int arts = static_cast<int>(support.size());  // support rows except s0, plus the sum row
  const int width = k + slacks + arts;
  const int rows = m;  // every row except s0, plus the sum row
  std::vector<std::vector<double>> t(rows, std::vector<double>(width + 1, 0.0));
  std::vector<int> basis(rows);
  int row = 0, slack = k, art = k + slacks;
  for (int r = 0; r < m; ++r) {
    if (r == s0) continue;
    for (int c = 0; c < k; ++c) t[row][c] = (table[r][mix[c]] - table[s0][mix[c]]) / scale;
    if (in_support[r]) {
      t[row][art] = 1.0;
      basis[row] = art++;
    } else {
      t[row][slack] = 1.0;
      basis[row] = slack++;
    }
    ++row;
  }
  for (int c = 0; c < k; ++c) t[row][c] = 1.0;
  t[row][width] = 1.0;
  t[row][art] = 1.0;
  basis[row] = art;

  // Reduced costs of "minimize the sum of artificials" over the current basis.
  std::vector<double> cost(width + 1, 0.0);
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < k + slacks) continue;
    for (int c = 0; c <= width; ++c) cost[c] -= t[r][c];
  }
  for (int c = k + slacks; c < width; ++c) cost[c] += 1.0;

  constexpr double kPivot = 1e-11;
  for (int iter = 0; iter < 50 * (rows + width); ++iter) {
    int enter = -1;
    for (int c = 0; c < width && enter < 0; ++c) {
      if (cost[c] < -kPivot) enter = c;
    }
    if (enter < 0) return -cost[width] > 1e-7;
    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < rows; ++r) {
      if (t[r][enter] <= kPivot) continue;
      const double ratio = t[r][width] / t[r][enter];
      if (leave < 0 || ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) return false;
    const double p = t[leave][enter];
    for (double& v : t[leave]) v /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == leave || t[r][enter] == 0.0) continue;
      const double f = t[r][enter];
      for (int c = 0; c <= width; ++c) t[r][c] -= f * t[leave][c];
    }
    const double f = cost[enter];
    for (int c = 0; c <= width; ++c) cost[c] -= f * t[leave][c];
    basis[leave] = enter;
  }
  return false;
}

// Indifference system for supports (rows, cols); returns exact
// probabilities over the full samples when a certified solution exists.
std::optional<std::pair<RationalVector, RationalVector>> solveSupports(
    const RationalMatrix& a, const RationalMatrix& b, const std::vector<int>& rows,
    const std::vector<int>& cols) {
  const int m1 = static_cast<int>(a.size());
  const int m2 = static_cast<int>(a.front().size());
  LinearProgram lp;
  for (std::size_t k = 0; k < rows.size(); ++k) lp.addVariable(0, 1);
  for (std::size_t l = 0; l < cols.size(); ++l) lp.addVariable(0, 1);
  auto [a_lo, a_hi] = range(a);
  auto [b_lo, b_hi] = range(b);
  const int v1 = lp.addVariable(a_lo, a_hi);
  const int v2 = lp.addVariable(b_lo, b_hi);
  const int width = lp.numVars();
  const int col_offset = static_cast<int>(rows.size());

  LinearConstraint sum1{RationalVector(width), Sense::kEqual, 1};
  for (std::size_t k = 0; k < rows.size(); ++k) sum1.coeffs[k] = 1;
  LinearConstraint sum2{RationalVector(width), Sense::kEqual, 1};
  for (std::size_t l = 0; l < cols.size(); ++l) sum2.coeffs[col_offset + l] = 1;
  lp.addConstraint(std::move(sum1));
  lp.addConstraint(std::move(sum2));

  // Player 1: every sampled row against sigma^2 is at most v1, with equality on the support.
  for (int x = 0; x < m1; ++x) {
    const bool in_support = std::find(rows.begin(), rows.end(), x) != rows.end();
    LinearConstraint c{RationalVector(width), in_support ? Sense::kEqual : Sense::kLessEqual, 0};
    for (std::size_t l = 0; l < cols.size(); ++l) c.coeffs[col_offset + l] = a[x][cols[l]];
    c.coeffs[v1] = -1;
    lp.addConstraint(std::move(c));
  }
  for (int y = 0; y < m2; ++y) {
    const bool in_support = std::find(cols.begin(), cols.end(), y) != cols.end();
    LinearConstraint c{RationalVector(width), in_support ? Sense::kEqual : Sense::kLessEqual, 0};
    for (std::size_t k = 0; k < rows.size(); ++k) c.coeffs[k] = b[rows[k]][y];
    c.coeffs[v2] = -1;
    lp.addConstraint(std::move(c));
  }
  lp.objective.assign(width, Rational(0));

  LpOptions options;
  options.certify = true;
  LpResult result = solveLp(lp, options);
  if (result.status != LpStatus::kOptimal || !result.certified) return std::nullopt;
  RationalVector p1(m1, Rational(0));
  RationalVector p2(m2, Rational(0));
  for (std::size_t k = 0; k < rows.size(); ++k) p1[rows[k]] = result.exactPoint[k];
  for (std::size_t l = 0; l < cols.size(); ++l) p2[cols[l]] = result.exactPoint[col_offset + l];
  return std::make_pair(std::move(p1), std::move(p2));
}

MixedStrategy toMixed(const std::vector<Strategy>& sample, const RationalVector& probabilities) {
  MixedStrategy s;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    if (probabilities[k] > 0) {
      s.support.push_back(sample[k]);
      s.probabilities.push_back(probabilities[k]);
    }
  }
  return s;
}

}  // namespace

bool SampledGame::add(int player, const Strategy& strategy) {
  auto& list = samples_.at(player);
  if (std::find(list.begin(), list.end(), strategy) != list.end()) return false;
  list.push_back(strategy);
  history_.emplace_back(player, strategy);
  return true;
}

SampledGame initializeSample(const GameInstance& game) {
  requireTwoPlayers(game);
  SampledGame sample(2);
  std::vector<RationalVector> zeros;
  for (int i = 0; i < 2; ++i) zeros.emplace_back(game.numVars(i), Rational(0));
  for (int i = 0; i < 2; ++i) sample.add(i, bestResponseToMeans(game, i, zeros).strategy);
  return sample;
}

MixedProfile playSampled(const GameInstance& game, const SampledGame& sample) {
  return *playSampled(game, sample, std::nullopt);
}

std::optional<MixedProfile> playSampled(const GameInstance& game, const SampledGame& sample,
                                        std::optional<std::chrono::steady_clock::time_point> deadline) {
  requireTwoPlayers(game);
  const auto& s1 = sample.sample(0);
  const auto& s2 = sample.sample(1);
  if (s1.empty() || s2.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sample");
  const RationalMatrix a = payoffTable(game, 0, s1, s2);
  RationalMatrix b_own = payoffTable(game, 1, s2, s1);  // [col][row]
  const int m1 = static_cast<int>(s1.size());
  const int m2 = static_cast<int>(s2.size());
  RationalMatrix b(m1, RationalVector(m2));
  for (int k = 0; k < m1; ++k) {
    for (int l = 0; l < m2; ++l) b[k][l] = b_own[l][k];
  }

  const auto a_rank = columnRanks(a);
  const auto b_rank = columnRanks(b_own);
  const auto a_fast = toDoubles(a);
  const auto b_fast = toDoubles(b_own);
  double scale = 1.0;
  for (const auto* t : {&a_fast, &b_fast}) {
    for (const auto& row : *t) {
      for (double v : row) scale = std::max(scale, std::abs(v));
    }
  }

  std::vector<int> all1(m1), all2(m2);
  for (int k = 0; k < m1; ++k) all1[k] = k;
  for (int l = 0; l < m2; ++l) all2[l] = l;

  std::vector<std::pair<int, int>> sizes;
  for (int k1 = 1; k1 <= m1; ++k1) {
    for (int k2 = 1; k2 <= m2; ++k2) sizes.emplace_back(k1, k2);
  }
  std::stable_sort(sizes.begin(), sizes.end(), [](const auto& x, const auto& y) {
    const int tx = x.first + x.second, ty = y.first + y.second;
    if (tx != ty) return tx < ty;
    return std::abs(x.first - x.second) < std::abs(y.first - y.second);
  });

  std::optional<MixedProfile> found;
  bool expired = false;
  std::uint64_t visited = 0;
  for (const auto& [k1, k2] : sizes) {
    forEachSubset(all1, k1, [&](const std::vector<int>& rows) {
      if (k1 == 1 && k2 == 1) {
        const int x = rows[0];
        for (int y = 0; y < m2; ++y) {
          bool stable = true;
          for (int other = 0; other < m1 && stable; ++other) stable = a[other][y] <= a[x][y];
          for (int other = 0; other < m2 && stable; ++other) stable = b[x][other] <= b[x][y];
          if (stable) {
            found = MixedProfile{{{{s1[x]}, {Rational(1)}}, {{s2[y]}, {Rational(1)}}}};
            return true;
          }
        }
        return false;
      }
      if (deadline && (++visited & 255) == 0 && std::chrono::steady_clock::now() >= *deadline) {
        expired = true;
        return true;
      }
      std::vector<int> candidates;
      for (int y = 0; y < m2; ++y) {
        if (!conditionallyDominated(b_rank, y, rows)) candidates.push_back(y);
      }
      for (int x : rows) {
        if (conditionallyDominated(a_rank, x, candidates)) return false;
      }
      if (candidates.size() < static_cast<std::size_t>(k2) || sideClearlyInfeasible(a_fast, scale, rows, candidates)) {
        return false;
      }
      return forEachSubset(candidates, k2, [&](const std::vector<int>& cols) {
        if (deadline && (++visited & 255) == 0 && std::chrono::steady_clock::now() >= *deadline) {
          expired = true;
          return true;
        }
        for (int x : rows) {
          if (conditionallyDominated(a_rank, x, cols)) return false;
        }
        if (clearlyInfeasible(a_fast, scale, rows, cols) || clearlyInfeasible(b_fast, scale, cols, rows) ||
            sideClearlyInfeasible(a_fast, scale, rows, cols) || sideClearlyInfeasible(b_fast, scale, cols, rows)) {
          return false;
        }
        auto solution = solveSupports(a, b, rows, cols);
        if (!solution) return false;
        found = MixedProfile{{toMixed(s1, solution->first), toMixed(s2, solution->second)}};
        return true;
      });
    });
    if (found) return found;
    if (expired) return std::nullopt;
  }
  // A finite two-player game always has an equilibrium.
  std::cerr << "ipgkit: support enumeration exhausted without an equilibrium\n";
  std::abort();
}

SgmResult solveSgm(const GameInstance& game, const SgmOptions& options) {
  if (options.maxIterations < 1) throw Error(ErrorCode::kInvalidArgument, "maxIterations must be at least 1");
  SgmResult result;
  result.sample = initializeSample(game);
  std::optional<MixedProfile> best;
  Rational best_epsilon;
  for (int it = 1; it <= options.maxIterations; ++it) {
    if (it > 1 && options.deadline && std::chrono::steady_clock::now() >= *options.deadline) {
      result.status = SgmResult::Status::kTimeLimit;
      result.epsilon = epsilonOf(game, result.profile);
      return result;
    }
    result.sample.nextIteration();
    auto played = playSampled(game, result.sample, it > 1 ? options.deadline : std::nullopt);
    if (!played) {
      result.status = SgmResult::Status::kTimeLimit;
      result.epsilon = epsilonOf(game, result.profile);
      return result;
    }
    result.iterations = it;
    result.profile = std::move(*played);
    OracleVerdict verdict = improve(game, result.profile);
    if (!best || verdict.worstViolation < best_epsilon) {
      best = result.profile;
      best_epsilon = verdict.worstViolation;
    }
    if (verdict.yes) {
      result.status = SgmResult::Status::kEquilibrium;
      result.epsilon = verdict.worstViolation;
      return result;
    }
    bool grew = false;
    for (const auto& d : verdict.information) grew = result.sample.add(d.player, d.strategy) || grew;
    if (!grew) {
      throw Error(ErrorCode::kNumerical, "improvement oracle returned only strategies already sampled");
    }
  }
  result.status = SgmResult::Status::kIterationLimit;
  result.profile = *best;
  result.epsilon = best_epsilon;
  return result;
}

}  // namespace ipgkit
