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

#include "ipgkit/verify.h"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>

#include "ipgkit/lp.h"
#include "ipgkit/oracle.h"

namespace ipgkit {

namespace {

using boost::multiprecision::mpz_int;

constexpr std::int64_t kSafeMagnitude = std::int64_t{1} << 62;

// Integer multiples of a row of rationals by the lcm of its denominators,
// when every partial sum stays far from int64 overflow.
std::optional<std::vector<std::int64_t>> scaleRow(const RationalVector& values, mpz_int scale) {
  mpz_int total = 0;
  std::vector<std::int64_t> out;
  for (const auto& v : values) {
    mpz_int scaled = boost::multiprecision::numerator(v) * (scale / boost::multiprecision::denominator(v));
    total += abs(scaled);
    if (total >= kSafeMagnitude) return std::nullopt;
    out.push_back(scaled.convert_to<std::int64_t>());
  }
  return out;
}

bool feasibleFast(const std::vector<std::vector<std::int64_t>>& rows, const std::vector<Sense>& senses,
                  const std::vector<std::int64_t>& rhs, const Strategy& x) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::int64_t lhs = 0;
    for (std::size_t v = 0; v < x.size(); ++v) lhs += x[v] ? rows[r][v] : 0;
    switch (senses[r]) {
      case Sense::kLessEqual: if (lhs > rhs[r]) return false; break;
      case Sense::kGreaterEqual: if (lhs < rhs[r]) return false; break;
      case Sense::kEqual: if (lhs != rhs[r]) return false; break;
    }
  }
  return true;
}

// Payoff data of one player that matters for its own argmax: own linear
// coefficients and interaction matrices, optionally scaled to integers.
template <typename Num>
struct ArgmaxData {
  std::vector<Num> own;
  std::vector<std::pair<int, std::vector<std::vector<Num>>>> bilinear;
};

std::optional<ArgmaxData<std::int64_t>> integerData(const PayoffSpec& pay) {
  mpz_int scale = 1;
  for (const auto& v : pay.ownLinear) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(v));
  for (const auto& [j, q] : pay.bilinear) {
    for (const auto& row : q) {
      for (const auto& v : row) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(v));
    }
  }
  RationalVector flat = pay.ownLinear;
  for (const auto& [j, q] : pay.bilinear) {
    for (const auto& row : q) flat.insert(flat.end(), row.begin(), row.end());
  }
  if (!scaleRow(flat, scale)) return std::nullopt;
  ArgmaxData<std::int64_t> data;
  data.own = *scaleRow(pay.ownLinear, scale);
  for (const auto& [j, q] : pay.bilinear) {
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& row : q) rows.push_back(*scaleRow(row, scale));
    data.bilinear.emplace_back(j, std::move(rows));
  }
  return data;
}

ArgmaxData<Rational> rationalData(const PayoffSpec& pay) {
  ArgmaxData<Rational> data;
  data.own = pay.ownLinear;
  for (const auto& [j, q] : pay.bilinear) data.bilinear.emplace_back(j, q);
  return data;
}

// Sets best[joint] for every joint profile in which player i's strategy
// attains its best-response value.
template <typename Num>
void markBestResponses(int player, const ArgmaxData<Num>& data,
                       const std::vector<std::vector<Strategy>>& strategies,
                       const std::vector<std::int64_t>& strides, std::vector<char>& best) {
  const int n = static_cast<int>(strategies.size());
  std::vector<int> counter(n, 0);
  const auto& own = strategies[player];
  std::vector<Num> linear(data.own.size());
  std::vector<Num> values(own.size());
  while (true) {
    linear = data.own;
    for (const auto& [j, q] : data.bilinear) {
      const Strategy& y = strategies[j][counter[j]];
      for (std::size_t a = 0; a < q.size(); ++a) {
        for (std::size_t b = 0; b < y.size(); ++b) {
          if (y[b]) linear[a] += q[a][b];
        }
      }
    }
    std::int64_t base = 0;
    for (int j = 0; j < n; ++j) {
      if (j != player) base += counter[j] * strides[j];
    }
    for (std::size_t k = 0; k < own.size(); ++k) {
      Num v = 0;
      for (std::size_t a = 0; a < own[k].size(); ++a) {
        if (own[k][a]) v += linear[a];
      }
      values[k] = v;
    }
    const Num top = *std::max_element(values.begin(), values.end());
    for (std::size_t k = 0; k < own.size(); ++k) {
      if (values[k] == top) best[base + static_cast<std::int64_t>(k) * strides[player]] += 1;
    }
    int j = n - 1;
    for (; j >= 0; --j) {
      if (j == player) continue;
      if (++counter[j] < static_cast<int>(strategies[j].size())) break;
      counter[j] = 0;
    }
    if (j < 0) break;
  }
}

void checkCap(const GameInstance& game, int cap) {
  if (game.totalVars() > cap) {
    throw Error(ErrorCode::kLimitExceeded, "enumeration: " + std::to_string(game.totalVars()) +
                                               " joint variables exceed the cap of " + std::to_string(cap));
  }
}

}  // namespace

std::vector<Strategy> enumerateStrategies(const StrategySet& set, int maxVars) {
  const int n = set.numVars();
  if (n > maxVars || n > 30) {
    throw Error(ErrorCode::kLimitExceeded, "enumeration: too many variables in a strategy set");
  }
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<Sense> senses;
  std::vector<std::int64_t> rhs;
  bool fast = true;
  for (const auto& c : set.constraints()) {
    mpz_int scale = boost::multiprecision::denominator(c.rhs);
    for (const auto& v : c.coeffs) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(v));
    RationalVector all = c.coeffs;
    all.push_back(c.rhs);
    auto scaled = scaleRow(all, scale);
    if (!scaled) {
      fast = false;
      break;
    }
    rhs.push_back(scaled->back());
    scaled->pop_back();
    rows.push_back(std::move(*scaled));
    senses.push_back(c.sense);
  }
  std::vector<Strategy> out;
  Strategy x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (int v = 0; v < n; ++v) x[v] = static_cast<int>((mask >> (n - 1 - v)) & 1);
    if (fast ? feasibleFast(rows, senses, rhs, x) : isFeasible(set, x)) out.push_back(x);
  }
  return out;
}

std::vector<PureProfile> enumeratePureNE(const GameInstance& game, int cap) {
  checkCap(game, cap);
  const int n = game.numPlayers();
  std::vector<std::vector<Strategy>> strategies;
  for (int i = 0; i < n; ++i) {
    strategies.push_back(enumerateStrategies(game.strategySet(i), cap));
    if (strategies.back().empty()) return {};
  }
  std::vector<std::int64_t> strides(n);
  std::int64_t total = 1;
  for (int i = n - 1; i >= 0; --i) {
    strides[i] = total;
    total *= static_cast<std::int64_t>(strategies[i].size());
  }
  std::vector<char> best(total, 0);
  for (int i = 0; i < n; ++i) {
    if (auto data = integerData(game.payoff(i))) {
      markBestResponses(i, *data, strategies, strides, best);
    } else {
      markBestResponses(i, rationalData(game.payoff(i)), strategies, strides, best);
    }
  }
  std::vector<PureProfile> out;
  for (std::int64_t joint = 0; joint < total; ++joint) {
    if (best[joint] != n) continue;
    PureProfile profile;
    std::int64_t rest = joint;
    for (int i = 0; i < n; ++i) {
      profile.strategies.push_back(strategies[i][rest / strides[i]]);
      rest %= strides[i];
    }
    out.push_back(std::move(profile));
  }
  return out;
}

std::vector<MixedProfile> enumerateMixedNE2p(const GameInstance& game, int cap) {
  if (game.numPlayers() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "mixed enumeration supports two players only");
  }
  std::vector<Strategy> f1 = enumerateStrategies(game.strategySet(0));
  std::vector<Strategy> f2 = enumerateStrategies(game.strategySet(1));
  const int m1 = static_cast<int>(f1.size());
  const int m2 = static_cast<int>(f2.size());
  if (m1 > cap || m2 > cap) {
    throw Error(ErrorCode::kLimitExceeded, "mixed enumeration: more than " + std::to_string(cap) +
                                               " feasible strategies for a player");
  }
  if (m1 == 0 || m2 == 0) return {};

  // row[k][l]: player 0 plays f1[k], player 1 plays f2[l].
  RationalMatrix row(m1, RationalVector(m2));
  RationalMatrix col(m1, RationalVector(m2));
  for (int k = 0; k < m1; ++k) {
    for (int l = 0; l < m2; ++l) {
      PureProfile p{{f1[k], f2[l]}};
      row[k][l] = evaluatePure(game, p, 0);
      col[k][l] = evaluatePure(game, p, 1);
    }
  }
  auto bounds = [](const RationalMatrix& m) {
    Rational lo = m[0][0], hi = m[0][0];
    for (const auto& r : m) {
      for (const auto& v : r) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    return std::make_pair(lo, hi);
  };
  const auto [row_lo, row_hi] = bounds(row);
  const auto [col_lo, col_hi] = bounds(col);

  std::vector<std::pair<RationalVector, RationalVector>> found;
  const Rational dedup_tol(1, 1000000000);
  for (std::uint32_t s1 = 1; s1 < (1u << m1); ++s1) {
    for (std::uint32_t s2 = 1; s2 < (1u << m2); ++s2) {
      // Variables: p_0..p_{m1-1}, q_0..q_{m2-1}, u, w. Out-of-support
      // probabilities are fixed to zero through their bounds.
      LinearProgram lp;
      for (int k = 0; k < m1; ++k) lp.addVariable(0, (s1 >> k) & 1 ? 1 : 0);
      for (int l = 0; l < m2; ++l) lp.addVariable(0, (s2 >> l) & 1 ? 1 : 0);
      const int u = lp.addVariable(row_lo, row_hi);
      const int w = lp.addVariable(col_lo, col_hi);
      const int width = lp.numVars();
      LinearConstraint sum_p{RationalVector(width), Sense::kEqual, 1};
      LinearConstraint sum_q{RationalVector(width), Sense::kEqual, 1};
      for (int k = 0; k < m1; ++k) sum_p.coeffs[k] = 1;
      for (int l = 0; l < m2; ++l) sum_q.coeffs[m1 + l] = 1;
      lp.addConstraint(std::move(sum_p));
      lp.addConstraint(std::move(sum_q));
      for (int k = 0; k < m1; ++k) {
        LinearConstraint c{RationalVector(width), (s1 >> k) & 1 ? Sense::kEqual : Sense::kLessEqual, 0};
        for (int l = 0; l < m2; ++l) c.coeffs[m1 + l] = row[k][l];
        c.coeffs[u] = -1;
        lp.addConstraint(std::move(c));
      }
      for (int l = 0; l < m2; ++l) {
        LinearConstraint c{RationalVector(width), (s2 >> l) & 1 ? Sense::kEqual : Sense::kLessEqual, 0};
        for (int k = 0; k < m1; ++k) c.coeffs[k] = col[k][l];
        c.coeffs[w] = -1;
        lp.addConstraint(std::move(c));
      }
      lp.objective.assign(width, Rational(0));
      LpOptions options;
      options.certify = true;
      LpResult result = solveLp(lp, options);
      if (result.status != LpStatus::kOptimal || !result.certified) continue;
      RationalVector p(result.exactPoint.begin(), result.exactPoint.begin() + m1);
      RationalVector q(result.exactPoint.begin() + m1, result.exactPoint.begin() + m1 + m2);
      bool duplicate = false;
      for (const auto& [fp, fq] : found) {
        bool same = true;
        for (int k = 0; k < m1 && same; ++k) same = abs(fp[k] - p[k]) <= dedup_tol;
        for (int l = 0; l < m2 && same; ++l) same = abs(fq[l] - q[l]) <= dedup_tol;
        if (same) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) found.emplace_back(std::move(p), std::move(q));
    }
  }

  std::vector<MixedProfile> out;
  for (const auto& [p, q] : found) {
    MixedProfile profile;
    profile.players.resize(2);
    for (int k = 0; k < m1; ++k) {
      if (p[k] > 0) {
        profile.players[0].support.push_back(f1[k]);
        profile.players[0].probabilities.push_back(p[k]);
      }
    }
    for (int l = 0; l < m2; ++l) {
      if (q[l] > 0) {
        profile.players[1].support.push_back(f2[l]);
        profile.players[1].probabilities.push_back(q[l]);
      }
    }
    out.push_back(std::move(profile));
  }
  return out;
}

EquilibriumSet enumerateEquilibria(const GameInstance& game) {
  EquilibriumSet set;
  set.pure = enumeratePureNE(game);
  set.complete = true;
  if (game.numPlayers() == 2) {
    try {
      set.mixed = enumerateMixedNE2p(game);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLimitExceeded) throw;
      set.complete = false;
    }
  } else {
    set.complete = false;
  }
  return set;
}

GameInstance approximationGame(bool restrictFirstPlayer, std::int64_t upper) {
  const std::int64_t lower = 1;
  BinarizedInteger first = binarizeBoundedInteger(lower, upper);
  const int bits = first.numBits;
  std::vector<LinearConstraint> constraints;
  if (first.upperBound) constraints.push_back(*first.upperBound);
  if (restrictFirstPlayer) {
    // lower + sum w_k b_k >= 2
    LinearConstraint at_least_two{RationalVector(bits), Sense::kGreaterEqual, Rational(2 - lower)};
    for (int k = 0; k < bits; ++k) at_least_two.coeffs[k] = first.bitWeights[k];
    constraints.push_back(std::move(at_least_two));
  }
  // With x1 = L + sum w_k b_k and x2 = 2c - 1:
  // x1 * x2 = -L + 2L c - sum w_k b_k + sum 2 w_k b_k c.
  const Rational l(lower);
  PayoffSpec p1;  // -x1 * x2
  p1.constant = l;
  p1.oppLinear[1] = {-2 * l};
  RationalMatrix q1(bits, RationalVector(1));
  for (int k = 0; k < bits; ++k) {
    p1.ownLinear.emplace_back(first.bitWeights[k]);
    q1[k][0] = Rational(-2 * first.bitWeights[k]);
  }
  p1.bilinear[1] = std::move(q1);

  PayoffSpec p2;  // x2 * x1
  p2.constant = -l;
  p2.ownLinear = {2 * l};
  RationalVector e2;
  RationalMatrix q2(1, RationalVector(bits));
  for (int k = 0; k < bits; ++k) {
    e2.emplace_back(-first.bitWeights[k]);
    q2[0][k] = Rational(2 * first.bitWeights[k]);
  }
  p2.oppLinear[0] = std::move(e2);
  p2.bilinear[0] = std::move(q2);

  std::vector<Player> players;
  players.push_back({StrategySet(bits, std::move(constraints)), std::move(p1)});
  players.push_back({StrategySet(1, {}), std::move(p2)});
  return GameInstance(restrictFirstPlayer ? "approximation-1" : "approximation-original", std::move(players));
}

std::pair<std::int64_t, std::int64_t> decodeApproximationProfile(const PureProfile& profile,
                                                                 std::int64_t upper) {
  BinarizedInteger first = binarizeBoundedInteger(1, upper);
  return {first.decode(profile.strategies.at(0)), 2 * profile.strategies.at(1).at(0) - 1};
}

ApproximationReport checkApproximationScenarios() {
  ApproximationReport report;
  GameInstance original = approximationGame(false);
  GameInstance restricted = approximationGame(true);
  for (const auto& p : enumeratePureNE(original)) report.originalEquilibria.push_back(decodeApproximationProfile(p));
  for (const auto& p : enumeratePureNE(restricted)) {
    report.approximationEquilibria.push_back(decodeApproximationProfile(p));
  }
  const std::pair<std::int64_t, std::int64_t> one_one{1, 1};
  const std::pair<std::int64_t, std::int64_t> two_one{2, 1};
  report.originalHasUniqueOneOne =
      report.originalEquilibria.size() == 1 && report.originalEquilibria.front() == one_one;
  report.approximationHasTwoOne =
      std::find(report.approximationEquilibria.begin(), report.approximationEquilibria.end(), two_one) !=
      report.approximationEquilibria.end();
  BinarizedInteger first = binarizeBoundedInteger(1, 4);
  PureProfile candidate{{first.encode(2), Strategy{1}}};
  report.twoOneRejectedByOriginal = !improve(original, candidate).yes;
  return report;
}

}  // namespace ipgkit
