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

#include "ipgkit/cng.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "ipgkit/knapsack.h"
#include "ipgkit/milp.h"
#include "ipgkit/zero_regrets.h"

namespace ipgkit {

namespace {

void requireUnit(const Rational& v, const char* name) {
  if (v < 0 || v > 1) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must lie in [0,1]");
}

void requireSize(const CngInstance& cng, const Strategy& x, const char* what) {
  if (static_cast<int>(x.size()) != cng.size()) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " has the wrong length");
  }
}

// Unbiased draw in [lo, hi] from the raw engine output.
std::int64_t drawInt(std::mt19937_64& engine, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = engine();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

std::int64_t ceilTimes(const Rational& fraction, std::int64_t total) {
  Rational v = fraction * total;
  const boost::multiprecision::mpz_int num = boost::multiprecision::numerator(v);
  const boost::multiprecision::mpz_int den = boost::multiprecision::denominator(v);
  boost::multiprecision::mpz_int q = num / den;
  if (q * den < num) q += 1;
  return q.convert_to<std::int64_t>();
}

}  // namespace

void CngInstance::validate() const {
  const std::size_t n = defenderCriticality.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "cng: no resources");
  if (attackerCriticality.size() != n || defenderCost.size() != n || attackerCost.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "cng: vectors must all have one entry per resource");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (defenderCriticality[i] <= 0 || attackerCriticality[i] <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "cng: criticalities must be positive");
    }
    if (defenderCost[i] <= 0 || attackerCost[i] <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "cng: costs must be positive");
    }
  }
  if (defenderBudget < 0 || attackerBudget < 0) throw Error(ErrorCode::kInvalidArgument, "cng: negative budget");
  requireUnit(delta, "delta");
  requireUnit(eta, "eta");
  requireUnit(epsilon, "epsilon");
  requireUnit(gamma, "gamma");
  if (!(delta < eta && eta < epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "cng: requires delta < eta < epsilon");
  }
}

GameInstance toGameInstance(const CngInstance& cng, const std::string& name) {
  cng.validate();
  const int n = cng.size();
  const auto& pd = cng.defenderCriticality;
  const auto& pa = cng.attackerCriticality;

  auto knapsack = [n](const std::vector<std::int64_t>& cost, std::int64_t budget) {
    LinearConstraint c{RationalVector(n), Sense::kLessEqual, Rational(budget)};
    for (int i = 0; i < n; ++i) c.coeffs[i] = cost[i];
    return StrategySet(n, {std::move(c)});
  };

  PayoffSpec defender;
  defender.ownLinear.resize(n);
  RationalVector d_opp(n);
  RationalMatrix d_bil(n, RationalVector(n, Rational(0)));
  PayoffSpec attacker;
  attacker.ownLinear.resize(n);
  RationalVector a_opp(n);
  RationalMatrix a_bil(n, RationalVector(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    defender.constant += pd[i];
    defender.ownLinear[i] = (cng.epsilon - 1) * pd[i];
    d_opp[i] = (cng.delta - 1) * pd[i];
    d_bil[i][i] = (1 + cng.eta - cng.epsilon - cng.delta) * pd[i];

    attacker.constant -= cng.gamma * pa[i];
    attacker.ownLinear[i] = (1 + cng.gamma) * pa[i];
    a_opp[i] = cng.gamma * pa[i];
    a_bil[i][i] = -(cng.gamma + cng.eta) * pa[i];
  }
  defender.oppLinear[1] = std::move(d_opp);
  defender.bilinear[1] = std::move(d_bil);
  attacker.oppLinear[0] = std::move(a_opp);
  attacker.bilinear[0] = std::move(a_bil);

  std::vector<Player> players;
  players.push_back({knapsack(cng.defenderCost, cng.defenderBudget), std::move(defender)});
  players.push_back({knapsack(cng.attackerCost, cng.attackerBudget), std::move(attacker)});
  return GameInstance(name, std::move(players));
}

Rational defenderPayoff(const CngInstance& cng, const Strategy& protect, const Strategy& attack) {
  requireSize(cng, protect, "protection");
  requireSize(cng, attack, "attack");
  Rational total = 0;
  for (int i = 0; i < cng.size(); ++i) {
    const auto& p = cng.defenderCriticality[i];
    if (!protect[i] && !attack[i]) total += p;
    else if (!protect[i] && attack[i]) total += cng.delta * p;
    else if (protect[i] && attack[i]) total += cng.eta * p;
    else total += cng.epsilon * p;
  }
  return total;
}

Rational attackerPayoff(const CngInstance& cng, const Strategy& protect, const Strategy& attack) {
  requireSize(cng, protect, "protection");
  requireSize(cng, attack, "attack");
  Rational total = 0;
  for (int i = 0; i < cng.size(); ++i) {
    const auto& p = cng.attackerCriticality[i];
    if (!protect[i] && !attack[i]) total -= cng.gamma * p;
    else if (!protect[i] && attack[i]) total += p;
    else if (protect[i] && attack[i]) total += (1 - cng.eta) * p;
  }
  return total;
}

bool withinBudget(const std::vector<std::int64_t>& cost, std::int64_t budget, const Strategy& x) {
  std::int64_t used = 0;
  for (std::size_t i = 0; i < x.size(); ++i) used += x[i] ? cost.at(i) : 0;
  return used <= budget;
}

McnpSolution solveMcnp(const CngInstance& cng, const McnpOptions& options) {
  cng.validate();
  const int n = cng.size();
  if (n > options.enumerationCap) {
    throw Error(ErrorCode::kLimitExceeded, "mcnp: " + std::to_string(n) +
                                               " resources exceed the enumeration cap of " +
                                               std::to_string(options.enumerationCap));
  }
  const auto& pd = cng.defenderCriticality;
  const auto& pa = cng.attackerCriticality;
  const Rational tie_sign = options.tieBreak == TieBreak::kOptimistic ? 1 : -1;

  RationalVector primary(2 * n), secondary(2 * n), leader(3 * n);
  for (int i = 0; i < n; ++i) {
    // Attacker's marginal payoff of alpha_i and the defender's, for x_i = 0 and 1.
    primary[2 * i] = (1 + cng.gamma) * pa[i];
    primary[2 * i + 1] = primary[2 * i] - (cng.gamma + cng.eta) * pa[i];
    secondary[2 * i] = tie_sign * (cng.delta - 1) * pd[i];
    secondary[2 * i + 1] = secondary[2 * i] + tie_sign * (1 + cng.eta - cng.epsilon - cng.delta) * pd[i];
    leader[i] = (cng.epsilon - 1) * pd[i];
    leader[n + i] = (cng.delta - 1) * pd[i];
    leader[2 * n + i] = (1 + cng.eta - cng.epsilon - cng.delta) * pd[i];
  }
  const auto int_primary = scaleToIntegers(primary);
  const auto int_secondary = scaleToIntegers(secondary);
  const auto int_leader = scaleToIntegers(leader);
  const bool fast = int_primary && int_secondary && int_leader;

  std::optional<McnpSolution> best;
  std::int64_t best_score = 0;
  std::int64_t visited = 0;
  bool stopped = false;
  Strategy x(n, 0);

  IntegerKnapsack fast_follower(cng.attackerCost, cng.attackerBudget);
  std::vector<std::int64_t> fp(n), fs(n);
  KnapsackProblem follower;
  follower.weights = cng.attackerCost;
  follower.capacity = cng.attackerBudget;
  follower.primaryProfit.resize(n);
  follower.secondaryProfit = RationalVector(n);

  auto evaluateLeaf = [&]() {
    ++visited;
    if (fast) {
      for (int i = 0; i < n; ++i) {
        fp[i] = (*int_primary)[2 * i + x[i]];
        fs[i] = (*int_secondary)[2 * i + x[i]];
      }
      const Strategy& alpha = fast_follower.solve(fp, fs);
      std::int64_t score = 0;
      for (int i = 0; i < n; ++i) {
        score += x[i] * (*int_leader)[i] + alpha[i] * ((*int_leader)[n + i] + x[i] * (*int_leader)[2 * n + i]);
      }
      if (!best || score > best_score) {
        best_score = score;
        best = McnpSolution{x, alpha, 0, 0, true};
      }
      return;
    }
    for (int i = 0; i < n; ++i) {
      follower.primaryProfit[i] = primary[2 * i + x[i]];
      (*follower.secondaryProfit)[i] = secondary[2 * i + x[i]];
    }
    Strategy alpha = solveKnapsack(follower).selection;
    Rational value = defenderPayoff(cng, x, alpha);
    if (!best || value > best->leaderValue) best = McnpSolution{x, std::move(alpha), std::move(value), 0, true};
  };

  // Depth-first over resources, x_i = 0 before x_i = 1, pruning on budget.
  auto recurse = [&](auto&& self, int i, std::int64_t remaining) -> void {
    if (stopped) return;
    if (i == n) {
      if (options.deadline && (visited & 63) == 0 && std::chrono::steady_clock::now() >= *options.deadline && best) {
        stopped = true;
        return;
      }
      evaluateLeaf();
      return;
    }
    x[i] = 0;
    self(self, i + 1, remaining);
    if (cng.defenderCost[i] <= remaining) {
      x[i] = 1;
      self(self, i + 1, remaining - cng.defenderCost[i]);
      x[i] = 0;
    }
  };
  recurse(recurse, 0, cng.defenderBudget);

  best->leaderValue = defenderPayoff(cng, best->protect, best->attack);
  best->leaderStrategies = visited;
  best->complete = !stopped;
  return *best;
}

Rational bestDefenderOutcome(const CngInstance& cng) {
  GameInstance game = toGameInstance(cng);
  SelectionFunction h = SelectionFunction::playerPayoff(game, 0);
  MilpProblem problem = buildMasterMilp(game, h, {});
  MilpResult result = solveMilp(problem);
  if (result.status != MilpStatus::kOptimal) {
    throw Error(ErrorCode::kInfeasible, "no joint budget-feasible outcome");
  }
  return h.constant + result.value;
}

Rational priceOfStability(const CngInstance& cng, const Strategy& protect, const Strategy& attack,
                          const Rational& bestOutcome) {
  requireSize(cng, protect, "protection");
  requireSize(cng, attack, "attack");
  if (!withinBudget(cng.defenderCost, cng.defenderBudget, protect) ||
      !withinBudget(cng.attackerCost, cng.attackerBudget, attack)) {
    throw Error(ErrorCode::kInfeasible, "price of stability: solution exceeds a budget");
  }
  Rational value = defenderPayoff(cng, protect, attack);
  if (value <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "price of stability: defender payoff must be positive");
  }
  return bestOutcome / value;
}

Rational priceOfStability(const CngInstance& cng, const Strategy& protect, const Strategy& attack) {
  return priceOfStability(cng, protect, attack, bestDefenderOutcome(cng));
}

void GeneratorProfile::validate() const {
  if (criticalityMin < 1 || criticalityMax < criticalityMin || costMin < 1 || costMax < costMin) {
    throw Error(ErrorCode::kInvalidArgument, "generator: invalid criticality or cost range");
  }
  if (budgetFractions.empty()) throw Error(ErrorCode::kInvalidArgument, "generator: no budget fractions");
  for (const auto& f : budgetFractions) {
    if (f < 0 || f > 1) throw Error(ErrorCode::kInvalidArgument, "generator: budget fraction outside [0,1]");
  }
  if (scalarGrid < 2) throw Error(ErrorCode::kInvalidArgument, "generator: scalar grid must be at least 2");
  if (gammaMax < 0 || gammaMax > 1) throw Error(ErrorCode::kInvalidArgument, "generator: gammaMax outside [0,1]");
}

std::vector<CngInstance> generateInstances(int size, int count, std::uint64_t seed,
                                           const GeneratorProfile& profile) {
  if (size < 1 || count < 0) throw Error(ErrorCode::kInvalidArgument, "generator: invalid size or count");
  profile.validate();
  std::vector<CngInstance> out;
  out.reserve(count);
  for (int index = 0; index < count; ++index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(size), static_cast<std::uint32_t>(index)};
    std::mt19937_64 engine(seq);
    CngInstance c;
    for (int i = 0; i < size; ++i) {
      c.defenderCriticality.emplace_back(drawInt(engine, profile.criticalityMin, profile.criticalityMax));
      c.attackerCriticality.emplace_back(drawInt(engine, profile.criticalityMin, profile.criticalityMax));
      c.defenderCost.push_back(drawInt(engine, profile.costMin, profile.costMax));
      c.attackerCost.push_back(drawInt(engine, profile.costMin, profile.costMax));
    }
    const auto n_fractions = static_cast<std::int64_t>(profile.budgetFractions.size());
    const auto& rho_d = profile.budgetFractions[drawInt(engine, 0, n_fractions - 1)];
    const auto& rho_a = profile.budgetFractions[drawInt(engine, 0, n_fractions - 1)];
    c.defenderBudget = ceilTimes(rho_d, std::accumulate(c.defenderCost.begin(), c.defenderCost.end(), std::int64_t{0}));
    c.attackerBudget = ceilTimes(rho_a, std::accumulate(c.attackerCost.begin(), c.attackerCost.end(), std::int64_t{0}));
    std::int64_t draws[3];
    do {
      for (auto& d : draws) d = drawInt(engine, 0, profile.scalarGrid);
      std::sort(std::begin(draws), std::end(draws));
    } while (!(draws[0] < draws[1] && draws[1] < draws[2]));
    c.delta = Rational(draws[0], profile.scalarGrid);
    c.eta = Rational(draws[1], profile.scalarGrid);
    c.epsilon = Rational(draws[2], profile.scalarGrid);
    const std::int64_t gamma_steps = ceilTimes(profile.gammaMax, profile.scalarGrid);
    c.gamma = Rational(drawInt(engine, 0, std::min(gamma_steps, profile.scalarGrid)), profile.scalarGrid);
    if (c.gamma > profile.gammaMax) c.gamma = profile.gammaMax;
    c.validate();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ipgkit
