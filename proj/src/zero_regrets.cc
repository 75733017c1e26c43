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

#include "ipgkit/zero_regrets.h"

#include "ipgkit/oracle.h"

namespace ipgkit {

namespace {

void addPayoff(SelectionFunction& h, const GameInstance& game, int player) {
  const auto& pay = game.payoff(player);
  h.constant += pay.constant;
  for (int v = 0; v < game.numVars(player); ++v) h.linear[player][v] += pay.ownLinear[v];
  for (const auto& [j, e] : pay.oppLinear) {
    for (std::size_t v = 0; v < e.size(); ++v) h.linear[j][v] += e[v];
  }
  for (const auto& [j, q] : pay.bilinear) h.bilinear.push_back({player, j, q});
}

SelectionFunction emptySelection(const GameInstance& game) {
  SelectionFunction h;
  for (int i = 0; i < game.numPlayers(); ++i) h.linear.emplace_back(game.numVars(i), Rational(0));
  return h;
}

}  // namespace

SelectionFunction SelectionFunction::welfare(const GameInstance& game) {
  SelectionFunction h = emptySelection(game);
  for (int i = 0; i < game.numPlayers(); ++i) addPayoff(h, game, i);
  return h;
}

SelectionFunction SelectionFunction::playerPayoff(const GameInstance& game, int player) {
  if (player < 0 || player >= game.numPlayers()) {
    throw Error(ErrorCode::kInvalidArgument, "no such player " + std::to_string(player));
  }
  SelectionFunction h = emptySelection(game);
  addPayoff(h, game, player);
  return h;
}

void SelectionFunction::validate(const GameInstance& game) const {
  if (static_cast<int>(linear.size()) != game.numPlayers()) {
    throw Error(ErrorCode::kDimensionMismatch, "selection function does not cover every player");
  }
  for (int i = 0; i < game.numPlayers(); ++i) {
    if (static_cast<int>(linear[i].size()) != game.numVars(i)) {
      throw Error(ErrorCode::kDimensionMismatch, "selection function: wrong linear length");
    }
  }
  for (const auto& t : bilinear) {
    if (t.first == t.second || t.first < 0 || t.second < 0 || t.first >= game.numPlayers() ||
        t.second >= game.numPlayers()) {
      throw Error(ErrorCode::kInvalidArgument, "selection function: bilinear terms must pair distinct players");
    }
    if (static_cast<int>(t.matrix.size()) != game.numVars(t.first)) {
      throw Error(ErrorCode::kDimensionMismatch, "selection function: wrong bilinear shape");
    }
    for (const auto& row : t.matrix) {
      if (static_cast<int>(row.size()) != game.numVars(t.second)) {
        throw Error(ErrorCode::kDimensionMismatch, "selection function: wrong bilinear shape");
      }
    }
  }
}

Rational SelectionFunction::evaluate(const PureProfile& profile) const {
  Rational value = constant;
  for (std::size_t i = 0; i < linear.size(); ++i) value += dot(linear[i], profile.strategies.at(i));
  for (const auto& t : bilinear) {
    const auto& x = profile.strategies.at(t.first);
    const auto& y = profile.strategies.at(t.second);
    for (std::size_t a = 0; a < x.size(); ++a) {
      if (x[a] != 0) value += dot(t.matrix[a], y);
    }
  }
  return value;
}

JointLayout::JointLayout(const GameInstance& game, const SelectionFunction* selection) {
  for (int i = 0; i < game.numPlayers(); ++i) {
    offsets_.push_back(width_);
    width_ += game.numVars(i);
  }
  for (int i = 0; i < game.numPlayers(); ++i) {
    for (const auto& [j, q] : game.payoff(i).bilinear) {
      for (std::size_t a = 0; a < q.size(); ++a) {
        for (std::size_t b = 0; b < q[a].size(); ++b) {
          if (q[a][b] != 0) addProduct(i, static_cast<int>(a), j, static_cast<int>(b));
        }
      }
    }
  }
  if (selection != nullptr) {
    selection->validate(game);
    for (const auto& t : selection->bilinear) {
      for (std::size_t a = 0; a < t.matrix.size(); ++a) {
        for (std::size_t b = 0; b < t.matrix[a].size(); ++b) {
          if (t.matrix[a][b] != 0) addProduct(t.first, static_cast<int>(a), t.second, static_cast<int>(b));
        }
      }
    }
  }
}

void JointLayout::addProduct(int p, int a, int q, int b) {
  if (p > q) {
    std::swap(p, q);
    std::swap(a, b);
  }
  auto key = std::make_tuple(p, a, q, b);
  if (product_index_.count(key) != 0) return;
  product_index_[key] = width_;
  product_list_.emplace_back(offsets_[p] + a, offsets_[q] + b, width_);
  ++width_;
}

int JointLayout::product(int p, int a, int q, int b) const {
  if (p > q) {
    std::swap(p, q);
    std::swap(a, b);
  }
  auto it = product_index_.find(std::make_tuple(p, a, q, b));
  if (it == product_index_.end()) throw Error(ErrorCode::kInvalidArgument, "product not in layout");
  return it->second;
}

RationalVector JointLayout::jointPoint(const PureProfile& profile) const {
  RationalVector point(width_, Rational(0));
  for (std::size_t i = 0; i < profile.strategies.size(); ++i) {
    const auto& x = profile.strategies[i];
    for (std::size_t v = 0; v < x.size(); ++v) point[offsets_[i] + v] = x[v];
  }
  for (const auto& [u, v, z] : product_list_) point[z] = point[u] * point[v];
  return point;
}

PureProfile JointLayout::decode(const GameInstance& game, const RationalVector& point) const {
  PureProfile profile;
  for (int i = 0; i < game.numPlayers(); ++i) {
    Strategy x(game.numVars(i));
    for (int v = 0; v < game.numVars(i); ++v) x[v] = point.at(offsets_[i] + v) == 1 ? 1 : 0;
    profile.strategies.push_back(std::move(x));
  }
  return profile;
}

Rational EquilibriumCut::slackAt(const JointLayout& layout, const PureProfile& profile) const {
  RationalVector point = layout.jointPoint(profile);
  point.resize(inequality.coeffs.size());
  return inequality.slack(point);
}

EquilibriumCut makeCut(const GameInstance& game, const JointLayout& layout, int player,
                       const Strategy& deviation) {
  if (player < 0 || player >= game.numPlayers()) {
    throw Error(ErrorCode::kInvalidArgument, "no such player " + std::to_string(player));
  }
  if (!isFeasible(game.strategySet(player), deviation)) {
    throw Error(ErrorCode::kInfeasible, "cut deviation is not a feasible strategy");
  }
  const auto& pay = game.payoff(player);
  EquilibriumCut cut{player, deviation, {RationalVector(layout.width(), Rational(0)), Sense::kGreaterEqual, 0}};
  auto& coeffs = cut.inequality.coeffs;
  const int own = layout.offset(player);
  // Own side: c.x^i + sum_j sum_ab Q_ab z(i,a,j,b). Constant and opponent-only
  // terms appear on both sides and cancel.
  for (int a = 0; a < game.numVars(player); ++a) coeffs[own + a] += pay.ownLinear[a];
  for (const auto& [j, q] : pay.bilinear) {
    for (std::size_t a = 0; a < q.size(); ++a) {
      for (std::size_t b = 0; b < q[a].size(); ++b) {
        if (q[a][b] == 0) continue;
        coeffs[layout.product(player, static_cast<int>(a), j, static_cast<int>(b))] += q[a][b];
        // Deviation side: (deviation^T Q) x^j moved to the left.
        if (deviation[a] != 0) coeffs[layout.offset(j) + b] -= q[a][b];
      }
    }
  }
  cut.inequality.rhs = dot(pay.ownLinear, deviation);
  return cut;
}

EquilibriumCut makeCut(const GameInstance& game, int player, const Strategy& deviation) {
  return makeCut(game, JointLayout(game), player, deviation);
}

MilpProblem buildMasterMilp(const GameInstance& game, const SelectionFunction& selection,
                            const std::vector<EquilibriumCut>& cuts) {
  JointLayout layout(game, &selection);
  MilpProblem master;
  auto& lp = master.lp;
  lp.sense = ObjectiveSense::kMaximize;
  for (int i = 0; i < game.numPlayers(); ++i) {
    for (int v = 0; v < game.numVars(i); ++v) {
      master.binaryIndices.push_back(lp.addVariable(0, 1));
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [u, v, z] : layout.products()) pairs.emplace_back(u, v);
  auto linearization = linearizeProducts(lp, pairs);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (linearization.auxIndices[k] != std::get<2>(layout.products()[k])) {
      throw Error(ErrorCode::kInvalidArgument, "product layout mismatch");
    }
  }
  const int width = layout.width();
  for (int i = 0; i < game.numPlayers(); ++i) {
    for (const auto& c : game.strategySet(i).constraints()) {
      LinearConstraint joint{RationalVector(width, Rational(0)), c.sense, c.rhs};
      for (int v = 0; v < game.numVars(i); ++v) joint.coeffs[layout.offset(i) + v] = c.coeffs[v];
      lp.addConstraint(std::move(joint));
    }
  }
  for (int i = 0; i < game.numPlayers(); ++i) {
    for (int v = 0; v < game.numVars(i); ++v) lp.objective[layout.offset(i) + v] += selection.linear[i][v];
  }
  for (const auto& t : selection.bilinear) {
    for (std::size_t a = 0; a < t.matrix.size(); ++a) {
      for (std::size_t b = 0; b < t.matrix[a].size(); ++b) {
        if (t.matrix[a][b] == 0) continue;
        lp.objective[layout.product(t.first, static_cast<int>(a), t.second, static_cast<int>(b))] += t.matrix[a][b];
      }
    }
  }
  for (const auto& cut : cuts) {
    if (static_cast<int>(cut.inequality.coeffs.size()) > width) {
      throw Error(ErrorCode::kDimensionMismatch, "cut is wider than the master problem");
    }
    LinearConstraint padded = cut.inequality;
    padded.coeffs.resize(width, Rational(0));
    lp.addConstraint(std::move(padded));
  }
  return master;
}

ZeroRegretsResult solveZeroRegrets(const GameInstance& game, const SelectionFunction& selection,
                                   const ZeroRegretsOptions& options) {
  if (options.maxIterations < 1) throw Error(ErrorCode::kInvalidArgument, "maxIterations must be at least 1");
  JointLayout layout(game, &selection);
  MilpProblem master = buildMasterMilp(game, selection, {});
  ZeroRegretsResult result;
  std::optional<PureProfile> tracked;
  Rational tracked_epsilon;

  auto finishWithLimit = [&](ZeroRegretsResult::Status status) {
    result.status = status;
    if (tracked) {
      result.profile = tracked;
      result.epsilon = tracked_epsilon;
      result.hValue = selection.evaluate(*tracked);
    }
    return result;
  };

  for (int it = 1; it <= options.maxIterations; ++it) {
    if (it > 1 && options.deadline && std::chrono::steady_clock::now() >= *options.deadline) {
      return finishWithLimit(ZeroRegretsResult::Status::kTimeLimit);
    }
    result.iterations = it;
    MilpResult solution = solveMilp(master, options.milp);
    if (solution.status == MilpStatus::kInfeasible) {
      result.status = ZeroRegretsResult::Status::kNoPureNE;
      result.profile.reset();
      return result;
    }
    PureProfile candidate = layout.decode(game, solution.point);
    OracleVerdict verdict = improve(game, candidate);
    if (!options.epsilonTrack || !tracked || verdict.worstViolation < tracked_epsilon) {
      tracked = candidate;
      tracked_epsilon = verdict.worstViolation;
    }
    if (verdict.yes) {
      result.status = ZeroRegretsResult::Status::kOptimalPureNE;
      result.profile = candidate;
      result.epsilon = verdict.worstViolation;
      result.hValue = selection.evaluate(candidate);
      return result;
    }
    for (const auto& d : verdict.information) {
      EquilibriumCut cut = makeCut(game, layout, d.player, d.strategy);
      master.lp.addConstraint(cut.inequality);
      result.cuts.push_back(std::move(cut));
    }
  }
  return finishWithLimit(ZeroRegretsResult::Status::kIterationLimit);
}

}  // namespace ipgkit
