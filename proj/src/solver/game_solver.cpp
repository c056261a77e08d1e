// Copyright 2026 The cgplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <tuple>

#include "cgplan/errors.hpp"
#include "cgplan/solver.hpp"
#include "policy_iteration.hpp"

namespace cgplan {

namespace {

using detail::ImprovementTolerance;
using detail::PolicyIteration;

StateId Argmax(const std::vector<StateId>& candidates, const ValueFunction& v,
               double sign) {
  double best = -std::numeric_limits<double>::infinity();
  for (StateId w : candidates) best = std::max(best, sign * v[w]);
  const double tol = ImprovementTolerance(v);
  for (StateId w : candidates) {
    if (sign * v[w] >= best - tol) return w;
  }
  return candidates.front();
}

// Jacobi sweeps of the Shapley operator until the change drops below
// eps (1 - beta) / (2 beta), which puts the iterate within eps of the value.
ValueFunction ShapleyIteration(const Game& game, double beta,
                               const std::vector<std::vector<StateId>>& sorted,
                               const SolverOptions& options,
                               std::vector<double>& residuals) {
  const std::size_t n = game.num_states();
  const double stop = options.vi_epsilon * (1.0 - beta) / (2.0 * beta);
  ValueFunction v(n, 0.0), next(n, 0.0);
  for (std::size_t sweep = 0;; ++sweep) {
    if (sweep >= options.max_vi_sweeps) {
      throw InternalError("value iteration exceeded " +
                          std::to_string(options.max_vi_sweeps) + " sweeps");
    }
    double residual = 0.0;
    for (StateId s = 0; s < n; ++s) {
      double backup = 0.0;
      switch (game.owner(s)) {
        case Owner::kPlayer1:
          backup = -std::numeric_limits<double>::infinity();
          for (StateId w : sorted[s]) backup = std::max(backup, v[w]);
          break;
        case Owner::kPlayer2:
          backup = std::numeric_limits<double>::infinity();
          for (StateId w : sorted[s]) backup = std::min(backup, v[w]);
          break;
        case Owner::kRandom:
          for (const Edge& e : game.successors(s)) backup += *e.weight * v[e.to];
          break;
      }
      next[s] = game.reward(s) + beta * backup;
      residual = std::max(residual, std::abs(next[s] - v[s]));
    }
    std::swap(v, next);
    residuals.push_back(residual);
    if (residual <= stop) return v;
  }
}

GameValues Package(const Game& game, const std::vector<StateId>& successor,
                   ValueFunction values, std::size_t rounds) {
  GameValues out;
  out.val1 = std::move(values);
  out.opt1 = MemorylessStrategy{Player::kOne,
                                std::vector<StateId>(game.num_states(), kNoState)};
  out.opt2 = MemorylessStrategy{Player::kTwo,
                                std::vector<StateId>(game.num_states(), kNoState)};
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == Owner::kPlayer1) out.opt1.choice[v] = successor[v];
    if (game.owner(v) == Owner::kPlayer2) out.opt2.choice[v] = successor[v];
  }
  out.improvement_rounds = rounds;
  return out;
}

GameValues SolveDiscounted(const Game& game, const Objective& objective,
                           const SolverOptions& options) {
  const auto sorted = detail::SortedSuccessors(game);
  std::vector<double> residuals;
  ValueFunction approx =
      ShapleyIteration(game, objective.beta, sorted, options, residuals);

  std::vector<StateId> successor(game.num_states(), kNoState);
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == Owner::kPlayer1) successor[v] = Argmax(sorted[v], approx, 1.0);
    if (game.owner(v) == Owner::kPlayer2) successor[v] = Argmax(sorted[v], approx, -1.0);
  }
  // Exact re-evaluation: player 2 best-responds by policy iteration; any
  // greedy choice of player 1 that is still improvable (near-ties in the
  // approximate values) gets switched until none is left.
  for (std::size_t round = 0;; ++round) {
    if (round > options.max_improvement_rounds) {
      throw InternalError("discounted strategy improvement did not settle");
    }
    auto pi = PolicyIteration(game, objective, Owner::kPlayer2, Sense::kMin,
                              successor, options);
    successor = std::move(pi.successor);
    const double tol = ImprovementTolerance(pi.values);
    bool changed = false;
    for (StateId v = 0; v < game.num_states(); ++v) {
      if (game.owner(v) != Owner::kPlayer1) continue;
      double best = -std::numeric_limits<double>::infinity();
      for (StateId w : sorted[v]) best = std::max(best, pi.values[w]);
      if (best > pi.values[successor[v]] + tol) {
        successor[v] = Argmax(sorted[v], pi.values, 1.0);
        changed = true;
      }
    }
    if (!changed) {
      GameValues out = Package(game, successor, std::move(pi.values), round);
      out.vi_residuals = std::move(residuals);
      return out;
    }
  }
}

// Strategy improvement for player 1: evaluate f1 against an exact
// best-responding player 2, then make a single switch, gain improvements
// first, lowest state and lowest successor first.
GameValues SolveAverage(const Game& game, const Objective& objective,
                        const SolverOptions& options) {
  const auto sorted = detail::SortedSuccessors(game);
  std::vector<StateId> successor(game.num_states(), kNoState);
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) != Owner::kRandom) successor[v] = sorted[v].front();
  }
  std::set<std::vector<StateId>> visited;
  auto p1_part = [&](const std::vector<StateId>& succ) {
    std::vector<StateId> key;
    for (StateId v = 0; v < game.num_states(); ++v) {
      if (game.owner(v) == Owner::kPlayer1) key.push_back(succ[v]);
    }
    return key;
  };

  for (std::size_t round = 0;; ++round) {
    if (round > options.max_improvement_rounds) {
      throw InternalError("average strategy improvement exceeded " +
                          std::to_string(options.max_improvement_rounds) +
                          " rounds");
    }
    if (!visited.insert(p1_part(successor)).second) {
      throw InternalError("average strategy improvement revisited a strategy");
    }
    auto pi = PolicyIteration(game, objective, Owner::kPlayer2, Sense::kMin,
                              successor, options);
    successor = std::move(pi.successor);
    const ValueFunction& gain = pi.values;
    const ValueFunction& bias = pi.bias;
    const double tol = ImprovementTolerance(gain);
    const double btol = ImprovementTolerance(bias);

    auto find_switch = [&](bool by_bias) -> std::pair<StateId, StateId> {
      for (StateId v = 0; v < game.num_states(); ++v) {
        if (game.owner(v) != Owner::kPlayer1) continue;
        const StateId cur = successor[v];
        for (StateId w : sorted[v]) {
          bool better = by_bias ? (gain[w] >= gain[cur] - tol &&
                                   bias[w] > bias[cur] + btol)
                                : gain[w] > gain[cur] + tol;
          if (better) return {v, w};
        }
      }
      return {kNoState, kNoState};
    };
    auto [v, w] = find_switch(false);
    if (v == kNoState) std::tie(v, w) = find_switch(true);
    if (v == kNoState) {
      return Package(game, successor, std::move(pi.values), round);
    }
    successor[v] = w;
  }
}

}  // namespace

GameValues SolveGameValues(const Game& game, const Objective& objective,
                           const SolverOptions& options) {
  RequireValid(game);
  if (objective.discounted()) return SolveDiscounted(game, objective, options);
  return SolveAverage(game, objective, options);
}

PlayerValues SolveForPlayer(const Game& game, const Objective& objective,
                            Player player, const SolverOptions& options) {
  PlayerValues out;
  out.player = player;
  if (player == Player::kOne) {
    GameValues gv = SolveGameValues(game, objective, options);
    out.values = std::move(gv.val1);
    out.own = std::move(gv.opt1);
    out.opponent = std::move(gv.opt2);
    return out;
  }
  GameValues gv = SolveGameValues(DualGame(game), objective, options);
  out.values = std::move(gv.val1);
  out.own = MemorylessStrategy{Player::kTwo, std::move(gv.opt1.choice)};
  out.opponent = MemorylessStrategy{Player::kOne, std::move(gv.opt2.choice)};
  return out;
}

SolveResult GameSolve(const Game& game, const Objective& objective, double p,
                      const SolverOptions& options) {
  GameValues gv = SolveGameValues(game, objective, options);
  const double value = gv.val1[game.initial()];
  SolveResult out;
  out.winner = value >= p - kGoalTolerance ? Player::kOne : Player::kTwo;
  out.boundary = std::abs(value - p) <= kGoalTolerance;
  out.strategy = out.winner == Player::kOne ? gv.opt1 : gv.opt2;
  out.val1 = std::move(gv.val1);
  out.opt1 = std::move(gv.opt1);
  out.opt2 = std::move(gv.opt2);
  return out;
}

}  // namespace cgplan
