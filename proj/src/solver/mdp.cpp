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
#include <string>

#include "cgplan/errors.hpp"
#include "cgplan/solver.hpp"
#include "policy_iteration.hpp"

namespace cgplan {
namespace detail {

double ImprovementTolerance(const ValueFunction& values) {
  double scale = 1.0;
  for (double x : values) scale = std::max(scale, std::abs(x));
  return 1e-10 * scale;
}

std::vector<std::vector<StateId>> SortedSuccessors(const Game& game) {
  std::vector<std::vector<StateId>> out(game.num_states());
  for (StateId v = 0; v < game.num_states(); ++v) {
    for (const Edge& e : game.successors(v)) out[v].push_back(e.to);
    std::sort(out[v].begin(), out[v].end());
  }
  return out;
}

namespace {

// Picks, among `candidates`, the lowest-indexed one whose score is within
// `tol` of the best score; returns `current` unless the best beats it by
// more than `tol`.
template <typename Score>
StateId BestSwitch(const std::vector<StateId>& candidates, StateId current,
                   double tol, Score score) {
  double best = -std::numeric_limits<double>::infinity();
  for (StateId w : candidates) best = std::max(best, score(w));
  if (!(best > score(current) + tol)) return current;
  for (StateId w : candidates) {
    if (score(w) >= best - tol) return w;
  }
  return current;
}

}  // namespace

PolicyIterationResult PolicyIteration(const Game& game,
                                      const Objective& objective,
                                      Owner controller, Sense sense,
                                      std::vector<StateId> successor,
                                      const SolverOptions& options,
                                      bool record_history) {
  const double sign = sense == Sense::kMax ? 1.0 : -1.0;
  const auto sorted = SortedSuccessors(game);
  std::vector<StateId> controlled;
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == controller) controlled.push_back(v);
  }

  PolicyIterationResult result;
  for (std::size_t round = 0;; ++round) {
    if (round > options.max_improvement_rounds) {
      throw InternalError("policy iteration exceeded " +
                          std::to_string(options.max_improvement_rounds) +
                          " improvement rounds");
    }
    ValueFunction values;
    ValueFunction bias;
    if (objective.discounted()) {
      values = EvaluateChoices(game, successor, objective);
    } else {
      GainBias gb = EvaluateChoicesAverage(game, successor);
      values = std::move(gb.gain);
      bias = std::move(gb.bias);
    }
    if (record_history) result.history.push_back(values);

    bool changed = false;
    const double tol = ImprovementTolerance(values);
    for (StateId v : controlled) {
      StateId next = BestSwitch(sorted[v], successor[v], tol,
                                [&](StateId w) { return sign * values[w]; });
      if (next != successor[v]) {
        successor[v] = next;
        changed = true;
      }
    }
    if (!changed && !objective.discounted()) {
      // Gains cannot improve anywhere; refine on the bias among the
      // gain-maximising successors.
      const double btol = ImprovementTolerance(bias);
      for (StateId v : controlled) {
        std::vector<StateId> keep;
        for (StateId w : sorted[v]) {
          if (sign * values[w] >= sign * values[successor[v]] - tol) {
            keep.push_back(w);
          }
        }
        StateId next = BestSwitch(keep, successor[v], btol,
                                  [&](StateId w) { return sign * bias[w]; });
        if (next != successor[v]) {
          successor[v] = next;
          changed = true;
        }
      }
    }
    if (!changed) {
      result.successor = std::move(successor);
      result.values = std::move(values);
      result.bias = std::move(bias);
      result.improvements = round;
      return result;
    }
  }
}

}  // namespace detail

MdpResult MdpSolve(const Game& game, const Objective& objective,
                   Player controller, Sense sense,
                   const SolverOptions& options) {
  RequireValid(game);
  const Owner mine = OwnerOf(controller);
  const Owner other = OwnerOf(Opponent(controller));
  std::vector<StateId> successor(game.num_states(), kNoState);
  const auto sorted = detail::SortedSuccessors(game);
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == other && sorted[v].size() != 1) {
      throw InputError("MDP solve for player " +
                       std::to_string(static_cast<int>(controller)) +
                       ": opponent state '" + game.name(v) +
                       "' still has a choice (two live players)");
    }
    if (game.owner(v) != Owner::kRandom) successor[v] = sorted[v].front();
  }
  auto pi = detail::PolicyIteration(game, objective, mine, sense,
                                    std::move(successor), options,
                                    /*record_history=*/true);
  MdpResult out;
  out.values = std::move(pi.values);
  out.bias = std::move(pi.bias);
  out.improvements = pi.improvements;
  out.history = std::move(pi.history);
  out.policy = MemorylessStrategy{controller,
                                  std::vector<StateId>(game.num_states(), kNoState)};
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == mine) out.policy.choice[v] = pi.successor[v];
  }
  return out;
}

}  // namespace cgplan
