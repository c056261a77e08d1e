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

#ifndef CGPLAN_SOLVER_HPP_
#define CGPLAN_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cgplan/game.hpp"

namespace cgplan {

// Values within this distance of the goal count as reaching it.
inline constexpr double kGoalTolerance = 1e-9;

struct SolverOptions {
  // Target accuracy of discounted value iteration before exact re-evaluation.
  double vi_epsilon = 1e-9;
  std::size_t max_vi_sweeps = 1'000'000;
  std::size_t max_improvement_rounds = 10'000;
};

// ---------------------------------------------------------------------------
// Markov chains

// Values of a Markov chain (every non-random state has one successor).
// Discounted: V = r + beta * P V. Average: Cesaro-limit mean reward, computed
// through the recurrent-class decomposition, so multichain inputs are fine.
ValueFunction ChainValue(const Game& chain, const Objective& objective);

struct GainBias {
  ValueFunction gain;
  // Canonical bias h with P* h = 0, i.e. (I - P + P*) h = (I - P*) r.
  ValueFunction bias;
};
GainBias ChainGainBias(const Game& chain);

// Evaluates the chain induced by fixing a successor for every non-random state.
// `successor[v]` is ignored at random states.
ValueFunction EvaluateChoices(const Game& game,
                              std::span<const StateId> successor,
                              const Objective& objective);
GainBias EvaluateChoicesAverage(const Game& game,
                                std::span<const StateId> successor);

// Value of the profile (f1, f2).
ValueFunction EvaluateProfile(const Game& game, const MemorylessStrategy& f1,
                              const MemorylessStrategy& f2,
                              const Objective& objective);

// ---------------------------------------------------------------------------
// MDPs

enum class Sense : std::uint8_t { kMax, kMin };

struct MdpResult {
  ValueFunction values;  // discounted values, or gains
  ValueFunction bias;    // average objective only
  MemorylessStrategy policy;
  std::size_t improvements = 0;
  // Value function after every evaluation, first policy included.
  std::vector<ValueFunction> history;
};

// Policy iteration for the player `controller`. States of the other player must
// already be fixed (exactly one successor); throws InputError otherwise.
MdpResult MdpSolve(const Game& game, const Objective& objective,
                   Player controller, Sense sense,
                   const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// Perfect-information games

struct GameValues {
  ValueFunction val1;
  MemorylessStrategy opt1;
  MemorylessStrategy opt2;
  std::size_t improvement_rounds = 0;
  // Sup-norm change of every value-iteration sweep (discounted only).
  std::vector<double> vi_residuals;
};

// Player-1 values and optimal memoryless strategies for both players.
GameValues SolveGameValues(const Game& game, const Objective& objective,
                           const SolverOptions& options = {});

struct PlayerValues {
  Player player = Player::kOne;
  ValueFunction values;  // val_player
  MemorylessStrategy own;
  MemorylessStrategy opponent;
};

// Values from `player`'s own point of view: for player 2 the game is solved
// with roles swapped and rewards negated, so val1 + val2 = 0 is a real check.
PlayerValues SolveForPlayer(const Game& game, const Objective& objective,
                            Player player, const SolverOptions& options = {});

struct SolveResult {
  Player winner = Player::kOne;
  // p-optimal plan when player 1 wins, spoiling strategy otherwise.
  MemorylessStrategy strategy;
  ValueFunction val1;
  MemorylessStrategy opt1;
  MemorylessStrategy opt2;
  // |val1(v0) - p| <= kGoalTolerance.
  bool boundary = false;
};

SolveResult GameSolve(const Game& game, const Objective& objective, double p,
                      const SolverOptions& options = {});

// Exhaustive enumeration of all memoryless strategy pairs. Exponential; used
// as ground truth for the solvers above.
inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;
ValueFunction BruteForceValues(const Game& game, const Objective& objective,
                               std::uint64_t max_profiles = kBruteForceLimit);

// Number of memoryless profiles, saturating at UINT64_MAX.
std::uint64_t CountProfiles(const Game& game);

}  // namespace cgplan

#endif  // CGPLAN_SOLVER_HPP_
