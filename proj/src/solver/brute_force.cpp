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
#include <limits>

#include "cgplan/errors.hpp"
#include "cgplan/solver.hpp"
#include "policy_iteration.hpp"

namespace cgplan {

namespace {

// Odometer over the successor lists of `states`.
bool Advance(const std::vector<StateId>& states,
             const std::vector<std::vector<StateId>>& sorted,
             std::vector<std::size_t>& digit, std::vector<StateId>& successor) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    StateId v = states[i];
    if (++digit[i] < sorted[v].size()) {
      successor[v] = sorted[v][digit[i]];
      return true;
    }
    digit[i] = 0;
    successor[v] = sorted[v][0];
  }
  return false;
}

}  // namespace

std::uint64_t CountProfiles(const Game& game) {
  std::uint64_t count = 1;
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == Owner::kRandom) continue;
    std::uint64_t d = game.successors(v).size();
    if (d != 0 && count > std::numeric_limits<std::uint64_t>::max() / d) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= std::max<std::uint64_t>(d, 1);
  }
  return count;
}

ValueFunction BruteForceValues(const Game& game, const Objective& objective,
                               std::uint64_t max_profiles) {
  RequireValid(game);
  if (CountProfiles(game) > max_profiles) {
    throw InputError("instance too large for enumeration (more than " +
                     std::to_string(max_profiles) + " strategy profiles)");
  }
  const auto sorted = detail::SortedSuccessors(game);
  std::vector<StateId> p1, p2;
  std::vector<StateId> successor(game.num_states(), kNoState);
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == Owner::kPlayer1) p1.push_back(v);
    if (game.owner(v) == Owner::kPlayer2) p2.push_back(v);
    if (game.owner(v) != Owner::kRandom) successor[v] = sorted[v][0];
  }
  const std::size_t n = game.num_states();
  ValueFunction sup(n, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> d1(p1.size(), 0);
  do {
    ValueFunction inf(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> d2(p2.size(), 0);
    for (StateId v : p2) successor[v] = sorted[v][0];
    do {
      ValueFunction values = EvaluateChoices(game, successor, objective);
      for (StateId v = 0; v < n; ++v) inf[v] = std::min(inf[v], values[v]);
    } while (Advance(p2, sorted, d2, successor));
    for (StateId v = 0; v < n; ++v) sup[v] = std::max(sup[v], inf[v]);
  } while (Advance(p1, sorted, d1, successor));
  return sup;
}

}  // namespace cgplan
