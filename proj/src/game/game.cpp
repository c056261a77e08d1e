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

#include "cgplan/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "cgplan/errors.hpp"

namespace cgplan {

namespace {

constexpr double kSumTolerance = 1e-9;

std::string Describe(const Game& game, StateId v) {
  return "'" + game.name(v) + "'";
}

}  // namespace

std::string_view OwnerName(Owner owner) {
  switch (owner) {
    case Owner::kPlayer1: return "P1";
    case Owner::kPlayer2: return "P2";
    case Owner::kRandom: return "R";
  }
  return "?";
}

Game::Game(std::vector<StateInfo> states, std::vector<std::vector<Edge>> edges,
           StateId initial)
    : states_(std::move(states)), edges_(std::move(edges)), initial_(initial) {
  if (edges_.size() != states_.size()) {
    throw InputError("edge table size does not match the number of states");
  }
  for (StateId v = 0; v < states_.size(); ++v) {
    if (!index_.emplace(states_[v].name, v).second) {
      throw InputError("duplicate state name '" + states_[v].name + "'");
    }
    for (const Edge& e : edges_[v]) {
      if (e.to >= states_.size()) {
        throw InputError("edge from '" + states_[v].name +
                         "' points outside the state set");
      }
    }
  }
}

std::optional<StateId> Game::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Game::HasEdge(StateId from, StateId to) const {
  return std::any_of(edges_[from].begin(), edges_[from].end(),
                     [to](const Edge& e) { return e.to == to; });
}

std::size_t Game::num_edges() const {
  std::size_t n = 0;
  for (const auto& out : edges_) n += out.size();
  return n;
}

StateId GameBuilder::AddState(Owner owner, double reward, std::string name) {
  StateId id = states_.size();
  if (name.empty()) name = "s" + std::to_string(id);
  states_.push_back(StateInfo{std::move(name), owner, reward});
  edges_.emplace_back();
  return id;
}

void GameBuilder::AddEdge(StateId from, StateId to,
                          std::optional<double> weight) {
  if (from >= edges_.size()) throw InputError("edge source out of range");
  edges_[from].push_back(Edge{to, weight});
}

Game GameBuilder::Build() const { return Game(states_, edges_, initial_); }

std::vector<Violation> Validate(const Game& game) {
  std::vector<Violation> out;
  if (game.num_states() == 0) {
    out.push_back({"game has no states"});
    return out;
  }
  if (game.initial() >= game.num_states()) {
    out.push_back({"initial state is not a member of the state set"});
  }
  for (StateId v = 0; v < game.num_states(); ++v) {
    const auto succ = game.successors(v);
    if (!std::isfinite(game.reward(v))) {
      out.push_back({"reward of " + Describe(game, v) + " is not finite", v});
    }
    if (succ.empty()) {
      out.push_back({"dead state " + Describe(game, v) +
                         " has no outgoing edge", v});
      continue;
    }
    std::unordered_set<StateId> seen;
    for (const Edge& e : succ) {
      if (!seen.insert(e.to).second) {
        out.push_back({"duplicate edge " + Describe(game, v) + " -> " +
                           Describe(game, e.to), v, e.to});
      }
    }
    if (game.owner(v) != Owner::kRandom) {
      for (const Edge& e : succ) {
        if (e.weight) {
          out.push_back({"player edge " + Describe(game, v) + " -> " +
                             Describe(game, e.to) + " carries a weight",
                         v, e.to});
        }
      }
      continue;
    }
    double sum = 0.0;
    bool complete = true;
    for (const Edge& e : succ) {
      if (!e.weight) {
        out.push_back({"random edge " + Describe(game, v) + " -> " +
                           Describe(game, e.to) + " has no weight",
                       v, e.to});
        complete = false;
        continue;
      }
      double w = *e.weight;
      if (!(w > 0.0 && w <= 1.0)) {
        std::ostringstream msg;
        msg << "weight " << w << " on " << Describe(game, v) << " -> "
            << Describe(game, e.to) << " is outside (0,1]";
        out.push_back({msg.str(), v, e.to});
      }
      sum += w;
    }
    if (complete && std::abs(sum - 1.0) > kSumTolerance) {
      std::ostringstream msg;
      msg.precision(9);
      msg << "weights of random state " << Describe(game, v) << " sum to "
          << sum << " != 1";
      out.push_back({msg.str(), v});
    }
  }
  return out;
}

void RequireValid(const Game& game) {
  auto violations = Validate(game);
  if (violations.empty()) return;
  std::string msg = "invalid game:";
  for (const auto& v : violations) msg += "\n  " + v.message;
  throw InputError(msg);
}

std::string_view GameClassName(GameClass c) {
  switch (c) {
    case GameClass::kGame: return "GAME";
    case GameClass::kMdp: return "MDP";
    case GameClass::kDeterministicGame: return "DETERMINISTIC_GAME";
    case GameClass::kTransitionSystem: return "TRANSITION_SYSTEM";
  }
  return "?";
}

GameClass Classify(const Game& game) {
  bool has_p2 = false;
  bool has_random = false;
  for (const auto& s : game.states()) {
    has_p2 |= s.owner == Owner::kPlayer2;
    has_random |= s.owner == Owner::kRandom;
  }
  if (!has_p2 && !has_random) return GameClass::kTransitionSystem;
  if (!has_p2) return GameClass::kMdp;
  if (!has_random) return GameClass::kDeterministicGame;
  return GameClass::kGame;
}

Objective Objective::Discounted(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw InputError("discount factor must lie strictly inside (0,1)");
  }
  return Objective{Kind::kDiscounted, beta};
}

std::string ObjectiveName(const Objective& objective) {
  if (!objective.discounted()) return "average";
  std::ostringstream out;
  out << "discounted(beta=" << objective.beta << ")";
  return out.str();
}

std::vector<std::string> StrategyViolations(
    const Game& game, const MemorylessStrategy& strategy) {
  std::vector<std::string> out;
  if (strategy.choice.size() != game.num_states()) {
    out.push_back("strategy covers " + std::to_string(strategy.choice.size()) +
                  " states, game has " + std::to_string(game.num_states()));
    return out;
  }
  const Owner mine = OwnerOf(strategy.player);
  for (StateId v = 0; v < game.num_states(); ++v) {
    StateId w = strategy.choice[v];
    if (game.owner(v) != mine) {
      if (w != kNoState) {
        out.push_back("strategy defined at '" + game.name(v) +
                      "' which the player does not own");
      }
      continue;
    }
    if (w == kNoState) {
      out.push_back("strategy undefined at '" + game.name(v) + "'");
    } else if (w >= game.num_states() || !game.HasEdge(v, w)) {
      out.push_back("strategy choice at '" + game.name(v) +
                    "' is not an edge of the game");
    }
  }
  return out;
}

void RequireValidStrategy(const Game& game,
                          const MemorylessStrategy& strategy) {
  auto problems = StrategyViolations(game, strategy);
  if (problems.empty()) return;
  std::string msg = "strategy does not match the game:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw InputError(msg);
}

MemorylessStrategy FirstChoiceStrategy(const Game& game, Player player) {
  MemorylessStrategy s{player, std::vector<StateId>(game.num_states(), kNoState)};
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) != OwnerOf(player)) continue;
    StateId best = kNoState;
    for (const Edge& e : game.successors(v)) best = std::min(best, e.to);
    s.choice[v] = best;
  }
  return s;
}

Game Restrict(const Game& game, const MemorylessStrategy& strategy) {
  RequireValidStrategy(game, strategy);
  auto edges = game.edges();
  const Owner mine = OwnerOf(strategy.player);
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) != mine) continue;
    edges[v] = {Edge{strategy.choice[v], std::nullopt}};
  }
  return Game(game.states(), std::move(edges), game.initial());
}

Game DualGame(const Game& game) {
  auto states = game.states();
  for (auto& s : states) {
    if (s.owner == Owner::kPlayer1) {
      s.owner = Owner::kPlayer2;
    } else if (s.owner == Owner::kPlayer2) {
      s.owner = Owner::kPlayer1;
    }
    s.reward = -s.reward;
  }
  return Game(std::move(states), game.edges(), game.initial());
}

bool IsMarkovChain(const Game& game) {
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) != Owner::kRandom && game.successors(v).size() != 1) {
      return false;
    }
  }
  return true;
}

}  // namespace cgplan
