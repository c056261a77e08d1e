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

#ifndef CGPLAN_GAME_HPP_
#define CGPLAN_GAME_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cgplan {

// States are identified by their position in file order. Names are aliases.
using StateId = std::size_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

enum class Owner : std::uint8_t { kPlayer1, kPlayer2, kRandom };
enum class Player : std::uint8_t { kOne = 1, kTwo = 2 };

constexpr Owner OwnerOf(Player p) {
  return p == Player::kOne ? Owner::kPlayer1 : Owner::kPlayer2;
}
constexpr Player Opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
std::string_view OwnerName(Owner owner);

struct StateInfo {
  std::string name;
  Owner owner = Owner::kPlayer1;
  double reward = 0.0;
};

// Weight is present exactly on edges leaving random states in a valid game.
struct Edge {
  StateId to = kNoState;
  std::optional<double> weight;
};

// A perfect-information game structure: a directed graph whose states are
// partitioned among player 1, player 2 and chance, with per-state rewards and
// an initial state.
//
// A Game may hold structurally invalid data (dead states, bad weights, ...)
// so that Validate() can report it. Everything downstream of the parser
// expects a valid game; see RequireValid().
class Game {
 public:
  Game() = default;
  // Throws InputError on duplicate names or out-of-range edge targets.
  Game(std::vector<StateInfo> states, std::vector<std::vector<Edge>> edges,
       StateId initial);

  std::size_t num_states() const { return states_.size(); }
  const StateInfo& state(StateId v) const { return states_[v]; }
  Owner owner(StateId v) const { return states_[v].owner; }
  double reward(StateId v) const { return states_[v].reward; }
  const std::string& name(StateId v) const { return states_[v].name; }
  std::span<const Edge> successors(StateId v) const { return edges_[v]; }
  StateId initial() const { return initial_; }

  std::optional<StateId> Find(std::string_view name) const;
  bool HasEdge(StateId from, StateId to) const;
  std::size_t num_edges() const;

  const std::vector<StateInfo>& states() const { return states_; }
  const std::vector<std::vector<Edge>>& edges() const { return edges_; }

 private:
  std::vector<StateInfo> states_;
  std::vector<std::vector<Edge>> edges_;
  StateId initial_ = kNoState;
  std::unordered_map<std::string, StateId> index_;
};

// Incremental construction; names default to "s<index>".
class GameBuilder {
 public:
  StateId AddState(Owner owner, double reward, std::string name = {});
  void AddEdge(StateId from, StateId to, std::optional<double> weight = {});
  void SetInitial(StateId v) { initial_ = v; }
  Game Build() const;

 private:
  std::vector<StateInfo> states_;
  std::vector<std::vector<Edge>> edges_;
  StateId initial_ = 0;
};

struct Violation {
  std::string message;
  StateId state = kNoState;
  StateId target = kNoState;
};

// Every structural violation; empty iff the game is valid.
std::vector<Violation> Validate(const Game& game);
// Throws InputError listing the violations, if any.
void RequireValid(const Game& game);

enum class GameClass { kGame, kMdp, kDeterministicGame, kTransitionSystem };
std::string_view GameClassName(GameClass c);
GameClass Classify(const Game& game);

struct Objective {
  enum class Kind : std::uint8_t { kDiscounted, kAverage };
  Kind kind = Kind::kAverage;
  double beta = 0.0;

  static Objective Discounted(double beta);
  static Objective Average() { return Objective{Kind::kAverage, 0.0}; }
  bool discounted() const { return kind == Kind::kDiscounted; }
};
std::string ObjectiveName(const Objective& objective);

using ValueFunction = std::vector<double>;

// Memoryless strategy: choice[v] is the successor picked at v for every state
// owned by `player`, kNoState elsewhere.
struct MemorylessStrategy {
  Player player = Player::kOne;
  std::vector<StateId> choice;

  StateId operator()(StateId v) const { return choice[v]; }
  bool operator==(const MemorylessStrategy&) const = default;
};

std::vector<std::string> StrategyViolations(const Game& game,
                                            const MemorylessStrategy& strategy);
void RequireValidStrategy(const Game& game, const MemorylessStrategy& strategy);

// Strategy that picks the lowest-indexed successor everywhere.
MemorylessStrategy FirstChoiceStrategy(const Game& game, Player player);

// Keeps only the chosen edge at every state of strategy.player. States,
// rewards and weights are untouched.
Game Restrict(const Game& game, const MemorylessStrategy& strategy);

// Same graph with the roles of the two players exchanged and rewards negated.
// Solving it for player 1 solves the original for player 2.
Game DualGame(const Game& game);

// True when every non-random state has exactly one successor.
bool IsMarkovChain(const Game& game);

}  // namespace cgplan

#endif  // CGPLAN_GAME_HPP_
