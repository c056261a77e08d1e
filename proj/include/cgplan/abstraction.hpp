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

#ifndef CGPLAN_ABSTRACTION_HPP_
#define CGPLAN_ABSTRACTION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cgplan/game.hpp"
#include "json.hpp"

namespace cgplan {

// A partition of the concrete states. Blocks are kept sorted.
struct StatePartition {
  std::vector<std::vector<StateId>> blocks;
  std::vector<std::size_t> block_of;

  // Throws InputError if the blocks overlap, are empty, or miss a state.
  static StatePartition FromBlocks(std::size_t num_states,
                                   std::vector<std::vector<StateId>> blocks);
  std::size_t size() const { return blocks.size(); }
  bool operator==(const StatePartition&) const = default;
};

// Empty iff the partition covers the game with owner-homogeneous blocks and
// every random state sits in a singleton.
std::vector<std::string> PartitionViolations(const Game& game,
                                             const StatePartition& partition);

// The abstract game induced by a partition.
//  - player 1 block -> W iff every member has an edge into W;
//  - player 2 / random block -> W iff some member has an edge into W;
//  - random weights are summed per target block;
//  - block reward is the minimum member reward.
struct Abstraction {
  StatePartition partition;
  Game game;
  // Extra blocks created by dead-block repair while building.
  std::size_t repair_splits = 0;

  const std::vector<StateId>& Concretize(std::size_t block) const {
    return partition.blocks[block];
  }
};

// Splits every player-1 block that has no universal edge by grouping members
// on their set of successor blocks, until no such block is left. The group
// holding the lowest member stays in place; the others are appended.
StatePartition RepairDeadBlocks(const Game& game, StatePartition partition,
                                std::size_t* splits = nullptr);

// Throws InputError when the partition is not valid for the game.
Abstraction BuildAbstraction(const Game& game, const StatePartition& partition);

// {v0}, remaining player-1 states, remaining player-2 states, one singleton per
// random state; dead blocks already repaired.
StatePartition InitialAbstraction(const Game& game);

// Replaces `block` by (block \ subset) in place and appends `subset`. Throws
// InputError unless subset is a nonempty proper subset of the block.
StatePartition Split(const StatePartition& partition, std::size_t block,
                     std::span<const StateId> subset);

// Concrete plan: each player-1 state takes its lowest-indexed successor inside
// the block chosen by the abstract strategy.
MemorylessStrategy ConcretizePlan(const Game& concrete,
                                  const Abstraction& abstraction,
                                  const MemorylessStrategy& f1_abstract);

// Same for player 2. Throws InputError when some state has no edge into its
// block's target, i.e. the spoiler was not genuine.
MemorylessStrategy ConcretizeSpoiler(const Game& concrete,
                                     const Abstraction& abstraction,
                                     const MemorylessStrategy& f2_abstract);

// {"blocks": [["v0"], ["a", "b"], ...]}
StatePartition PartitionFromJson(const Game& game, const nlohmann::json& doc);
nlohmann::json PartitionToJson(const Game& game,
                               const StatePartition& partition);
// Abstract game in the game file format plus a "concretization" annex.
nlohmann::json AbstractionToJson(const Game& concrete,
                                 const Abstraction& abstraction);

}  // namespace cgplan

#endif  // CGPLAN_ABSTRACTION_HPP_
