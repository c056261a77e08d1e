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

#include "cgplan/abstraction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cgplan/errors.hpp"
#include "cgplan/game_io.hpp"

namespace cgplan {

using nlohmann::json;

namespace {

// Sorted set of blocks reachable in one step from v.
std::vector<std::size_t> SuccessorBlocks(const Game& game,
                                         const StatePartition& partition,
                                         StateId v) {
  std::vector<std::size_t> out;
  for (const Edge& e : game.successors(v)) out.push_back(partition.block_of[e.to]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> UniversalTargets(const Game& game,
                                          const StatePartition& partition,
                                          const std::vector<StateId>& block) {
  std::vector<std::size_t> common = SuccessorBlocks(game, partition, block[0]);
  for (std::size_t i = 1; i < block.size() && !common.empty(); ++i) {
    auto mine = SuccessorBlocks(game, partition, block[i]);
    std::vector<std::size_t> both;
    std::set_intersection(common.begin(), common.end(), mine.begin(),
                          mine.end(), std::back_inserter(both));
    common = std::move(both);
  }
  return common;
}

std::string BlockName(const Game& game, const std::vector<StateId>& block) {
  std::string name = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) name += ",";
    name += game.name(block[i]);
  }
  return name + "}";
}

MemorylessStrategy Concretize(const Game& concrete,
                              const Abstraction& abstraction,
                              const MemorylessStrategy& abstract_strategy,
                              bool require_edge) {
  RequireValidStrategy(abstraction.game, abstract_strategy);
  const Owner mine = OwnerOf(abstract_strategy.player);
  MemorylessStrategy out{abstract_strategy.player,
                         std::vector<StateId>(concrete.num_states(), kNoState)};
  for (StateId v = 0; v < concrete.num_states(); ++v) {
    if (concrete.owner(v) != mine) continue;
    const std::size_t target =
        abstract_strategy(abstraction.partition.block_of[v]);
    StateId pick = kNoState;
    for (const Edge& e : concrete.successors(v)) {
      if (abstraction.partition.block_of[e.to] == target) {
        pick = std::min(pick, e.to);
      }
    }
    if (pick == kNoState) {
      const std::string msg = "state '" + concrete.name(v) +
                              "' has no edge into abstract target " +
                              abstraction.game.name(target);
      if (require_edge) throw InternalError(msg);
      throw InputError(msg + " (spoiler is not genuine)");
    }
    out.choice[v] = pick;
  }
  return out;
}

}  // namespace

StatePartition StatePartition::FromBlocks(
    std::size_t num_states, std::vector<std::vector<StateId>> blocks) {
  StatePartition p;
  p.block_of.assign(num_states, kNoState);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    auto& block = blocks[b];
    if (block.empty()) throw InputError("partition has an empty block");
    std::sort(block.begin(), block.end());
    for (StateId v : block) {
      if (v >= num_states) throw InputError("partition names an unknown state");
      if (p.block_of[v] != kNoState) {
        throw InputError("partition blocks overlap at state index " +
                         std::to_string(v));
      }
      p.block_of[v] = b;
    }
  }
  for (StateId v = 0; v < num_states; ++v) {
    if (p.block_of[v] == kNoState) {
      throw InputError("partition does not cover state index " +
                       std::to_string(v));
    }
  }
  p.blocks = std::move(blocks);
  return p;
}

std::vector<std::string> PartitionViolations(const Game& game,
                                             const StatePartition& partition) {
  std::vector<std::string> out;
  if (partition.block_of.size() != game.num_states()) {
    out.push_back("partition size does not match the game");
    return out;
  }
  for (std::size_t b = 0; b < partition.size(); ++b) {
    const auto& block = partition.blocks[b];
    const Owner owner = game.owner(block[0]);
    for (StateId v : block) {
      if (partition.block_of[v] != b) {
        out.push_back("block table is inconsistent at '" + game.name(v) + "'");
      }
      if (game.owner(v) != owner) {
        out.push_back("block " + BlockName(game, block) +
                      " mixes owners");
        break;
      }
    }
    if (owner == Owner::kRandom && block.size() != 1) {
      out.push_back("random states must be singleton blocks: " +
                    BlockName(game, block));
    }
  }
  return out;
}

StatePartition RepairDeadBlocks(const Game& game, StatePartition partition,
                                std::size_t* splits) {
  std::size_t added = 0;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t b = 0; b < partition.size(); ++b) {
      const auto& block = partition.blocks[b];
      if (game.owner(block[0]) != Owner::kPlayer1) continue;
      if (!UniversalTargets(game, partition, block).empty()) continue;
      std::map<std::vector<std::size_t>, std::vector<StateId>> groups;
      for (StateId v : block) {
        groups[SuccessorBlocks(game, partition, v)].push_back(v);
      }
      std::vector<std::vector<StateId>> parts;
      for (auto& [sig, members] : groups) parts.push_back(std::move(members));
      std::sort(parts.begin(), parts.end());
      auto blocks = partition.blocks;
      blocks[b] = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) blocks.push_back(parts[i]);
      added += parts.size() - 1;
      partition = StatePartition::FromBlocks(game.num_states(), std::move(blocks));
      again = true;
      break;
    }
  }
  if (splits) *splits = added;
  return partition;
}

Abstraction BuildAbstraction(const Game& game, const StatePartition& input) {
  RequireValid(game);
  auto problems = PartitionViolations(game, input);
  if (!problems.empty()) {
    std::string msg = "invalid partition:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw InputError(msg);
  }
  Abstraction out;
  out.partition = RepairDeadBlocks(game, input, &out.repair_splits);
  const auto& partition = out.partition;

  std::vector<StateInfo> states;
  std::vector<std::vector<Edge>> edges(partition.size());
  for (std::size_t b = 0; b < partition.size(); ++b) {
    const auto& block = partition.blocks[b];
    StateInfo info;
    info.name = BlockName(game, block);
    info.owner = game.owner(block[0]);
    info.reward = game.reward(block[0]);
    for (StateId v : block) info.reward = std::min(info.reward, game.reward(v));
    states.push_back(std::move(info));

    switch (game.owner(block[0])) {
      case Owner::kPlayer1:
        for (std::size_t w : UniversalTargets(game, partition, block)) {
          edges[b].push_back(Edge{w, std::nullopt});
        }
        break;
      case Owner::kPlayer2: {
        std::set<std::size_t> targets;
        for (StateId v : block) {
          for (std::size_t w : SuccessorBlocks(game, partition, v)) targets.insert(w);
        }
        for (std::size_t w : targets) edges[b].push_back(Edge{w, std::nullopt});
        break;
      }
      case Owner::kRandom: {
        std::map<std::size_t, double> mass;
        for (const Edge& e : game.successors(block[0])) {
          mass[partition.block_of[e.to]] += *e.weight;
        }
        for (const auto& [w, p] : mass) edges[b].push_back(Edge{w, p});
        break;
      }
    }
  }
  out.game = Game(std::move(states), std::move(edges),
                  partition.block_of[game.initial()]);
  return out;
}

StatePartition InitialAbstraction(const Game& game) {
  RequireValid(game);
  const StateId v0 = game.initial();
  std::vector<std::vector<StateId>> blocks{{v0}};
  std::vector<StateId> p1, p2;
  std::vector<std::vector<StateId>> random;
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (v == v0) continue;
    switch (game.owner(v)) {
      case Owner::kPlayer1: p1.push_back(v); break;
      case Owner::kPlayer2: p2.push_back(v); break;
      case Owner::kRandom: random.push_back({v}); break;
    }
  }
  if (!p1.empty()) blocks.push_back(std::move(p1));
  if (!p2.empty()) blocks.push_back(std::move(p2));
  for (auto& r : random) blocks.push_back(std::move(r));
  return RepairDeadBlocks(
      game, StatePartition::FromBlocks(game.num_states(), std::move(blocks)));
}

StatePartition Split(const StatePartition& partition, std::size_t block,
                     std::span<const StateId> subset) {
  if (block >= partition.size()) throw InputError("split: no such block");
  const auto& members = partition.blocks[block];
  std::vector<StateId> inside(subset.begin(), subset.end());
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  if (inside.empty() || inside.size() >= members.size()) {
    throw InputError("split: subset must be a nonempty proper subset");
  }
  if (!std::includes(members.begin(), members.end(), inside.begin(),
                     inside.end())) {
    throw InputError("split: subset is not contained in the block");
  }
  std::vector<StateId> rest;
  std::set_difference(members.begin(), members.end(), inside.begin(),
                      inside.end(), std::back_inserter(rest));
  auto blocks = partition.blocks;
  blocks[block] = std::move(rest);
  blocks.push_back(std::move(inside));
  return StatePartition::FromBlocks(partition.block_of.size(), std::move(blocks));
}

MemorylessStrategy ConcretizePlan(const Game& concrete,
                                  const Abstraction& abstraction,
                                  const MemorylessStrategy& f1_abstract) {
  return Concretize(concrete, abstraction, f1_abstract, /*require_edge=*/true);
}

MemorylessStrategy ConcretizeSpoiler(const Game& concrete,
                                     const Abstraction& abstraction,
                                     const MemorylessStrategy& f2_abstract) {
  return Concretize(concrete, abstraction, f2_abstract, /*require_edge=*/false);
}

StatePartition PartitionFromJson(const Game& game, const json& doc) {
  try {
    std::vector<std::vector<StateId>> blocks;
    for (const auto& block : doc.at("blocks")) {
      std::vector<StateId> members;
      for (const auto& name : block) {
        auto v = game.Find(name.get<std::string>());
        if (!v) {
          throw InputError("partition names unknown state '" +
                           name.get<std::string>() + "'");
        }
        members.push_back(*v);
      }
      blocks.push_back(std::move(members));
    }
    return StatePartition::FromBlocks(game.num_states(), std::move(blocks));
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed partition: ") + ex.what());
  }
}

json PartitionToJson(const Game& game, const StatePartition& partition) {
  json blocks = json::array();
  for (const auto& block : partition.blocks) {
    json members = json::array();
    for (StateId v : block) members.push_back(game.name(v));
    blocks.push_back(std::move(members));
  }
  return json{{"blocks", std::move(blocks)}};
}

json AbstractionToJson(const Game& concrete, const Abstraction& abstraction) {
  json doc = GameToJson(abstraction.game);
  json annex = json::object();
  for (std::size_t b = 0; b < abstraction.partition.size(); ++b) {
    json members = json::array();
    for (StateId v : abstraction.Concretize(b)) members.push_back(concrete.name(v));
    annex[abstraction.game.name(b)] = std::move(members);
  }
  doc["concretization"] = std::move(annex);
  return doc;
}

}  // namespace cgplan
