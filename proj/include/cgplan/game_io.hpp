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

#ifndef CGPLAN_GAME_IO_HPP_
#define CGPLAN_GAME_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "cgplan/game.hpp"
#include "json.hpp"

namespace cgplan {

// Game files:
//   { "states":  [ {"name": "v0", "owner": "P1"|"P2"|"R", "reward": 0.0} ],
//     "edges":   [ {"from": "v0", "to": "s1"},
//                  {"from": "c", "to": "s1", "weight": 0.5} ],
//     "initial": "v0" }
//
// ParseGame throws InputError on malformed JSON, unknown owners and dangling
// names. A "weight" on an edge out of a player state is accepted by the
// parser and surfaces as a Validate() violation.
Game ParseGame(std::string_view text);
Game GameFromJson(const nlohmann::json& doc);
nlohmann::json GameToJson(const Game& game);
// Canonical text: states and edges in index order, two-space indentation.
std::string SerializeGame(const Game& game);

Game ReadGameFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);
std::string ReadTextFile(const std::filesystem::path& path);

// {"player": 1, "choice": {"v0": "v2", ...}}
nlohmann::json StrategyToJson(const Game& game,
                              const MemorylessStrategy& strategy);
MemorylessStrategy StrategyFromJson(const Game& game,
                                    const nlohmann::json& doc);

// Nine significant digits, trailing zeros kept.
std::string FormatValue(double value);

}  // namespace cgplan

#endif  // CGPLAN_GAME_IO_HPP_
