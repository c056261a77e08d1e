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

#include "cgplan/game_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cgplan/errors.hpp"

namespace cgplan {

using nlohmann::json;

namespace {

Owner ParseOwner(const std::string& text) {
  if (text == "P1") return Owner::kPlayer1;
  if (text == "P2") return Owner::kPlayer2;
  if (text == "R") return Owner::kRandom;
  throw InputError("unknown owner '" + text + "' (expected P1, P2 or R)");
}

StateId Lookup(const std::unordered_map<std::string, StateId>& index,
               const std::string& name, const char* role) {
  auto it = index.find(name);
  if (it == index.end()) {
    throw InputError(std::string(role) + " refers to unknown state '" + name +
                     "'");
  }
  return it->second;
}

}  // namespace

Game GameFromJson(const json& doc) {
  try {
    std::vector<StateInfo> states;
    std::unordered_map<std::string, StateId> index;
    for (const auto& s : doc.at("states")) {
      StateInfo info;
      info.name = s.at("name").get<std::string>();
      info.owner = ParseOwner(s.at("owner").get<std::string>());
      info.reward = s.value("reward", 0.0);
      if (!index.emplace(info.name, states.size()).second) {
        throw InputError("duplicate state name '" + info.name + "'");
      }
      states.push_back(std::move(info));
    }
    std::vector<std::vector<Edge>> edges(states.size());
    for (const auto& e : doc.at("edges")) {
      StateId from = Lookup(index, e.at("from").get<std::string>(), "edge");
      StateId to = Lookup(index, e.at("to").get<std::string>(), "edge");
      Edge edge{to, std::nullopt};
      if (e.contains("weight")) edge.weight = e.at("weight").get<double>();
      edges[from].push_back(edge);
    }
    StateId initial =
        Lookup(index, doc.at("initial").get<std::string>(), "initial");
    return Game(std::move(states), std::move(edges), initial);
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed game file: ") + ex.what());
  }
}

Game ParseGame(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw InputError(std::string("game file is not valid JSON: ") + ex.what());
  }
  return GameFromJson(doc);
}

json GameToJson(const Game& game) {
  json states = json::array();
  for (const auto& s : game.states()) {
    states.push_back(json{{"name", s.name},
                          {"owner", std::string(OwnerName(s.owner))},
                          {"reward", s.reward}});
  }
  json edges = json::array();
  for (StateId v = 0; v < game.num_states(); ++v) {
    for (const Edge& e : game.successors(v)) {
      json edge{{"from", game.name(v)}, {"to", game.name(e.to)}};
      if (e.weight) edge["weight"] = *e.weight;
      edges.push_back(std::move(edge));
    }
  }
  json doc{{"states", std::move(states)}, {"edges", std::move(edges)}};
  doc["initial"] = game.initial() < game.num_states()
                       ? json(game.name(game.initial()))
                       : json(nullptr);
  return doc;
}

std::string SerializeGame(const Game& game) {
  return GameToJson(game).dump(2) + "\n";
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

Game ReadGameFile(const std::filesystem::path& path) {
  return ParseGame(ReadTextFile(path));
}

json StrategyToJson(const Game& game, const MemorylessStrategy& strategy) {
  json choice = json::object();
  for (StateId v = 0; v < strategy.choice.size(); ++v) {
    if (strategy.choice[v] == kNoState) continue;
    choice[game.name(v)] = game.name(strategy.choice[v]);
  }
  return json{{"player", static_cast<int>(strategy.player)},
              {"choice", std::move(choice)}};
}

MemorylessStrategy StrategyFromJson(const Game& game, const json& doc) {
  try {
    int player = doc.at("player").get<int>();
    if (player != 1 && player != 2) throw InputError("player must be 1 or 2");
    MemorylessStrategy s{static_cast<Player>(player),
                         std::vector<StateId>(game.num_states(), kNoState)};
    for (const auto& [from, to] : doc.at("choice").items()) {
      auto v = game.Find(from);
      auto w = game.Find(to.get<std::string>());
      if (!v || !w) throw InputError("strategy names an unknown state");
      s.choice[*v] = *w;
    }
    RequireValidStrategy(game, s);
    return s;
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed strategy: ") + ex.what());
  }
}

std::string FormatValue(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.9g", value);
  return buf;
}

}  // namespace cgplan
