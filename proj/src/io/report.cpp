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

#include <cstdio>

#include "cgplan/io.hpp"

namespace cgplan {

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string HexDigest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(digest));
  return buf;
}

nlohmann::json RunReport::ToJson() const {
  nlohmann::json doc{{"command", command},
                     {"input_digest", input_digest},
                     {"verdict", verdict},
                     {"exit_code", exit_code},
                     {"results", results},
                     {"wall_clock_seconds", wall_clock_seconds}};
  doc["trace"] = trace_path ? nlohmann::json(*trace_path) : nlohmann::json(nullptr);
  doc["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return doc;
}

}  // namespace cgplan
