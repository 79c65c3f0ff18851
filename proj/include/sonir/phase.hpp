// Copyright 2026 The Sonir Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sonir {

enum class Phase { ConditionalElimination, Canonicalize };

inline std::string_view phase_name(Phase p) {
  return p == Phase::ConditionalElimination ? "condelim" : "canonicalize";
}

inline std::optional<Phase> phase_from_name(std::string_view name) {
  if (name == "condelim") return Phase::ConditionalElimination;
  if (name == "canonicalize") return Phase::Canonicalize;
  return std::nullopt;
}

/// Parses a comma-separated ordered phase list, e.g. "condelim,canonicalize".
inline std::optional<std::vector<Phase>> parse_phase_list(std::string_view text) {
  std::vector<Phase> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    auto p = phase_from_name(item);
    if (!p) return std::nullopt;
    out.push_back(*p);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace sonir
