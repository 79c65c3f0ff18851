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

#include <map>
#include <string>
#include <vector>

#include "sonir/graph.hpp"
#include "sonir/phase.hpp"

namespace sonir {

/// An embedded test vector: run `method` on `args`, expect `expect`
/// value-for-value (width and payload both).
struct TestVector {
  std::string method;
  std::vector<Value> args;
  Value expect;
  friend bool operator==(const TestVector&, const TestVector&) = default;
};

/// A reference optimized graph for (method, phase list), used by the
/// commutation check: running the phases over the method must produce a
/// graph structurally equivalent to this one.
struct Golden {
  std::string method;
  std::vector<Phase> phases;
  IRGraph graph;
  friend bool operator==(const Golden&, const Golden&) = default;
};

/// A whole program: method graphs, initial static-field values, embedded
/// test vectors, and optional golden optimized graphs.
struct Program {
  std::map<std::string, IRGraph> methods;
  std::map<std::string, Value> fields;
  std::vector<TestVector> tests;
  std::vector<Golden> goldens;
  friend bool operator==(const Program&, const Program&) = default;
};

/// Program-level well-formedness: each method graph validates and every
/// Invoke resolves to a method in the map.
inline std::vector<std::string> validate_program(const Program& p) {
  std::vector<std::string> out;
  for (const auto& [name, g] : p.methods) {
    for (const std::string& v : validate(g)) out.push_back(name + ": " + v);
    for (NodeId id : reachable(g)) {
      const IRNode& n = g.node(id);
      if (n.kind == NodeKind::Invoke && p.methods.count(n.symbol()) == 0)
        out.push_back(name + ": node " + std::to_string(id) +
                      ": unresolved invoke target '" + n.symbol() + "'");
    }
  }
  for (const TestVector& t : p.tests)
    if (p.methods.count(t.method) == 0)
      out.push_back("test references unknown method '" + t.method + "'");
  for (const Golden& gold : p.goldens)
    if (p.methods.count(gold.method) == 0)
      out.push_back("golden references unknown method '" + gold.method + "'");
  return out;
}

}  // namespace sonir
