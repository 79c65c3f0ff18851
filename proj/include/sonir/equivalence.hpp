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

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "sonir/graph.hpp"

namespace sonir {

/// A graph renumbered 0..n-1 by deterministic breadth-first discovery from
/// start. Equal canonical forms characterize structural equivalence modulo
/// node identifiers; unreachable nodes do not participate.
struct CanonicalGraph {
  std::vector<GraphEntry> nodes;
  friend bool operator==(const CanonicalGraph&, const CanonicalGraph&) = default;
};

/// Breadth-first canonical renumbering. Each node's edges are visited in a
/// fixed role order: successor roles first (an End node's owning merge acts
/// as its successor), then input-class roles, list elements in list order.
inline CanonicalGraph canonical_form(const IRGraph& g) {
  std::map<NodeId, NodeId> renumber;
  std::vector<NodeId> order;
  std::deque<NodeId> queue;

  auto discover = [&](NodeId id) {
    if (!g.contains(id) || renumber.count(id)) return;
    renumber[id] = static_cast<NodeId>(order.size());
    order.push_back(id);
    queue.push_back(id);
  };

  auto edge_targets = [&](NodeId id) {
    std::vector<NodeId> out;
    const IRNode& n = g.node(id);
    n.for_each_ref([&](std::string_view, EdgeKind e, NodeId t) {
      if (e == EdgeKind::Successor) out.push_back(t);
    });
    if (n.kind == NodeKind::End) {
      if (auto owner = merge_owner(g, id)) out.push_back(*owner);
    }
    n.for_each_ref([&](std::string_view, EdgeKind e, NodeId t) {
      if (e != EdgeKind::Successor) out.push_back(t);
    });
    return out;
  };

  discover(g.start());
  while (!queue.empty()) {
    NodeId id = queue.front();
    queue.pop_front();
    for (NodeId t : edge_targets(id)) discover(t);
  }

  CanonicalGraph out;
  for (NodeId id : order) {
    IRNode n = g.node(id);
    for (std::size_t i = 0; i < n.slots.size(); ++i) {
      if (n.is_list_role(i)) {
        for (NodeId& t : std::get<RefList>(n.slots[i])) t = renumber.at(t);
      } else if (auto& r = std::get<Ref>(n.slots[i]); r) {
        r = renumber.at(*r);
      }
    }
    out.nodes.push_back(GraphEntry{std::move(n), g.stamp_of(id)});
  }
  return out;
}

struct EquivalenceResult {
  bool equivalent = false;
  std::string first_difference;  // empty when equivalent

  explicit operator bool() const { return equivalent; }
};

/// Structural equivalence modulo node identifiers: the canonical forms must
/// match node-for-node (kind, payload, edges, and stamp unless
/// ignore_stamps). On mismatch, reports the first divergent canonical node.
inline EquivalenceResult structurally_equivalent(const IRGraph& a, const IRGraph& b,
                                                 bool ignore_stamps = false) {
  CanonicalGraph ca = canonical_form(a);
  CanonicalGraph cb = canonical_form(b);
  std::size_t n = std::min(ca.nodes.size(), cb.nodes.size());
  for (std::size_t i = 0; i < n; ++i) {
    const GraphEntry& ea = ca.nodes[i];
    const GraphEntry& eb = cb.nodes[i];
    bool same = ea.node == eb.node && (ignore_stamps || ea.stamp == eb.stamp);
    if (!same) {
      std::string diff = "canonical node " + std::to_string(i) + ": " +
                         ea.node.to_string() + " : " + ea.stamp.to_string() + " vs " +
                         eb.node.to_string() + " : " + eb.stamp.to_string();
      return {false, diff};
    }
  }
  if (ca.nodes.size() != cb.nodes.size())
    return {false, "reachable node counts differ: " + std::to_string(ca.nodes.size()) +
                       " vs " + std::to_string(cb.nodes.size())};
  return {true, ""};
}

}  // namespace sonir
