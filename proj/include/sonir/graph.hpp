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
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "sonir/node.hpp"
#include "sonir/stamp.hpp"

namespace sonir {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphEntry {
  IRNode node;
  Stamp stamp;
  friend bool operator==(const GraphEntry&, const GraphEntry&) = default;
};

/// A method graph: node id -> (node, stamp), plus the Start node id.
/// Graphs are plain values; editing operations copy. Mutating members exist
/// for building edited copies and never alias a shared graph.
class IRGraph {
 public:
  IRGraph() = default;

  /// Builds from (id, node, stamp) entries. Rejects duplicate ids and
  /// graphs without exactly one Start node.
  static IRGraph build(const std::vector<std::tuple<NodeId, IRNode, Stamp>>& entries) {
    IRGraph g;
    bool seen_start = false;
    for (const auto& [id, node, stamp] : entries) {
      if (!g.nodes_.emplace(id, GraphEntry{node, stamp}).second)
        throw GraphError("duplicate id " + std::to_string(id));
      if (node.kind == NodeKind::Start) {
        if (seen_start) throw GraphError("multiple Start nodes");
        seen_start = true;
        g.start_ = id;
      }
    }
    if (!seen_start) throw GraphError("no Start node");
    return g;
  }

  const std::map<NodeId, GraphEntry>& nodes() const { return nodes_; }
  bool contains(NodeId id) const { return nodes_.count(id) != 0; }
  NodeId start() const { return start_; }

  const IRNode& node(NodeId id) const { return entry(id).node; }
  const Stamp& stamp_of(NodeId id) const { return entry(id).stamp; }

  IRNode& node_mut(NodeId id) {
    return const_cast<GraphEntry&>(entry(id)).node;
  }

  void put(NodeId id, IRNode node, Stamp stamp) {
    if (node.kind == NodeKind::Start) start_ = id;
    nodes_[id] = GraphEntry{std::move(node), std::move(stamp)};
  }

  void erase(NodeId id) { nodes_.erase(id); }

  void set_start(NodeId id) { start_ = id; }

  /// 1 + the maximum existing id (0 for an empty graph).
  NodeId fresh_id() const {
    return nodes_.empty() ? 0 : nodes_.rbegin()->first + 1;
  }

  friend bool operator==(const IRGraph&, const IRGraph&) = default;

 private:
  const GraphEntry& entry(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw GraphError("no node with id " + std::to_string(id));
    return it->second;
  }

  std::map<NodeId, GraphEntry> nodes_;
  NodeId start_ = 0;
};

/// The Merge/LoopBegin whose end list contains `end_id`, if any.
inline std::optional<NodeId> merge_owner(const IRGraph& g, NodeId end_id) {
  for (const auto& [id, e] : g.nodes()) {
    if (e.node.kind != NodeKind::Merge && e.node.kind != NodeKind::LoopBegin) continue;
    for (NodeId t : e.node.list("ends"))
      if (t == end_id) return id;
  }
  return std::nullopt;
}

/// Control-flow successors as followed by execution: successor edges, plus
/// the implicit End -> owning merge and LoopEnd -> loop header transitions.
inline std::vector<NodeId> control_successors(const IRGraph& g, NodeId id) {
  std::vector<NodeId> out;
  const IRNode& n = g.node(id);
  n.for_each_ref([&](std::string_view, EdgeKind e, NodeId t) {
    if (e == EdgeKind::Successor) out.push_back(t);
  });
  if (n.kind == NodeKind::End) {
    if (auto owner = merge_owner(g, id)) out.push_back(*owner);
  } else if (n.kind == NodeKind::LoopEnd) {
    if (auto lb = n.ref("loopBegin"); lb && g.contains(*lb)) out.push_back(*lb);
  }
  return out;
}

/// Fixed point of following all edges from start (successors, inputs, end
/// lists, frame states, and the implicit End -> merge transition). Orphan
/// nodes referenced by nothing live are excluded.
inline std::set<NodeId> reachable(const IRGraph& g) {
  std::set<NodeId> seen;
  std::deque<NodeId> work;
  if (!g.contains(g.start())) return seen;
  seen.insert(g.start());
  work.push_back(g.start());
  while (!work.empty()) {
    NodeId id = work.front();
    work.pop_front();
    auto visit = [&](NodeId t) {
      if (g.contains(t) && seen.insert(t).second) work.push_back(t);
    };
    g.node(id).for_each_ref([&](std::string_view, EdgeKind, NodeId t) { visit(t); });
    if (g.node(id).kind == NodeKind::End) {
      if (auto owner = merge_owner(g, id)) visit(*owner);
    }
  }
  return seen;
}

/// Returns a copy with the named scalar input of `at` redirected to
/// `new_input`. The role must be an input role of the node's kind and both
/// nodes must exist; the original graph is untouched.
inline IRGraph replace_input(const IRGraph& g, NodeId at, std::string_view role,
                             NodeId new_input) {
  if (!g.contains(at)) throw GraphError("no node with id " + std::to_string(at));
  if (!g.contains(new_input))
    throw GraphError("no node with id " + std::to_string(new_input));
  const IRNode& n = g.node(at);
  int i = n.role_index(role);
  if (i < 0 || n.is_list_role(static_cast<std::size_t>(i)))
    throw GraphError("invalid role '" + std::string(role) + "' for kind " +
                     std::string(n.info().name));
  EdgeKind e = n.info().roles[static_cast<std::size_t>(i)].edge;
  if (e != EdgeKind::Input && e != EdgeKind::OptInput)
    throw GraphError("role '" + std::string(role) + "' of kind " +
                     std::string(n.info().name) + " is not an input");
  IRGraph out = g;
  out.node_mut(at).slots[static_cast<std::size_t>(i)] = Ref{new_input};
  return out;
}

/// Redirects every input-class reference to `from` (scalar inputs and input
/// lists, not successors or end lists) to `to`, across the whole graph.
inline void replace_uses(IRGraph& g, NodeId from, NodeId to) {
  std::vector<NodeId> ids;
  for (const auto& [id, e] : g.nodes()) ids.push_back(id);
  for (NodeId id : ids) {
    IRNode& n = g.node_mut(id);
    const auto& roles = n.info().roles;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      switch (roles[i].edge) {
        case EdgeKind::Input:
        case EdgeKind::OptInput: {
          auto& r = std::get<Ref>(n.slots[i]);
          if (r && *r == from) r = to;
          break;
        }
        case EdgeKind::InputList:
          for (NodeId& t : std::get<RefList>(n.slots[i]))
            if (t == from) t = to;
          break;
        case EdgeKind::Successor:
        case EdgeKind::EndList:
          break;
      }
    }
  }
}

/// Renumbers node ids through a bijection (ids absent from the map keep
/// their value). Edits a copy; the start id follows the map.
inline IRGraph permute_ids(const IRGraph& g, const std::map<NodeId, NodeId>& perm) {
  auto remap = [&](NodeId id) {
    auto it = perm.find(id);
    return it == perm.end() ? id : it->second;
  };
  IRGraph out;
  for (const auto& [id, e] : g.nodes()) {
    IRNode n = e.node;
    for (std::size_t i = 0; i < n.slots.size(); ++i) {
      if (n.is_list_role(i)) {
        for (NodeId& t : std::get<RefList>(n.slots[i])) t = remap(t);
      } else if (auto& r = std::get<Ref>(n.slots[i]); r) {
        r = remap(*r);
      }
    }
    out.put(remap(id), std::move(n), e.stamp);
  }
  out.set_start(remap(g.start()));
  return out;
}

/// Checks the graph invariants; an empty result means the graph is well
/// formed. Each violation names the offending node and rule.
inline std::vector<std::string> validate(const IRGraph& g) {
  std::vector<std::string> out;

  std::vector<NodeId> starts;
  for (const auto& [id, e] : g.nodes())
    if (e.node.kind == NodeKind::Start) starts.push_back(id);
  if (starts.size() != 1) {
    std::string ids;
    for (NodeId s : starts) ids += (ids.empty() ? "" : ", ") + std::to_string(s);
    out.push_back("expected exactly one Start node, found [" + ids + "]");
    return out;
  }
  if (starts[0] != g.start()) {
    out.push_back("start id " + std::to_string(g.start()) +
                  " does not name the Start node " + std::to_string(starts[0]));
    return out;
  }

  std::set<NodeId> live = reachable(g);
  for (NodeId id : live) {
    const IRNode& n = g.node(id);
    n.for_each_ref([&](std::string_view role, EdgeKind, NodeId t) {
      if (!g.contains(t))
        out.push_back("node " + std::to_string(id) + ": unresolved reference " +
                      std::to_string(t) + " (role " + std::string(role) + ")");
    });
    if (n.kind == NodeKind::ValuePhi) {
      Ref m = n.ref("merge");
      if (m && g.contains(*m)) {
        NodeKind mk = g.node(*m).kind;
        if (mk != NodeKind::Merge && mk != NodeKind::LoopBegin)
          out.push_back("node " + std::to_string(id) +
                        ": phi merge reference is a " + std::string(kind_name(mk)));
        else if (n.list("values").size() != g.node(*m).list("ends").size())
          out.push_back("node " + std::to_string(id) + ": phi has " +
                        std::to_string(n.list("values").size()) +
                        " inputs but merge " + std::to_string(*m) + " has " +
                        std::to_string(g.node(*m).list("ends").size()) + " ends");
      }
    }
    if (n.kind == NodeKind::End || n.kind == NodeKind::LoopEnd) {
      int owners = 0;
      for (const auto& [mid, me] : g.nodes()) {
        if (me.node.kind != NodeKind::Merge && me.node.kind != NodeKind::LoopBegin)
          continue;
        for (NodeId t : me.node.list("ends"))
          if (t == id) ++owners;
      }
      if (owners > 1)
        out.push_back("node " + std::to_string(id) + ": listed by " +
                      std::to_string(owners) + " merges");
    }
    const Stamp& s = g.stamp_of(id);
    if (s.is_integer() && !is_program_width(s.bits()))
      out.push_back("node " + std::to_string(id) + ": stamp width " +
                    std::to_string(s.bits()) + " is not a program width");
  }

  // Control flow must be acyclic except through LoopEnd -> LoopBegin.
  std::map<NodeId, int> color;  // 0 new, 1 open, 2 done
  std::vector<std::pair<NodeId, std::size_t>> stack;
  auto forward_succs = [&](NodeId id) {
    std::vector<NodeId> ss;
    if (!g.contains(id)) return ss;
    const IRNode& n = g.node(id);
    if (n.kind == NodeKind::LoopEnd) return ss;  // back edge, allowed
    n.for_each_ref([&](std::string_view, EdgeKind e, NodeId t) {
      if (e == EdgeKind::Successor && g.contains(t)) ss.push_back(t);
    });
    if (n.kind == NodeKind::End) {
      if (auto owner = merge_owner(g, id)) ss.push_back(*owner);
    }
    return ss;
  };
  if (g.contains(g.start())) {
    stack.emplace_back(g.start(), 0);
    color[g.start()] = 1;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      auto succs = forward_succs(id);
      if (next < succs.size()) {
        NodeId t = succs[next++];
        if (color[t] == 1) {
          out.push_back("node " + std::to_string(t) +
                        ": control-flow cycle not through a LoopBegin/LoopEnd pair");
          color[t] = 2;
        } else if (color[t] == 0) {
          color[t] = 1;
          stack.emplace_back(t, 0);
        }
      } else {
        color[id] = 2;
        stack.pop_back();
      }
    }
  }

  return out;
}

}  // namespace sonir
