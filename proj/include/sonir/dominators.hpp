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

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "sonir/graph.hpp"

namespace sonir {

/// Immediate-dominator tree over the control-flow nodes reachable from
/// start (loop back edges included). The start node has no idom.
struct DominatorTree {
  NodeId root = 0;
  std::map<NodeId, NodeId> idom;                  // no entry for root
  std::map<NodeId, std::vector<NodeId>> children; // ascending id

  std::optional<NodeId> idom_of(NodeId n) const {
    auto it = idom.find(n);
    if (it == idom.end()) return std::nullopt;
    return it->second;
  }

  /// True iff a dominates b (reflexive).
  bool dominates(NodeId a, NodeId b) const {
    for (NodeId n = b;;) {
      if (n == a) return true;
      auto it = idom.find(n);
      if (it == idom.end()) return false;
      n = it->second;
    }
  }
};

/// Standard iterative dataflow computation of immediate dominators over the
/// control-flow successor relation.
inline DominatorTree dominator_tree(const IRGraph& g) {
  const NodeId root = g.start();

  // Reverse postorder over control-flow edges.
  std::vector<NodeId> rpo;
  {
    std::map<NodeId, int> state;  // 0 new, 1 open, 2 done
    std::vector<std::pair<NodeId, std::size_t>> stack;
    if (g.contains(root)) {
      stack.emplace_back(root, 0);
      state[root] = 1;
    }
    while (!stack.empty()) {
      auto [id, next] = stack.back();
      auto succs = control_successors(g, id);
      if (next < succs.size()) {
        ++stack.back().second;
        NodeId t = succs[next];
        if (state[t] == 0) {
          state[t] = 1;
          stack.emplace_back(t, 0);
        }
      } else {
        state[id] = 2;
        rpo.push_back(id);
        stack.pop_back();
      }
    }
    std::reverse(rpo.begin(), rpo.end());
  }

  std::map<NodeId, std::size_t> rpo_index;
  for (std::size_t i = 0; i < rpo.size(); ++i) rpo_index[rpo[i]] = i;

  std::map<NodeId, std::vector<NodeId>> preds;
  for (NodeId n : rpo)
    for (NodeId t : control_successors(g, n))
      if (rpo_index.count(t)) preds[t].push_back(n);

  std::map<NodeId, NodeId> idom;
  idom[root] = root;
  auto meet = [&](NodeId a, NodeId b) {
    while (a != b) {
      while (rpo_index[a] > rpo_index[b]) a = idom[a];
      while (rpo_index[b] > rpo_index[a]) b = idom[b];
    }
    return a;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId n : rpo) {
      if (n == root) continue;
      NodeId best = 0;
      bool have = false;
      for (NodeId p : preds[n]) {
        if (!idom.count(p)) continue;
        best = have ? meet(best, p) : p;
        have = true;
      }
      if (!have) continue;
      auto it = idom.find(n);
      if (it == idom.end() || it->second != best) {
        idom[n] = best;
        changed = true;
      }
    }
  }

  DominatorTree tree;
  tree.root = root;
  for (const auto& [n, d] : idom) {
    if (n == root) continue;
    tree.idom[n] = d;
    tree.children[d].push_back(n);
  }
  for (auto& [d, kids] : tree.children) std::sort(kids.begin(), kids.end());
  return tree;
}

}  // namespace sonir
