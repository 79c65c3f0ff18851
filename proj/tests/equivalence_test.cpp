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

#include "sonir/equivalence.hpp"

#include <gtest/gtest.h>

#include <random>

#include "sonir/corpus.hpp"
#include "sonir/optimizer.hpp"

using namespace sonir;

namespace {

std::map<NodeId, NodeId> random_bijection(const IRGraph& g, std::mt19937_64& rng) {
  std::vector<NodeId> ids;
  for (const auto& [id, e] : g.nodes()) ids.push_back(id);
  std::vector<NodeId> shuffled = ids;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::map<NodeId, NodeId> perm;
  for (std::size_t i = 0; i < ids.size(); ++i) perm[ids[i]] = shuffled[i] + 100;
  return perm;
}

/// Changes one reachable node: a constant payload when possible, else a
/// kind, else a stamp.
IRGraph mutate_one_node(const IRGraph& g) {
  IRGraph out = g;
  for (NodeId id : reachable(g)) {
    const IRNode& n = g.node(id);
    if (n.kind == NodeKind::Constant) {
      Value v = n.constant();
      out.node_mut(id).payload = Value::from_raw(v.bits(), v.raw() ^ 1);
      return out;
    }
  }
  for (NodeId id : reachable(g)) {
    const IRNode& n = g.node(id);
    if (n.kind == NodeKind::Add) {
      out.node_mut(id).kind = NodeKind::Sub;
      return out;
    }
    if (n.kind == NodeKind::IntegerLessThan) {
      out.node_mut(id).kind = NodeKind::IntegerEquals;
      return out;
    }
  }
  NodeId id = *reachable(g).begin();
  out.put(id, g.node(id), Stamp::integer(32, -7, 7));
  return out;
}

}  // namespace

TEST(CanonicalFormTest, LeftShiftDiscoveryOrder) {
  CanonicalGraph c = canonical_form(corpus::left_shift32_graph());
  ASSERT_EQ(c.nodes.size(), 6u);
  // Successor-then-(frameState, inputs) breadth-first order.
  EXPECT_EQ(c.nodes[0].node.kind, NodeKind::Start);
  EXPECT_EQ(c.nodes[1].node.kind, NodeKind::Return);
  EXPECT_EQ(c.nodes[2].node.kind, NodeKind::FrameState);
  EXPECT_EQ(c.nodes[3].node.kind, NodeKind::LeftShift);
  EXPECT_EQ(c.nodes[4].node.kind, NodeKind::Parameter);
  EXPECT_EQ(c.nodes[4].node.param_index(), 0u);
  EXPECT_EQ(c.nodes[5].node.kind, NodeKind::Parameter);
  EXPECT_EQ(c.nodes[5].node.param_index(), 1u);
  // Renumbered edges follow the discovery order.
  EXPECT_EQ(c.nodes[0].node.ref("next"), Ref{1});
  EXPECT_EQ(c.nodes[0].node.ref("frameState"), Ref{2});
  EXPECT_EQ(c.nodes[1].node.ref("value"), Ref{3});
  EXPECT_EQ(c.nodes[3].node.ref("x"), Ref{4});
  EXPECT_EQ(c.nodes[3].node.ref("y"), Ref{5});
}

TEST(CanonicalFormTest, AlreadyCanonicalGraphIsAFixpoint) {
  IRGraph g = IRGraph::build({
      {0, make::start({}, 1), Stamp::void_stamp()},
      {1, make::ret(2), Stamp::void_stamp()},
      {2, make::constant(Value::of(32, 3)), Stamp::integer(32, 3, 3)},
  });
  CanonicalGraph c = canonical_form(g);
  ASSERT_EQ(c.nodes.size(), 3u);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    EXPECT_EQ(c.nodes[i].node, g.node(static_cast<NodeId>(i)));
    EXPECT_EQ(c.nodes[i].stamp, g.stamp_of(static_cast<NodeId>(i)));
  }
}

TEST(CanonicalFormTest, OrphanDropped) {
  IRGraph g = corpus::left_shift32_graph();
  g.put(42, make::constant(Value::of(32, 5)), Stamp::integer(32, 5, 5));
  EXPECT_EQ(canonical_form(g).nodes.size(), 6u);
  EXPECT_TRUE(structurally_equivalent(g, corpus::left_shift32_graph()).equivalent);
}

TEST(EquivalenceTest, OptimizedMatchesTranscribedFinal) {
  IRGraph opt = conditional_elimination(corpus::test1_initial_graph());
  EXPECT_TRUE(structurally_equivalent(opt, corpus::test1_final_graph()).equivalent);
}

TEST(EquivalenceTest, InitialAndFinalDifferAtTheInnerIf) {
  auto eq =
      structurally_equivalent(corpus::test1_initial_graph(), corpus::test1_final_graph());
  EXPECT_FALSE(eq.equivalent);
  EXPECT_NE(eq.first_difference.find("If("), std::string::npos) << eq.first_difference;
}

TEST(EquivalenceTest, PermutationInvariance) {
  std::mt19937_64 rng(17);
  for (const auto& [name, p] : corpus::all()) {
    for (const auto& [method, g] : p.methods) {
      for (int i = 0; i < 100; ++i) {
        IRGraph permuted = permute_ids(g, random_bijection(g, rng));
        auto eq = structurally_equivalent(g, permuted);
        EXPECT_TRUE(eq.equivalent)
            << name << "/" << method << ": " << eq.first_difference;
      }
    }
  }
}

TEST(EquivalenceTest, MutationBreaksEquivalence) {
  for (const auto& [name, p] : corpus::all()) {
    for (const auto& [method, g] : p.methods) {
      IRGraph mutated = mutate_one_node(g);
      EXPECT_FALSE(structurally_equivalent(g, mutated).equivalent)
          << name << "/" << method;
    }
  }
}

TEST(EquivalenceTest, EquivalenceRelationProperties) {
  std::mt19937_64 rng(23);
  for (const auto& [name, p] : corpus::all()) {
    for (const auto& [method, g] : p.methods) {
      IRGraph b = permute_ids(g, random_bijection(g, rng));
      IRGraph c = permute_ids(b, random_bijection(b, rng));
      EXPECT_TRUE(structurally_equivalent(g, g).equivalent);
      EXPECT_EQ(structurally_equivalent(g, b).equivalent,
                structurally_equivalent(b, g).equivalent);
      EXPECT_TRUE(structurally_equivalent(g, b).equivalent &&
                  structurally_equivalent(b, c).equivalent &&
                  structurally_equivalent(g, c).equivalent);
    }
  }
}

TEST(EquivalenceTest, OrphanInsensitive) {
  for (const auto& [name, p] : corpus::all()) {
    for (const auto& [method, g] : p.methods) {
      IRGraph with_orphan = g;
      with_orphan.put(g.fresh_id() + 5, make::constant(Value::of(32, 99)),
                      Stamp::integer(32, 99, 99));
      EXPECT_TRUE(structurally_equivalent(g, with_orphan).equivalent);
    }
  }
}

TEST(EquivalenceTest, StampsParticipateUnlessIgnored) {
  IRGraph a = corpus::left_shift32_graph();
  IRGraph b = a;
  b.put(4, b.node(4), Stamp::integer(32, 0, 100));
  EXPECT_FALSE(structurally_equivalent(a, b).equivalent);
  EXPECT_TRUE(structurally_equivalent(a, b, /*ignore_stamps=*/true).equivalent);
}

TEST(EquivalenceTest, DifferentSizesReport) {
  IRGraph a = corpus::left_shift32_graph();
  IRGraph b = IRGraph::build({
      {0, make::start({}, 1), Stamp::void_stamp()},
      {1, make::ret({}), Stamp::void_stamp()},
  });
  auto eq = structurally_equivalent(a, b);
  EXPECT_FALSE(eq.equivalent);
  EXPECT_FALSE(eq.first_difference.empty());
}
