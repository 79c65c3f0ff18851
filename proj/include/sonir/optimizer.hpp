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

#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sonir/dominators.hpp"
#include "sonir/graph.hpp"
#include "sonir/phase.hpp"
#include "sonir/stamp_algebra.hpp"

namespace sonir {

/// One entry of the condition stack: a branch condition known to hold
/// (polarity true) or fail on the dominator path to the current block,
/// together with the stamp refinements it justified.
struct ConditionEntry {
  NodeId condition = 0;
  bool polarity = true;
  std::vector<StampUpdate> stamp_updates;
};

struct CondElimOptions {
  /// Refine from each node's original stamp rather than from the current
  /// stack-top stamp. The modes diverge on chained refinements of one node.
  bool refine_from_original = true;
};

namespace opt_detail {

/// Smallest Constant node holding exactly v, or a fresh one.
inline NodeId intern_constant(IRGraph& g, const Value& v, const Stamp& stamp_if_new) {
  for (const auto& [id, e] : g.nodes())
    if (e.node.kind == NodeKind::Constant && e.node.constant() == v) return id;
  NodeId id = g.fresh_id();
  g.put(id, make::constant(v), stamp_if_new);
  return id;
}

/// Implication between distinct comparison nodes over the same operand node
/// ids. Only mirror/negation facts are derived; two distinct nodes that
/// happen to be equal are intentionally not matched (condition identity is
/// by node id).
inline std::optional<bool> implied_by(const IRNode& cond, const IRNode& known,
                                      bool known_polarity) {
  auto is_compare = [](const IRNode& n) {
    return n.kind == NodeKind::IntegerEquals || n.kind == NodeKind::IntegerLessThan;
  };
  if (!is_compare(cond) || !is_compare(known)) return std::nullopt;
  NodeId cx = *cond.ref("x"), cy = *cond.ref("y");
  NodeId kx = *known.ref("x"), ky = *known.ref("y");
  bool same = cx == kx && cy == ky;
  bool mirrored = cx == ky && cy == kx;
  if (!same && !mirrored) return std::nullopt;

  if (known.kind == NodeKind::IntegerLessThan && known_polarity) {
    // kx < ky holds.
    if (cond.kind == NodeKind::IntegerLessThan && mirrored) return false;
    if (cond.kind == NodeKind::IntegerEquals) return false;
    return std::nullopt;
  }
  if (known.kind == NodeKind::IntegerEquals) {
    if (cond.kind == NodeKind::IntegerEquals && mirrored) return known_polarity;
    if (cond.kind == NodeKind::IntegerLessThan && known_polarity) return false;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace opt_detail

/// Replaces If conditions that are decidable from the dominating context
/// with constant true/false. Decisions come from (a) the stack of dominating
/// branch conditions (by condition node id, plus mirror/negation implication
/// between comparisons over the same operands) and (b) folding the condition
/// against the path-refined integer stamps of its operands. The phase never
/// removes branches or touches successor edges; collapsing folded branches
/// is canonicalization's job.
inline IRGraph conditional_elimination(const IRGraph& g,
                                       const CondElimOptions& options = {}) {
  DominatorTree tree = dominator_tree(g);

  std::vector<ConditionEntry> stack;
  std::map<NodeId, std::vector<Stamp>> refined;
  std::map<NodeId, bool> decisions;  // If node -> decided condition value

  auto original = [&](NodeId n) -> std::optional<Stamp> {
    const Stamp& s = g.stamp_of(n);
    if (s.is_integer()) return s;
    if (g.node(n).kind == NodeKind::Constant && g.node(n).constant().is_int())
      return constant_stamp(g.node(n).constant());
    return std::nullopt;
  };
  auto current = [&](NodeId n) -> std::optional<Stamp> {
    auto it = refined.find(n);
    if (it != refined.end() && !it->second.empty()) return it->second.back();
    return original(n);
  };
  auto base = [&](NodeId n) -> std::optional<Stamp> {
    return options.refine_from_original ? original(n) : current(n);
  };

  auto decide = [&](NodeId cond_id) -> std::optional<bool> {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->condition == cond_id) return it->polarity;
    const IRNode& cn = g.node(cond_id);
    if (cn.kind != NodeKind::IntegerEquals && cn.kind != NodeKind::IntegerLessThan)
      return std::nullopt;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (auto d = opt_detail::implied_by(cn, g.node(it->condition), it->polarity))
        return d;
    auto sx = current(*cn.ref("x"));
    auto sy = current(*cn.ref("y"));
    if (sx && sy) {
      TriState t = fold_compare(cn.kind == NodeKind::IntegerEquals
                                    ? CompareKind::Equals
                                    : CompareKind::LessThan,
                                *sx, *sy);
      if (t == TriState::AlwaysTrue) return true;
      if (t == TriState::AlwaysFalse) return false;
    }
    return std::nullopt;
  };

  auto dfs = [&](auto&& self, NodeId n) -> void {
    const IRNode& node = g.node(n);
    std::optional<NodeId> cond;
    if (node.kind == NodeKind::If) {
      cond = node.ref("condition");
      if (cond && g.node(*cond).kind != NodeKind::Constant)
        if (auto d = decide(*cond)) decisions[n] = *d;
    }
    auto kids = tree.children.count(n) ? tree.children.at(n) : std::vector<NodeId>{};
    for (NodeId child : kids) {
      bool pushed = false;
      if (node.kind == NodeKind::If && cond) {
        Ref t = node.ref("trueSucc");
        Ref f = node.ref("falseSucc");
        if (t != f && (child == t || child == f)) {
          bool polarity = (child == *t);
          Refinement r = refine_by_condition(g.node(*cond), polarity, current, base);
          for (const StampUpdate& u : r.updates) refined[u.node].push_back(u.stamp);
          stack.push_back({*cond, polarity, r.updates});
          pushed = true;
        }
      }
      self(self, child);
      if (pushed) {
        for (auto it = stack.back().stamp_updates.rbegin();
             it != stack.back().stamp_updates.rend(); ++it)
          refined[it->node].pop_back();
        stack.pop_back();
      }
    }
  };
  if (g.contains(tree.root)) dfs(dfs, tree.root);
  assert(stack.empty());

  if (decisions.empty()) return g;
  IRGraph out = g;
  for (const auto& [if_id, value] : decisions) {
    NodeId cid = opt_detail::intern_constant(out, Value::from_raw(1, value ? 1 : 0),
                                             Stamp::void_stamp());
    out.node_mut(if_id).set_ref("condition", cid);
  }
  return out;
}

/// Canonicalization rules, individually selectable.
namespace canon_rule {
inline constexpr unsigned kFoldConstantBranch = 1u << 0;  // If(Constant, t, f)
inline constexpr unsigned kFoldConstantExpr = 1u << 1;    // all-constant pure node
inline constexpr unsigned kIdentity = 1u << 2;            // x+0, x*1, x^x, ...
inline constexpr unsigned kFoldConditional = 1u << 3;     // Conditional(Constant, a, b)
inline constexpr unsigned kAll = 0xf;
}  // namespace canon_rule

namespace opt_detail {

inline std::set<NodeId> control_reachable(const IRGraph& g) {
  std::set<NodeId> seen;
  std::vector<NodeId> work;
  if (!g.contains(g.start())) return seen;
  seen.insert(g.start());
  work.push_back(g.start());
  while (!work.empty()) {
    NodeId id = work.back();
    work.pop_back();
    for (NodeId t : control_successors(g, id))
      if (g.contains(t) && seen.insert(t).second) work.push_back(t);
  }
  return seen;
}

/// All (node, slot) whose successor reference equals `target`.
inline std::vector<std::pair<NodeId, std::size_t>> successor_uses(const IRGraph& g,
                                                                  NodeId target) {
  std::vector<std::pair<NodeId, std::size_t>> out;
  for (const auto& [id, e] : g.nodes()) {
    const auto& roles = e.node.info().roles;
    for (std::size_t i = 0; i < roles.size(); ++i)
      if (roles[i].edge == EdgeKind::Successor &&
          std::get<Ref>(e.node.slots[i]) == Ref{target})
        out.emplace_back(id, i);
  }
  return out;
}

inline std::vector<NodeId> phis_of(const IRGraph& g, NodeId merge_id) {
  std::vector<NodeId> out;
  for (const auto& [id, e] : g.nodes())
    if (e.node.kind == NodeKind::ValuePhi && e.node.ref("merge") == Ref{merge_id})
      out.push_back(id);
  return out;
}

/// Prunes control-dead merge entries and collapses single-predecessor
/// merges, repeating until stable. Runs after a branch fold rewired control
/// flow around an If.
inline void cleanup_control(IRGraph& g) {
  for (bool changed = true; changed;) {
    changed = false;
    std::set<NodeId> live = control_reachable(g);

    for (NodeId mid : live) {
      const IRNode& m = g.node(mid);
      if (m.kind != NodeKind::Merge && m.kind != NodeKind::LoopBegin) continue;
      const RefList& ends = m.list("ends");
      std::vector<std::size_t> dead;
      for (std::size_t i = 0; i < ends.size(); ++i)
        if (!live.count(ends[i])) dead.push_back(i);
      if (dead.empty()) continue;
      std::vector<NodeId> phis = phis_of(g, mid);
      for (auto it = dead.rbegin(); it != dead.rend(); ++it) {
        g.node_mut(mid).list_mut("ends").erase(
            g.node_mut(mid).list_mut("ends").begin() + static_cast<long>(*it));
        for (NodeId phi : phis) {
          RefList& ins = g.node_mut(phi).list_mut("values");
          if (*it < ins.size()) ins.erase(ins.begin() + static_cast<long>(*it));
        }
      }
      changed = true;
      break;
    }
    if (changed) continue;

    for (NodeId mid : live) {
      const IRNode& m = g.node(mid);
      if (m.kind != NodeKind::Merge) continue;
      const RefList& ends = m.list("ends");
      if (ends.size() != 1) continue;
      NodeId e = ends[0];
      Ref next = m.ref("next");
      if (!next) continue;
      for (NodeId phi : phis_of(g, mid)) {
        const RefList& ins = g.node(phi).list("values");
        if (!ins.empty()) replace_uses(g, phi, ins[0]);
      }
      for (auto [pid, slot] : successor_uses(g, e))
        g.node_mut(pid).slots[slot] = next;
      changed = true;
      break;
    }
  }
}

/// Drops every node not reachable from start.
inline void sweep_unreachable(IRGraph& g) {
  std::set<NodeId> live = reachable(g);
  std::vector<NodeId> dead;
  for (const auto& [id, e] : g.nodes())
    if (!live.count(id)) dead.push_back(id);
  for (NodeId id : dead) g.erase(id);
}

/// Evaluates a pure node whose direct inputs are all Constant, with the same
/// numeric promotion the interpreter applies. nullopt when not applicable.
inline std::optional<Value> fold_all_constant(const IRGraph& g, NodeId id) {
  const IRNode& n = g.node(id);
  auto const_in = [&](std::string_view role) -> std::optional<Value> {
    Ref r = g.node(id).ref(role);
    if (!r || !g.contains(*r)) return std::nullopt;
    const IRNode& t = g.node(*r);
    if (t.kind != NodeKind::Constant) return std::nullopt;
    return t.constant();
  };
  auto promote = [](Value a, Value b) {
    unsigned t = promoted_width(a.bits(), b.bits());
    return std::pair{widen_to(a, t), widen_to(b, t)};
  };
  Value v;
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor: {
      auto x = const_in("x"), y = const_in("y");
      if (!x || !y) return std::nullopt;
      auto [a, b] = promote(*x, *y);
      BinArith op = n.kind == NodeKind::Add   ? BinArith::Add
                    : n.kind == NodeKind::Sub ? BinArith::Sub
                    : n.kind == NodeKind::Mul ? BinArith::Mul
                    : n.kind == NodeKind::And ? BinArith::And
                    : n.kind == NodeKind::Or  ? BinArith::Or
                                              : BinArith::Xor;
      v = eval_binary(op, a, b);
      break;
    }
    case NodeKind::LeftShift:
    case NodeKind::RightShift:
    case NodeKind::UnsignedRightShift: {
      auto x = const_in("x"), y = const_in("y");
      if (!x || !y) return std::nullopt;
      ShiftKind op = n.kind == NodeKind::LeftShift    ? ShiftKind::Left
                     : n.kind == NodeKind::RightShift ? ShiftKind::ArithRight
                                                      : ShiftKind::LogicRight;
      v = eval_shift(op, widen_to(*x, 32), *y);
      break;
    }
    case NodeKind::Negate:
    case NodeKind::Not:
    case NodeKind::Abs: {
      auto x = const_in("x");
      if (!x) return std::nullopt;
      UnaryArith op = n.kind == NodeKind::Negate ? UnaryArith::Negate
                      : n.kind == NodeKind::Not  ? UnaryArith::Not
                                                 : UnaryArith::Abs;
      v = eval_unary(op, widen_to(*x, 32));
      break;
    }
    case NodeKind::IntegerEquals:
    case NodeKind::IntegerLessThan: {
      auto x = const_in("x"), y = const_in("y");
      if (!x || !y) return std::nullopt;
      auto [a, b] = promote(*x, *y);
      v = eval_compare(n.kind == NodeKind::IntegerEquals ? CompareKind::Equals
                                                         : CompareKind::LessThan,
                       a, b);
      break;
    }
    case NodeKind::SignExtend:
    case NodeKind::ZeroExtend:
    case NodeKind::Narrow: {
      auto x = const_in("x");
      if (!x) return std::nullopt;
      ConvertKind op = n.kind == NodeKind::SignExtend   ? ConvertKind::SignExtend
                       : n.kind == NodeKind::ZeroExtend ? ConvertKind::ZeroExtend
                                                        : ConvertKind::Narrow;
      v = eval_convert(op, n.widths().in_bits, n.widths().out_bits, *x);
      break;
    }
    default:
      return std::nullopt;
  }
  if (v.is_undef()) return std::nullopt;
  return v;
}

/// The constant operand of a binary node, if the named side is a Constant
/// with the given signed value and the widths make an alias safe.
inline bool is_const_with(const IRGraph& g, Ref r, std::int64_t want) {
  if (!r || !g.contains(*r)) return false;
  const IRNode& n = g.node(*r);
  return n.kind == NodeKind::Constant && n.constant().is_int() &&
         n.constant().as_signed() == want;
}

inline std::optional<unsigned> integer_bits(const IRGraph& g, NodeId id) {
  const Stamp& s = g.stamp_of(id);
  if (s.is_integer()) return s.bits();
  if (g.node(id).kind == NodeKind::Constant && g.node(id).constant().is_int())
    return g.node(id).constant().bits();
  return std::nullopt;
}

/// Checks that replacing a binary node by operand `keep` preserves the
/// result width: the kept operand must already have the promoted width.
inline bool alias_width_ok(const IRGraph& g, NodeId keep, NodeId other) {
  auto kb = integer_bits(g, keep);
  auto ob = integer_bits(g, other);
  if (!kb || !ob) return false;
  return *kb == promoted_width(*kb, *ob);
}

}  // namespace opt_detail

/// Worklist-to-fixpoint local rewriting: constant-condition branch folding,
/// constant folding of pure nodes, arithmetic identities, and conditional
/// folding. Nodes left unreachable by rewiring are removed.
inline IRGraph canonicalize(const IRGraph& g, unsigned rules = canon_rule::kAll) {
  using namespace opt_detail;
  IRGraph out = g;

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<NodeId> ids;
    for (const auto& [id, e] : out.nodes()) ids.push_back(id);

    for (NodeId id : ids) {
      if (!out.contains(id)) continue;
      const IRNode& n = out.node(id);

      // Data-node rewrites end by erasing the rewritten node: data nodes are
      // never successor-referenced, and removal guarantees the fixpoint
      // loop makes progress.
      if ((rules & canon_rule::kFoldConstantExpr) != 0) {
        if (auto v = fold_all_constant(out, id)) {
          NodeId cid = intern_constant(out, *v, constant_stamp(*v));
          if (cid != id) {
            replace_uses(out, id, cid);
            out.erase(id);
            changed = true;
            break;
          }
        }
      }

      if ((rules & canon_rule::kIdentity) != 0) {
        Ref x = n.role_index("x") >= 0 ? n.ref("x") : Ref{};
        Ref y = n.role_index("y") >= 0 ? n.ref("y") : Ref{};
        std::optional<NodeId> alias;
        std::optional<Value> fold;
        if (x && y) {
          switch (n.kind) {
            case NodeKind::Add:
              if (is_const_with(out, y, 0) && alias_width_ok(out, *x, *y)) alias = *x;
              else if (is_const_with(out, x, 0) && alias_width_ok(out, *y, *x)) alias = *y;
              break;
            case NodeKind::Sub:
              if (is_const_with(out, y, 0) && alias_width_ok(out, *x, *y)) alias = *x;
              break;
            case NodeKind::Mul:
              if (is_const_with(out, y, 1) && alias_width_ok(out, *x, *y)) alias = *x;
              else if (is_const_with(out, x, 1) && alias_width_ok(out, *y, *x)) alias = *y;
              else if (is_const_with(out, y, 0) && alias_width_ok(out, *x, *y))
                fold = Value::of(*integer_bits(out, *x), 0);
              else if (is_const_with(out, x, 0) && alias_width_ok(out, *y, *x))
                fold = Value::of(*integer_bits(out, *y), 0);
              break;
            case NodeKind::And:
            case NodeKind::Or:
              if (*x == *y && alias_width_ok(out, *x, *x)) alias = *x;
              break;
            case NodeKind::Xor:
              if (*x == *y && alias_width_ok(out, *x, *x))
                fold = Value::of(*integer_bits(out, *x), 0);
              break;
            case NodeKind::LeftShift:
            case NodeKind::RightShift:
            case NodeKind::UnsignedRightShift:
              if (is_const_with(out, y, 0) && alias_width_ok(out, *x, *x)) alias = *x;
              break;
            default:
              break;
          }
        }
        if (fold) {
          NodeId cid = intern_constant(out, *fold, constant_stamp(*fold));
          if (cid != id) {
            replace_uses(out, id, cid);
            out.erase(id);
            changed = true;
            break;
          }
        }
        if (alias) {
          replace_uses(out, id, *alias);
          out.erase(id);
          changed = true;
          break;
        }
      }

      if ((rules & canon_rule::kFoldConditional) != 0 &&
          n.kind == NodeKind::Conditional) {
        Ref c = n.ref("condition");
        if (c && out.contains(*c) && out.node(*c).kind == NodeKind::Constant) {
          NodeId arm = out.node(*c).constant().is_nonzero() ? *n.ref("trueVal")
                                                            : *n.ref("falseVal");
          replace_uses(out, id, arm);
          out.erase(id);
          changed = true;
          break;
        }
      }

      if ((rules & canon_rule::kFoldConstantBranch) != 0 && n.kind == NodeKind::If) {
        Ref c = n.ref("condition");
        if (c && out.contains(*c) && out.node(*c).kind == NodeKind::Constant) {
          NodeId taken = out.node(*c).constant().is_nonzero() ? *n.ref("trueSucc")
                                                              : *n.ref("falseSucc");
          auto preds = successor_uses(out, id);
          if (!preds.empty()) {
            for (auto [pid, slot] : preds) out.node_mut(pid).slots[slot] = Ref{taken};
            cleanup_control(out);
            changed = true;
            break;
          }
        }
      }
    }
  }

  sweep_unreachable(out);
  return out;
}

/// Left-to-right phase composition; every phase output is revalidated.
inline IRGraph run_phases(const IRGraph& g, const std::vector<Phase>& phases) {
  IRGraph out = g;
  for (Phase p : phases) {
    out = p == Phase::ConditionalElimination ? conditional_elimination(out)
                                             : canonicalize(out);
    auto violations = validate(out);
    if (!violations.empty())
      throw std::logic_error("phase " + std::string(phase_name(p)) +
                             " produced an invalid graph: " + violations.front());
  }
  return out;
}

}  // namespace sonir
