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

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sonir/program.hpp"

namespace sonir {

inline constexpr std::uint64_t kDefaultStepLimit = 1'000'000;

/// Raised by expression evaluation on data-flow misuse (phi read before its
/// merge was entered, a fixed node evaluated before being executed, an
/// unknown static field, or recursion into a control-flow-only node).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A suspended caller: everything needed to resume at the invoke site.
struct Frame {
  std::string method;
  NodeId invoke_site = 0;
  std::vector<Value> params;
  std::map<NodeId, Value> fixed_results;
  std::map<NodeId, Value> phi_values;
  std::map<NodeId, std::size_t> last_end_index;
};

/// Execution state of one run. `current` is always a control-flow node of
/// the current method's graph. Values produced by control-flow-resident
/// data nodes (SignedDiv, SignedRem, Invoke) live in fixed_results and are
/// readable only after the node executed.
struct ExecState {
  NodeId current = 0;
  std::string method;
  std::vector<Value> params;
  std::map<NodeId, Value> fixed_results;
  std::map<NodeId, Value> phi_values;
  std::map<NodeId, std::size_t> last_end_index;
  std::map<std::string, Value> static_fields;
  std::vector<Frame> call_stack;
  std::uint64_t steps = 0;
  std::uint64_t step_limit = kDefaultStepLimit;
};

struct Finished {
  Value value;
};

struct ExecError {
  std::string message;
  friend bool operator==(const ExecError&, const ExecError&) = default;
};

using StepOutcome = std::variant<ExecState, Finished, ExecError>;
using RunResult = std::variant<Value, ExecError>;

namespace interp_detail {

inline Value widen_unary(const Value& v) { return widen_to(v, 32); }

inline std::pair<Value, Value> promote_pair(const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int()) return {a, b};
  unsigned t = promoted_width(a.bits(), b.bits());
  return {widen_to(a, t), widen_to(b, t)};
}

}  // namespace interp_detail

/// Evaluates a data node against the current state by following backward
/// data-flow edges. Binary numeric promotion (widen to 32, or 64 if either
/// operand is 64-bit) is applied here; shifts and plain unaries promote the
/// operand alone.
inline Value eval_expr(const IRGraph& g, const ExecState& s, NodeId root) {
  std::map<NodeId, Value> memo;
  auto rec = [&](auto&& self, NodeId id) -> Value {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const IRNode& n = g.node(id);
    auto in = [&](std::string_view role) {
      auto r = n.ref(role);
      if (!r) throw EvalError("node " + std::to_string(id) + ": missing " +
                              std::string(role) + " input");
      return self(self, *r);
    };
    Value v;
    switch (n.kind) {
      case NodeKind::Constant: v = n.constant(); break;
      case NodeKind::Parameter: {
        std::uint32_t i = n.param_index();
        if (i >= s.params.size())
          throw EvalError("node " + std::to_string(id) + ": no argument for parameter " +
                          std::to_string(i));
        v = s.params[i];
        break;
      }
      case NodeKind::ValuePhi: {
        auto it = s.phi_values.find(id);
        if (it == s.phi_values.end())
          throw EvalError("node " + std::to_string(id) +
                          ": phi read before its merge was entered");
        v = it->second;
        break;
      }
      case NodeKind::SignedDiv:
      case NodeKind::SignedRem:
      case NodeKind::Invoke: {
        auto it = s.fixed_results.find(id);
        if (it == s.fixed_results.end())
          throw EvalError("node " + std::to_string(id) +
                          ": data-flow use before control-flow execution");
        v = it->second;
        break;
      }
      case NodeKind::LoadField: {
        auto it = s.static_fields.find(n.symbol());
        if (it == s.static_fields.end())
          throw EvalError("node " + std::to_string(id) + ": unknown field '" +
                          n.symbol() + "'");
        v = it->second;
        break;
      }
      case NodeKind::Add:
      case NodeKind::Sub:
      case NodeKind::Mul:
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Xor: {
        auto [a, b] = interp_detail::promote_pair(in("x"), in("y"));
        BinArith op;
        switch (n.kind) {
          case NodeKind::Add: op = BinArith::Add; break;
          case NodeKind::Sub: op = BinArith::Sub; break;
          case NodeKind::Mul: op = BinArith::Mul; break;
          case NodeKind::And: op = BinArith::And; break;
          case NodeKind::Or: op = BinArith::Or; break;
          default: op = BinArith::Xor; break;
        }
        v = eval_binary(op, a, b);
        break;
      }
      case NodeKind::LeftShift:
      case NodeKind::RightShift:
      case NodeKind::UnsignedRightShift: {
        Value a = interp_detail::widen_unary(in("x"));
        Value b = in("y");
        ShiftKind op = n.kind == NodeKind::LeftShift ? ShiftKind::Left
                       : n.kind == NodeKind::RightShift ? ShiftKind::ArithRight
                                                        : ShiftKind::LogicRight;
        v = eval_shift(op, a, b);
        break;
      }
      case NodeKind::Negate:
      case NodeKind::Not:
      case NodeKind::Abs: {
        Value a = interp_detail::widen_unary(in("x"));
        UnaryArith op = n.kind == NodeKind::Negate ? UnaryArith::Negate
                        : n.kind == NodeKind::Not ? UnaryArith::Not
                                                  : UnaryArith::Abs;
        v = eval_unary(op, a);
        break;
      }
      case NodeKind::IntegerEquals:
      case NodeKind::IntegerLessThan: {
        auto [a, b] = interp_detail::promote_pair(in("x"), in("y"));
        v = eval_compare(n.kind == NodeKind::IntegerEquals ? CompareKind::Equals
                                                           : CompareKind::LessThan,
                         a, b);
        break;
      }
      case NodeKind::SignExtend:
      case NodeKind::ZeroExtend:
      case NodeKind::Narrow: {
        ConvertKind op = n.kind == NodeKind::SignExtend ? ConvertKind::SignExtend
                         : n.kind == NodeKind::ZeroExtend ? ConvertKind::ZeroExtend
                                                          : ConvertKind::Narrow;
        v = eval_convert(op, n.widths().in_bits, n.widths().out_bits, in("x"));
        break;
      }
      case NodeKind::Conditional: {
        Value c = in("condition");
        v = c.is_nonzero() ? in("trueVal") : in("falseVal");
        break;
      }
      default:
        throw EvalError("node " + std::to_string(id) + ": " +
                        std::string(n.info().name) + " is not a data node");
    }
    memo.emplace(id, v);
    return v;
  };
  return rec(rec, root);
}

/// One control-flow transition.
inline StepOutcome step(const Program& p, ExecState s) {
  auto mit = p.methods.find(s.method);
  if (mit == p.methods.end()) return ExecError{"unknown method '" + s.method + "'"};
  const IRGraph& g = mit->second;

  if (s.steps >= s.step_limit) return ExecError{"step limit exceeded"};
  ++s.steps;

  if (!g.contains(s.current))
    return ExecError{"control reached missing node " + std::to_string(s.current)};
  const IRNode n = g.node(s.current);

  auto eval = [&](NodeId id) { return eval_expr(g, s, id); };
  auto go = [&](Ref next) -> StepOutcome {
    if (!next)
      return ExecError{"node " + std::to_string(s.current) + ": missing successor"};
    s.current = *next;
    return std::move(s);
  };

  // Entering a merge: record which predecessor we came through and bind all
  // of its phis simultaneously against the pre-transition state.
  auto enter_merge = [&](NodeId merge_id, NodeId end_id) -> StepOutcome {
    const IRNode& m = g.node(merge_id);
    const RefList& ends = m.list("ends");
    std::size_t k = ends.size();
    for (std::size_t i = 0; i < ends.size(); ++i)
      if (ends[i] == end_id) k = i;
    if (k == ends.size())
      return ExecError{"node " + std::to_string(end_id) + ": not an end of merge " +
                       std::to_string(merge_id)};
    std::vector<std::pair<NodeId, Value>> bound;
    for (const auto& [pid, pe] : g.nodes()) {
      if (pe.node.kind != NodeKind::ValuePhi) continue;
      if (pe.node.ref("merge") != Ref{merge_id}) continue;
      const RefList& ins = pe.node.list("values");
      if (k >= ins.size())
        return ExecError{"node " + std::to_string(pid) + ": phi has no input for end " +
                         std::to_string(end_id)};
      bound.emplace_back(pid, eval(ins[k]));
    }
    for (auto& [pid, v] : bound) s.phi_values[pid] = v;
    s.last_end_index[merge_id] = k;
    return go(m.ref("next"));
  };

  try {
    switch (n.kind) {
      case NodeKind::Start:
      case NodeKind::Begin:
      case NodeKind::LoopExit:
        return go(n.ref("next"));

      case NodeKind::If: {
        Value c = eval(*n.ref("condition"));
        if (c.is_undef())
          return ExecError{"node " + std::to_string(s.current) + ": undefined condition"};
        return go(c.is_nonzero() ? n.ref("trueSucc") : n.ref("falseSucc"));
      }

      case NodeKind::End: {
        auto owner = merge_owner(g, s.current);
        if (!owner)
          return ExecError{"node " + std::to_string(s.current) + ": end has no owning merge"};
        return enter_merge(*owner, s.current);
      }

      case NodeKind::LoopEnd: {
        Ref lb = n.ref("loopBegin");
        if (!lb || !g.contains(*lb))
          return ExecError{"node " + std::to_string(s.current) + ": unresolved loop begin"};
        return enter_merge(*lb, s.current);
      }

      case NodeKind::SignedDiv:
      case NodeKind::SignedRem: {
        auto [a, b] =
            interp_detail::promote_pair(eval(*n.ref("x")), eval(*n.ref("y")));
        auto r = eval_divrem(
            n.kind == NodeKind::SignedDiv ? DivKind::Div : DivKind::Rem, a, b);
        if (!r) return ExecError{"division by zero"};
        s.fixed_results[s.current] = *r;
        return go(n.ref("next"));
      }

      case NodeKind::StoreField: {
        s.static_fields[n.symbol()] = eval(*n.ref("value"));
        return go(n.ref("next"));
      }

      case NodeKind::Invoke: {
        auto callee = p.methods.find(n.symbol());
        if (callee == p.methods.end())
          return ExecError{"node " + std::to_string(s.current) +
                           ": unresolved invoke target '" + n.symbol() + "'"};
        std::vector<Value> args;
        for (NodeId a : n.list("args")) args.push_back(eval(a));
        Frame f;
        f.method = std::move(s.method);
        f.invoke_site = s.current;
        f.params = std::move(s.params);
        f.fixed_results = std::move(s.fixed_results);
        f.phi_values = std::move(s.phi_values);
        f.last_end_index = std::move(s.last_end_index);
        s.call_stack.push_back(std::move(f));
        s.method = n.symbol();
        s.params = std::move(args);
        s.fixed_results.clear();
        s.phi_values.clear();
        s.last_end_index.clear();
        s.current = callee->second.start();
        return StepOutcome{std::move(s)};
      }

      case NodeKind::Return: {
        Value v = n.ref("value") ? eval(*n.ref("value")) : Value::undef();
        if (s.call_stack.empty()) {
          // Boolean results coerce to 32-bit integers at the outermost frame.
          if (v.is_int() && v.bits() == 1) v = Value::from_raw(32, v.raw());
          return Finished{v};
        }
        Frame f = std::move(s.call_stack.back());
        s.call_stack.pop_back();
        s.method = std::move(f.method);
        s.params = std::move(f.params);
        s.fixed_results = std::move(f.fixed_results);
        s.phi_values = std::move(f.phi_values);
        s.last_end_index = std::move(f.last_end_index);
        s.fixed_results[f.invoke_site] = v;
        const IRGraph& caller = p.methods.at(s.method);
        if (!caller.contains(f.invoke_site))
          return ExecError{"missing invoke site " + std::to_string(f.invoke_site)};
        return go(caller.node(f.invoke_site).ref("next"));
      }

      default:
        return ExecError{"node " + std::to_string(s.current) + ": " +
                         std::string(n.info().name) + " is not a control-flow node"};
    }
  } catch (const EvalError& e) {
    return ExecError{e.what()};
  }
}

/// Runs a method to completion. Arguments are widened to match Java call
/// semantics: an argument for an 8- or 16-bit parameter is sign-extended to
/// 32 bits. Static fields start from the program's init table (per run; runs
/// never share mutable state).
inline RunResult run(const Program& p, const std::string& method,
                     std::vector<Value> args,
                     std::uint64_t step_limit = kDefaultStepLimit) {
  auto mit = p.methods.find(method);
  if (mit == p.methods.end()) return ExecError{"unknown method '" + method + "'"};
  const IRGraph& g = mit->second;

  for (const auto& [id, e] : g.nodes()) {
    if (e.node.kind != NodeKind::Parameter) continue;
    std::uint32_t i = e.node.param_index();
    if (i >= args.size()) continue;
    const Stamp& st = e.stamp;
    if (st.is_integer() && (st.bits() == 8 || st.bits() == 16) && args[i].is_int() &&
        args[i].bits() == st.bits())
      args[i] = widen_to(args[i], 32);
  }

  ExecState s;
  s.current = g.start();
  s.method = method;
  s.params = std::move(args);
  s.static_fields = p.fields;
  s.step_limit = step_limit;

  StepOutcome o = s;
  while (std::holds_alternative<ExecState>(o))
    o = step(p, std::move(std::get<ExecState>(o)));
  if (auto* f = std::get_if<Finished>(&o)) return f->value;
  return std::get<ExecError>(o);
}

/// Result of checking one embedded test vector.
struct TestOutcome {
  bool passed = false;
  std::string method;
  std::vector<Value> args;
  Value expected;
  RunResult actual{Value::undef()};
  std::string detail;
};

inline TestOutcome static_test(const Program& p, const std::string& method,
                               const std::vector<Value>& args, const Value& expected,
                               std::uint64_t step_limit = kDefaultStepLimit) {
  TestOutcome out;
  out.method = method;
  out.args = args;
  out.expected = expected;
  out.actual = run(p, method, args, step_limit);
  if (auto* v = std::get_if<Value>(&out.actual)) {
    out.passed = (*v == expected);
    if (!out.passed)
      out.detail = "expected " + expected.to_string() + ", got " + v->to_string();
  } else {
    out.passed = false;
    out.detail = "expected " + expected.to_string() + ", got error: " +
                 std::get<ExecError>(out.actual).message;
  }
  return out;
}

}  // namespace sonir
