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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sonir/value.hpp"

namespace sonir {

/// Node identifier. Only identity matters; structural equivalence is
/// insensitive to renumbering.
using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t {
  Start,
  Parameter,
  Constant,
  FrameState,
  Return,
  If,
  Begin,
  End,
  Merge,
  LoopBegin,
  LoopEnd,
  LoopExit,
  ValuePhi,
  Add,
  Sub,
  Mul,
  SignedDiv,
  SignedRem,
  And,
  Or,
  Xor,
  LeftShift,
  RightShift,
  UnsignedRightShift,
  Negate,
  Not,
  Abs,
  IntegerEquals,
  IntegerLessThan,
  Conditional,
  SignExtend,
  ZeroExtend,
  Narrow,
  Invoke,
  LoadField,
  StoreField,
};

inline constexpr std::size_t kNodeKindCount = 36;

/// Edge classes. Successor edges carry control flow; everything else is a
/// backward data/association reference. An end list is the ordered list of
/// End/LoopEnd predecessors of a Merge/LoopBegin.
enum class EdgeKind : std::uint8_t { Input, OptInput, InputList, Successor, EndList };

enum class PayloadKind : std::uint8_t {
  None,
  ConstValue,   // Constant
  ParamIndex,   // Parameter
  Widths,       // SignExtend / ZeroExtend / Narrow
  MethodName,   // Invoke
  FieldName,    // LoadField / StoreField
};

struct RoleSpec {
  std::string_view name;
  EdgeKind edge;
};

struct KindInfo {
  std::string_view name;
  std::vector<RoleSpec> roles;
  PayloadKind payload;
  bool control;  // sits on the control-flow path
};

inline const KindInfo& kind_info(NodeKind k) {
  using E = EdgeKind;
  static const std::array<KindInfo, kNodeKindCount> table = {{
      {"Start", {{"frameState", E::OptInput}, {"next", E::Successor}}, PayloadKind::None, true},
      {"Parameter", {}, PayloadKind::ParamIndex, false},
      {"Constant", {}, PayloadKind::ConstValue, false},
      {"FrameState", {}, PayloadKind::None, false},
      {"Return", {{"value", E::OptInput}}, PayloadKind::None, true},
      {"If", {{"condition", E::Input}, {"trueSucc", E::Successor}, {"falseSucc", E::Successor}}, PayloadKind::None, true},
      {"Begin", {{"next", E::Successor}}, PayloadKind::None, true},
      {"End", {}, PayloadKind::None, true},
      {"Merge", {{"ends", E::EndList}, {"frameState", E::OptInput}, {"next", E::Successor}}, PayloadKind::None, true},
      {"LoopBegin", {{"ends", E::EndList}, {"next", E::Successor}}, PayloadKind::None, true},
      {"LoopEnd", {{"loopBegin", E::Input}}, PayloadKind::None, true},
      {"LoopExit", {{"loopBegin", E::Input}, {"next", E::Successor}}, PayloadKind::None, true},
      {"ValuePhi", {{"merge", E::Input}, {"values", E::InputList}}, PayloadKind::None, false},
      {"Add", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"Sub", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"Mul", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"SignedDiv", {{"x", E::Input}, {"y", E::Input}, {"next", E::Successor}}, PayloadKind::None, true},
      {"SignedRem", {{"x", E::Input}, {"y", E::Input}, {"next", E::Successor}}, PayloadKind::None, true},
      {"And", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"Or", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"Xor", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"LeftShift", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"RightShift", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"UnsignedRightShift", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"Negate", {{"x", E::Input}}, PayloadKind::None, false},
      {"Not", {{"x", E::Input}}, PayloadKind::None, false},
      {"Abs", {{"x", E::Input}}, PayloadKind::None, false},
      {"IntegerEquals", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"IntegerLessThan", {{"x", E::Input}, {"y", E::Input}}, PayloadKind::None, false},
      {"Conditional", {{"condition", E::Input}, {"trueVal", E::Input}, {"falseVal", E::Input}}, PayloadKind::None, false},
      {"SignExtend", {{"x", E::Input}}, PayloadKind::Widths, false},
      {"ZeroExtend", {{"x", E::Input}}, PayloadKind::Widths, false},
      {"Narrow", {{"x", E::Input}}, PayloadKind::Widths, false},
      {"Invoke", {{"args", E::InputList}, {"next", E::Successor}}, PayloadKind::MethodName, true},
      {"LoadField", {}, PayloadKind::FieldName, false},
      {"StoreField", {{"value", E::Input}, {"next", E::Successor}}, PayloadKind::FieldName, true},
  }};
  return table[static_cast<std::size_t>(k)];
}

inline std::string_view kind_name(NodeKind k) { return kind_info(k).name; }

inline std::optional<NodeKind> kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNodeKindCount; ++i) {
    auto k = static_cast<NodeKind>(i);
    if (kind_info(k).name == name) return k;
  }
  return std::nullopt;
}

struct ConvertWidths {
  unsigned in_bits = 0;
  unsigned out_bits = 0;
  friend bool operator==(const ConvertWidths&, const ConvertWidths&) = default;
};

using Ref = std::optional<NodeId>;
using RefList = std::vector<NodeId>;
using Slot = std::variant<Ref, RefList>;
using Payload =
    std::variant<std::monostate, Value, std::uint32_t, ConvertWidths, std::string>;

/// One IR node: a kind tag, role-addressed references laid out per
/// kind_info(kind).roles, and a kind-specific payload.
struct IRNode {
  NodeKind kind = NodeKind::Start;
  std::vector<Slot> slots;
  Payload payload;

  const KindInfo& info() const { return kind_info(kind); }

  int role_index(std::string_view role) const {
    const auto& roles = info().roles;
    for (std::size_t i = 0; i < roles.size(); ++i)
      if (roles[i].name == role) return static_cast<int>(i);
    return -1;
  }

  bool is_list_role(std::size_t i) const {
    EdgeKind e = info().roles[i].edge;
    return e == EdgeKind::InputList || e == EdgeKind::EndList;
  }

  Ref ref(std::string_view role) const {
    int i = role_index(role);
    if (i < 0 || is_list_role(static_cast<std::size_t>(i)))
      throw std::invalid_argument("invalid role '" + std::string(role) +
                                  "' for kind " + std::string(info().name));
    return std::get<Ref>(slots[static_cast<std::size_t>(i)]);
  }

  void set_ref(std::string_view role, Ref r) {
    int i = role_index(role);
    if (i < 0 || is_list_role(static_cast<std::size_t>(i)))
      throw std::invalid_argument("invalid role '" + std::string(role) +
                                  "' for kind " + std::string(info().name));
    slots[static_cast<std::size_t>(i)] = r;
  }

  const RefList& list(std::string_view role) const {
    int i = role_index(role);
    if (i < 0 || !is_list_role(static_cast<std::size_t>(i)))
      throw std::invalid_argument("invalid role '" + std::string(role) +
                                  "' for kind " + std::string(info().name));
    return std::get<RefList>(slots[static_cast<std::size_t>(i)]);
  }

  RefList& list_mut(std::string_view role) {
    return const_cast<RefList&>(static_cast<const IRNode*>(this)->list(role));
  }

  const Value& constant() const { return std::get<Value>(payload); }
  std::uint32_t param_index() const { return std::get<std::uint32_t>(payload); }
  const ConvertWidths& widths() const { return std::get<ConvertWidths>(payload); }
  const std::string& symbol() const { return std::get<std::string>(payload); }

  /// Visits every present reference: f(role, EdgeKind, NodeId).
  template <class F>
  void for_each_ref(F&& f) const {
    const auto& roles = info().roles;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (is_list_role(i)) {
        for (NodeId t : std::get<RefList>(slots[i])) f(roles[i].name, roles[i].edge, t);
      } else if (auto r = std::get<Ref>(slots[i])) {
        f(roles[i].name, roles[i].edge, *r);
      }
    }
  }

  std::string to_string() const {
    std::string out(info().name);
    out += "(";
    bool first = true;
    auto sep = [&] {
      if (!first) out += ", ";
      first = false;
    };
    switch (info().payload) {
      case PayloadKind::None: break;
      case PayloadKind::ConstValue: sep(); out += constant().to_string(); break;
      case PayloadKind::ParamIndex: sep(); out += std::to_string(param_index()); break;
      case PayloadKind::Widths:
        sep();
        out += std::to_string(widths().in_bits) + "->" + std::to_string(widths().out_bits);
        break;
      case PayloadKind::MethodName:
      case PayloadKind::FieldName: sep(); out += symbol(); break;
    }
    const auto& roles = info().roles;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      sep();
      out += std::string(roles[i].name) + "=";
      if (is_list_role(i)) {
        out += "[";
        const auto& l = std::get<RefList>(slots[i]);
        for (std::size_t j = 0; j < l.size(); ++j) {
          if (j) out += ", ";
          out += std::to_string(l[j]);
        }
        out += "]";
      } else if (auto r = std::get<Ref>(slots[i])) {
        out += std::to_string(*r);
      } else {
        out += "_";
      }
    }
    out += ")";
    return out;
  }

  friend bool operator==(const IRNode&, const IRNode&) = default;
};

/// Factory helpers; each returns a node whose slots match the kind schema.
namespace make {

inline IRNode raw_node(NodeKind k) {
  IRNode n;
  n.kind = k;
  for (const RoleSpec& r : kind_info(k).roles) {
    if (r.edge == EdgeKind::InputList || r.edge == EdgeKind::EndList)
      n.slots.emplace_back(RefList{});
    else
      n.slots.emplace_back(Ref{});
  }
  return n;
}

inline IRNode start(Ref frame_state, NodeId next) {
  IRNode n = raw_node(NodeKind::Start);
  n.slots[0] = frame_state;
  n.slots[1] = Ref{next};
  return n;
}

inline IRNode parameter(std::uint32_t index) {
  IRNode n = raw_node(NodeKind::Parameter);
  n.payload = index;
  return n;
}

inline IRNode constant(const Value& v) {
  IRNode n = raw_node(NodeKind::Constant);
  n.payload = v;
  return n;
}

inline IRNode frame_state() { return raw_node(NodeKind::FrameState); }

inline IRNode ret(Ref value) {
  IRNode n = raw_node(NodeKind::Return);
  n.slots[0] = value;
  return n;
}

inline IRNode if_node(NodeId condition, NodeId true_succ, NodeId false_succ) {
  IRNode n = raw_node(NodeKind::If);
  n.slots[0] = Ref{condition};
  n.slots[1] = Ref{true_succ};
  n.slots[2] = Ref{false_succ};
  return n;
}

inline IRNode begin(NodeId next) {
  IRNode n = raw_node(NodeKind::Begin);
  n.slots[0] = Ref{next};
  return n;
}

inline IRNode end() { return raw_node(NodeKind::End); }

inline IRNode merge(RefList ends, Ref frame_state, NodeId next) {
  IRNode n = raw_node(NodeKind::Merge);
  n.slots[0] = std::move(ends);
  n.slots[1] = frame_state;
  n.slots[2] = Ref{next};
  return n;
}

inline IRNode loop_begin(RefList ends, NodeId next) {
  IRNode n = raw_node(NodeKind::LoopBegin);
  n.slots[0] = std::move(ends);
  n.slots[1] = Ref{next};
  return n;
}

inline IRNode loop_end(NodeId loop_begin) {
  IRNode n = raw_node(NodeKind::LoopEnd);
  n.slots[0] = Ref{loop_begin};
  return n;
}

inline IRNode loop_exit(NodeId loop_begin, NodeId next) {
  IRNode n = raw_node(NodeKind::LoopExit);
  n.slots[0] = Ref{loop_begin};
  n.slots[1] = Ref{next};
  return n;
}

inline IRNode value_phi(NodeId merge, RefList values) {
  IRNode n = raw_node(NodeKind::ValuePhi);
  n.slots[0] = Ref{merge};
  n.slots[1] = std::move(values);
  return n;
}

inline IRNode binary(NodeKind k, NodeId x, NodeId y) {
  IRNode n = raw_node(k);
  n.slots[0] = Ref{x};
  n.slots[1] = Ref{y};
  return n;
}

inline IRNode add(NodeId x, NodeId y) { return binary(NodeKind::Add, x, y); }
inline IRNode sub(NodeId x, NodeId y) { return binary(NodeKind::Sub, x, y); }
inline IRNode mul(NodeId x, NodeId y) { return binary(NodeKind::Mul, x, y); }
inline IRNode bit_and(NodeId x, NodeId y) { return binary(NodeKind::And, x, y); }
inline IRNode bit_or(NodeId x, NodeId y) { return binary(NodeKind::Or, x, y); }
inline IRNode bit_xor(NodeId x, NodeId y) { return binary(NodeKind::Xor, x, y); }
inline IRNode left_shift(NodeId x, NodeId y) { return binary(NodeKind::LeftShift, x, y); }
inline IRNode right_shift(NodeId x, NodeId y) { return binary(NodeKind::RightShift, x, y); }
inline IRNode unsigned_right_shift(NodeId x, NodeId y) {
  return binary(NodeKind::UnsignedRightShift, x, y);
}
inline IRNode integer_equals(NodeId x, NodeId y) {
  return binary(NodeKind::IntegerEquals, x, y);
}
inline IRNode integer_less_than(NodeId x, NodeId y) {
  return binary(NodeKind::IntegerLessThan, x, y);
}

inline IRNode fixed_binary(NodeKind k, NodeId x, NodeId y, NodeId next) {
  IRNode n = raw_node(k);
  n.slots[0] = Ref{x};
  n.slots[1] = Ref{y};
  n.slots[2] = Ref{next};
  return n;
}

inline IRNode signed_div(NodeId x, NodeId y, NodeId next) {
  return fixed_binary(NodeKind::SignedDiv, x, y, next);
}
inline IRNode signed_rem(NodeId x, NodeId y, NodeId next) {
  return fixed_binary(NodeKind::SignedRem, x, y, next);
}

inline IRNode unary(NodeKind k, NodeId x) {
  IRNode n = raw_node(k);
  n.slots[0] = Ref{x};
  return n;
}

inline IRNode negate(NodeId x) { return unary(NodeKind::Negate, x); }
inline IRNode bit_not(NodeId x) { return unary(NodeKind::Not, x); }
inline IRNode abs(NodeId x) { return unary(NodeKind::Abs, x); }

inline IRNode conditional(NodeId condition, NodeId true_val, NodeId false_val) {
  IRNode n = raw_node(NodeKind::Conditional);
  n.slots[0] = Ref{condition};
  n.slots[1] = Ref{true_val};
  n.slots[2] = Ref{false_val};
  return n;
}

inline IRNode convert(NodeKind k, unsigned in_bits, unsigned out_bits, NodeId x) {
  IRNode n = raw_node(k);
  n.slots[0] = Ref{x};
  n.payload = ConvertWidths{in_bits, out_bits};
  return n;
}

inline IRNode sign_extend(unsigned in, unsigned out, NodeId x) {
  return convert(NodeKind::SignExtend, in, out, x);
}
inline IRNode zero_extend(unsigned in, unsigned out, NodeId x) {
  return convert(NodeKind::ZeroExtend, in, out, x);
}
inline IRNode narrow(unsigned in, unsigned out, NodeId x) {
  return convert(NodeKind::Narrow, in, out, x);
}

inline IRNode invoke(std::string method, RefList args, NodeId next) {
  IRNode n = raw_node(NodeKind::Invoke);
  n.payload = std::move(method);
  n.slots[0] = std::move(args);
  n.slots[1] = Ref{next};
  return n;
}

inline IRNode load_field(std::string field) {
  IRNode n = raw_node(NodeKind::LoadField);
  n.payload = std::move(field);
  return n;
}

inline IRNode store_field(std::string field, NodeId value, NodeId next) {
  IRNode n = raw_node(NodeKind::StoreField);
  n.payload = std::move(field);
  n.slots[0] = Ref{value};
  n.slots[1] = Ref{next};
  return n;
}

}  // namespace make
}  // namespace sonir
