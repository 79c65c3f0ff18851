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

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "sonir/program.hpp"

namespace sonir {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
  ParseError(const std::string& msg, std::size_t line, std::size_t col)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_ = 0;
  std::size_t col_ = 0;
};

namespace json_detail {

using Json = nlohmann::ordered_json;

inline Json value_to_json(const Value& v) {
  if (v.is_undef()) throw std::invalid_argument("cannot serialize an undefined value");
  return Json::array({"int", v.bits(), v.raw()});
}

inline Json stamp_to_json(const Stamp& s) {
  switch (s.kind()) {
    case Stamp::Kind::Void: return "void";
    case Stamp::Kind::Illegal: return "illegal";
    case Stamp::Kind::Integer: return Json::array({"int", s.bits(), s.lo(), s.hi()});
  }
  return nullptr;
}

inline Json node_to_json(const IRNode& n) {
  Json o = Json::object();
  o["kind"] = std::string(n.info().name);
  switch (n.info().payload) {
    case PayloadKind::None: break;
    case PayloadKind::ConstValue: o["value"] = value_to_json(n.constant()); break;
    case PayloadKind::ParamIndex: o["index"] = n.param_index(); break;
    case PayloadKind::Widths:
      o["inBits"] = n.widths().in_bits;
      o["outBits"] = n.widths().out_bits;
      break;
    case PayloadKind::MethodName: o["method"] = n.symbol(); break;
    case PayloadKind::FieldName: o["field"] = n.symbol(); break;
  }
  const auto& roles = n.info().roles;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    std::string key(roles[i].name);
    if (n.is_list_role(i)) {
      Json arr = Json::array();
      for (NodeId t : std::get<RefList>(n.slots[i])) arr.push_back(t);
      o[key] = std::move(arr);
    } else if (auto r = std::get<Ref>(n.slots[i])) {
      o[key] = *r;
    } else {
      o[key] = nullptr;
    }
  }
  return o;
}

inline Json graph_to_json(const IRGraph& g) {
  Json o = Json::object();
  o["start"] = g.start();
  Json nodes = Json::array();
  for (const auto& [id, e] : g.nodes()) {
    Json stamp = Json::object();
    stamp["stamp"] = stamp_to_json(e.stamp);
    nodes.push_back(Json::array({id, node_to_json(e.node), std::move(stamp)}));
  }
  o["nodes"] = std::move(nodes);
  return o;
}

[[noreturn]] inline void fail(const std::string& ctx, const std::string& msg) {
  throw ParseError(ctx.empty() ? msg : ctx + ": " + msg);
}

inline std::uint64_t get_unsigned(const Json& j, const std::string& ctx) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(ctx, "expected an integer");
  if (j.is_number_integer() && j.get<std::int64_t>() < 0 && !j.is_number_unsigned())
    fail(ctx, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::int64_t get_signed(const Json& j, const std::string& ctx) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(ctx, "expected an integer");
  return j.get<std::int64_t>();
}

inline Value value_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_string() || j[0] != "int")
    fail(ctx, "expected a value of the form [\"int\", bits, raw]");
  auto bits = get_unsigned(j[1], ctx + " bits");
  if (!is_program_width(static_cast<unsigned>(bits))) fail(ctx, "unsupported bit count");
  std::uint64_t raw = get_unsigned(j[2], ctx + " raw");
  if (raw & ~width_mask(static_cast<unsigned>(bits)))
    fail(ctx, "raw payload has bits set above the value width");
  return Value::from_raw(static_cast<unsigned>(bits), raw);
}

inline Stamp stamp_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("stamp")) fail(ctx, "expected {\"stamp\": ...}");
  const Json& s = j["stamp"];
  if (s.is_string()) {
    if (s == "void") return Stamp::void_stamp();
    if (s == "illegal") return Stamp::illegal();
    fail(ctx, "unknown stamp '" + s.get<std::string>() + "'");
  }
  if (!s.is_array() || s.size() != 4 || s[0] != "int")
    fail(ctx, "expected \"void\", \"illegal\", or [\"int\", bits, lo, hi]");
  auto bits = get_unsigned(s[1], ctx + " bits");
  if (!is_program_width(static_cast<unsigned>(bits))) fail(ctx, "unsupported bit count");
  try {
    return Stamp::integer(static_cast<unsigned>(bits), get_signed(s[2], ctx + " lo"),
                          get_signed(s[3], ctx + " hi"));
  } catch (const std::invalid_argument& e) {
    fail(ctx, e.what());
  }
}

inline NodeId get_node_id(const Json& j, const std::string& ctx) {
  std::uint64_t v = get_unsigned(j, ctx);
  if (v > 0xffffffffull) fail(ctx, "node id out of range");
  return static_cast<NodeId>(v);
}

inline IRNode node_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(ctx, "expected a node object with a \"kind\"");
  std::string kname = j["kind"].get<std::string>();
  auto kind = kind_from_name(kname);
  if (!kind) fail(ctx, "unknown node kind '" + kname + "'");
  IRNode n = make::raw_node(*kind);

  std::vector<std::string> allowed = {"kind"};
  switch (n.info().payload) {
    case PayloadKind::None: break;
    case PayloadKind::ConstValue: {
      allowed.push_back("value");
      if (!j.contains("value")) fail(ctx, "Constant requires a \"value\"");
      n.payload = value_from_json(j["value"], ctx + " value");
      break;
    }
    case PayloadKind::ParamIndex: {
      allowed.push_back("index");
      if (!j.contains("index")) fail(ctx, "Parameter requires an \"index\"");
      n.payload = static_cast<std::uint32_t>(get_unsigned(j["index"], ctx + " index"));
      break;
    }
    case PayloadKind::Widths: {
      allowed.push_back("inBits");
      allowed.push_back("outBits");
      if (!j.contains("inBits") || !j.contains("outBits"))
        fail(ctx, kname + " requires \"inBits\" and \"outBits\"");
      auto in = get_unsigned(j["inBits"], ctx + " inBits");
      auto out = get_unsigned(j["outBits"], ctx + " outBits");
      if (!is_program_width(static_cast<unsigned>(in)) ||
          !is_program_width(static_cast<unsigned>(out)))
        fail(ctx, "unsupported bit count");
      n.payload = ConvertWidths{static_cast<unsigned>(in), static_cast<unsigned>(out)};
      break;
    }
    case PayloadKind::MethodName: {
      allowed.push_back("method");
      if (!j.contains("method") || !j["method"].is_string())
        fail(ctx, "Invoke requires a \"method\"");
      n.payload = j["method"].get<std::string>();
      break;
    }
    case PayloadKind::FieldName: {
      allowed.push_back("field");
      if (!j.contains("field") || !j["field"].is_string())
        fail(ctx, kname + " requires a \"field\"");
      n.payload = j["field"].get<std::string>();
      break;
    }
  }

  const auto& roles = n.info().roles;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    std::string key(roles[i].name);
    allowed.push_back(key);
    std::string rctx = ctx + " " + key;
    if (n.is_list_role(i)) {
      if (!j.contains(key) || !j[key].is_array()) fail(rctx, "expected a list");
      RefList l;
      for (const Json& t : j[key]) l.push_back(get_node_id(t, rctx));
      n.slots[i] = std::move(l);
    } else if (roles[i].edge == EdgeKind::OptInput) {
      if (j.contains(key) && !j[key].is_null()) n.slots[i] = Ref{get_node_id(j[key], rctx)};
    } else {
      if (!j.contains(key) || j[key].is_null()) fail(rctx, "required reference missing");
      n.slots[i] = Ref{get_node_id(j[key], rctx)};
    }
  }

  for (const auto& [key, unused] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(ctx, "unknown field '" + key + "' for kind " + kname);
  return n;
}

inline IRGraph graph_from_json(const Json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("start") || !j.contains("nodes") ||
      !j["nodes"].is_array())
    fail(ctx, "expected {\"start\": id, \"nodes\": [...]}");
  NodeId start = get_node_id(j["start"], ctx + " start");
  std::vector<std::tuple<NodeId, IRNode, Stamp>> entries;
  for (const Json& entry : j["nodes"]) {
    if (!entry.is_array() || entry.size() != 3)
      fail(ctx, "expected node entries of the form [id, node, stamp]");
    NodeId id = get_node_id(entry[0], ctx + " node id");
    std::string ectx = ctx + " node " + std::to_string(id);
    entries.emplace_back(id, node_from_json(entry[1], ectx),
                         stamp_from_json(entry[2], ectx));
  }
  IRGraph g;
  try {
    g = IRGraph::build(entries);
  } catch (const GraphError& e) {
    fail(ctx, e.what());
  }
  if (g.start() != start)
    fail(ctx, "start field " + std::to_string(start) + " does not name the Start node " +
                  std::to_string(g.start()));
  return g;
}

inline std::pair<std::size_t, std::size_t> line_col_of(std::string_view text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace json_detail

inline std::string serialize_program(const Program& p) {
  using json_detail::Json;
  Json o = Json::object();
  Json methods = Json::object();
  for (const auto& [name, g] : p.methods) methods[name] = json_detail::graph_to_json(g);
  o["methods"] = std::move(methods);
  Json fields = Json::object();
  for (const auto& [name, v] : p.fields) fields[name] = json_detail::value_to_json(v);
  o["fields"] = std::move(fields);
  Json tests = Json::array();
  for (const TestVector& t : p.tests) {
    Json jt = Json::object();
    jt["method"] = t.method;
    Json args = Json::array();
    for (const Value& a : t.args) args.push_back(json_detail::value_to_json(a));
    jt["args"] = std::move(args);
    jt["expect"] = json_detail::value_to_json(t.expect);
    tests.push_back(std::move(jt));
  }
  o["tests"] = std::move(tests);
  if (!p.goldens.empty()) {
    Json goldens = Json::array();
    for (const Golden& g : p.goldens) {
      Json jg = Json::object();
      jg["method"] = g.method;
      Json phases = Json::array();
      for (Phase ph : g.phases) phases.push_back(std::string(phase_name(ph)));
      jg["phases"] = std::move(phases);
      jg["graph"] = json_detail::graph_to_json(g.graph);
      goldens.push_back(std::move(jg));
    }
    o["goldens"] = std::move(goldens);
  }
  return o.dump(1) + "\n";
}

inline Program parse_program(std::string_view text) {
  using json_detail::Json;
  using json_detail::fail;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = json_detail::line_col_of(text, e.byte);
    throw ParseError(e.what(), line, col);
  }
  if (!j.is_object()) throw ParseError("expected a top-level object");
  for (const auto& [key, unused] : j.items())
    if (key != "methods" && key != "fields" && key != "tests" && key != "goldens")
      throw ParseError("unknown top-level field '" + key + "'");

  Program p;
  if (j.contains("methods")) {
    if (!j["methods"].is_object()) fail("methods", "expected an object");
    for (const auto& [name, jg] : j["methods"].items())
      p.methods[name] = json_detail::graph_from_json(jg, "method " + name);
  }
  if (j.contains("fields")) {
    if (!j["fields"].is_object()) fail("fields", "expected an object");
    for (const auto& [name, jv] : j["fields"].items())
      p.fields[name] = json_detail::value_from_json(jv, "field " + name);
  }
  if (j.contains("tests")) {
    if (!j["tests"].is_array()) fail("tests", "expected a list");
    std::size_t i = 0;
    for (const Json& jt : j["tests"]) {
      std::string ctx = "test " + std::to_string(i++);
      if (!jt.is_object() || !jt.contains("method") || !jt["method"].is_string() ||
          !jt.contains("args") || !jt["args"].is_array() || !jt.contains("expect"))
        fail(ctx, "expected {\"method\", \"args\", \"expect\"}");
      TestVector t;
      t.method = jt["method"].get<std::string>();
      for (const Json& ja : jt["args"])
        t.args.push_back(json_detail::value_from_json(ja, ctx + " arg"));
      t.expect = json_detail::value_from_json(jt["expect"], ctx + " expect");
      p.tests.push_back(std::move(t));
    }
  }
  if (j.contains("goldens")) {
    if (!j["goldens"].is_array()) fail("goldens", "expected a list");
    std::size_t i = 0;
    for (const Json& jg : j["goldens"]) {
      std::string ctx = "golden " + std::to_string(i++);
      if (!jg.is_object() || !jg.contains("method") || !jg["method"].is_string() ||
          !jg.contains("phases") || !jg["phases"].is_array() || !jg.contains("graph"))
        fail(ctx, "expected {\"method\", \"phases\", \"graph\"}");
      Golden g;
      g.method = jg["method"].get<std::string>();
      for (const Json& jp : jg["phases"]) {
        if (!jp.is_string()) fail(ctx, "phases must be strings");
        auto ph = phase_from_name(jp.get<std::string>());
        if (!ph) fail(ctx, "unknown phase '" + jp.get<std::string>() + "'");
        g.phases.push_back(*ph);
      }
      g.graph = json_detail::graph_from_json(jg["graph"], ctx + " graph");
      p.goldens.push_back(std::move(g));
    }
  }
  return p;
}

}  // namespace sonir
