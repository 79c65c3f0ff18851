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
#include <array>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonir/equivalence.hpp"
#include "sonir/interpreter.hpp"
#include "sonir/optimizer.hpp"
#include "sonir/oracle.hpp"
#include "sonir/program.hpp"
#include "sonir/stamp_algebra.hpp"

namespace sonir {

/// The nine boundary values of a signed width: both extremes, their
/// neighbors, and the values around zero.
inline std::vector<std::int64_t> boundary_values(unsigned bits) {
  if (bits < 4 || bits > 64) throw std::invalid_argument("unsupported bit count");
  const std::int64_t lo = min_signed(bits);
  const std::int64_t hi = max_signed(bits);
  return {lo, lo + 1, -2, -1, 0, 1, 2, hi - 1, hi};
}

namespace harness_detail {

inline std::optional<oracle::Op> oracle_op(NodeKind k) {
  switch (k) {
    case NodeKind::Add: return oracle::Op::Add;
    case NodeKind::Sub: return oracle::Op::Sub;
    case NodeKind::Mul: return oracle::Op::Mul;
    case NodeKind::SignedDiv: return oracle::Op::Div;
    case NodeKind::SignedRem: return oracle::Op::Rem;
    case NodeKind::And: return oracle::Op::And;
    case NodeKind::Or: return oracle::Op::Or;
    case NodeKind::Xor: return oracle::Op::Xor;
    case NodeKind::LeftShift: return oracle::Op::Shl;
    case NodeKind::RightShift: return oracle::Op::Shr;
    case NodeKind::UnsignedRightShift: return oracle::Op::UShr;
    case NodeKind::Negate: return oracle::Op::Negate;
    case NodeKind::Not: return oracle::Op::Not;
    case NodeKind::Abs: return oracle::Op::Abs;
    case NodeKind::IntegerEquals: return oracle::Op::Equals;
    case NodeKind::IntegerLessThan: return oracle::Op::LessThan;
    default: return std::nullopt;
  }
}

inline std::string op_method_name(NodeKind k, unsigned bits) {
  std::string name(kind_info(k).name);
  name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
  return name + "Node" + std::to_string(bits);
}

}  // namespace harness_detail

/// Exact reference evaluation of one operator over mathematical integers in
/// the signed range of `bits`; nullopt signals division by zero.
inline std::optional<std::int64_t> oracle_eval(NodeKind op, unsigned bits,
                                               const std::vector<std::int64_t>& args) {
  auto o = harness_detail::oracle_op(op);
  if (!o) throw std::invalid_argument("unsupported operator");
  return oracle::eval(*o, bits, args);
}

/// Generates the one-operator test program: a method graph in the generated
/// shape (the operator over the parameters, division/remainder on the
/// control-flow path), with embedded tests over the boundary-value cross
/// product and oracle-computed expectations. Division and remainder exclude
/// zero as the second operand.
inline Program gen_op_tests(NodeKind op, unsigned bits) {
  using harness_detail::oracle_op;
  if (bits != 32 && bits != 64) throw std::invalid_argument("unsupported bit count");
  if (!oracle_op(op)) throw std::invalid_argument("unsupported operator");

  const bool unary = oracle::is_unary(*oracle_op(op));
  const bool fixed = op == NodeKind::SignedDiv || op == NodeKind::SignedRem;
  const bool compare = op == NodeKind::IntegerEquals || op == NodeKind::IntegerLessThan;
  const Stamp operand = unrestricted(bits);
  const Stamp op_stamp = compare ? Stamp::void_stamp() : operand;
  const Stamp ret_stamp = compare ? unrestricted(32) : operand;
  const unsigned result_bits = compare ? 32 : bits;

  std::vector<std::tuple<NodeId, IRNode, Stamp>> entries;
  entries.emplace_back(1, make::parameter(0), operand);
  if (!unary) entries.emplace_back(2, make::parameter(1), operand);
  entries.emplace_back(3, make::frame_state(), Stamp::illegal());
  if (fixed) {
    entries.emplace_back(0, make::start(3, 4), Stamp::void_stamp());
    entries.emplace_back(4, make::fixed_binary(op, 1, 2, 5), op_stamp);
  } else {
    entries.emplace_back(0, make::start(3, 5), Stamp::void_stamp());
    entries.emplace_back(4, unary ? make::unary(op, 1) : make::binary(op, 1, 2),
                         op_stamp);
  }
  entries.emplace_back(5, make::ret(4), ret_stamp);

  Program p;
  const std::string method = harness_detail::op_method_name(op, bits);
  p.methods[method] = IRGraph::build(entries);

  for (std::int64_t a : boundary_values(bits)) {
    if (unary) {
      auto r = oracle_eval(op, bits, {a});
      p.tests.push_back({method, {Value::of(bits, a)}, Value::of(result_bits, *r)});
      continue;
    }
    for (std::int64_t b : boundary_values(bits)) {
      if (fixed && b == 0) continue;
      auto r = oracle_eval(op, bits, {a, b});
      p.tests.push_back(
          {method, {Value::of(bits, a), Value::of(bits, b)}, Value::of(result_bits, *r)});
    }
  }
  return p;
}

struct DiffRow {
  std::string method;
  std::vector<Value> args;
  std::string source;  // "embedded" | "golden" | "pre-optimization"
  std::string expected;
  std::string actual;
  enum class Verdict { Pass, Fail, Skip } verdict = Verdict::Skip;
  std::string detail;
};

struct DiffReport {
  std::vector<DiffRow> rows;

  std::size_t count(DiffRow::Verdict v) const {
    std::size_t n = 0;
    for (const DiffRow& r : rows)
      if (r.verdict == v) ++n;
    return n;
  }
  std::size_t passed() const { return count(DiffRow::Verdict::Pass); }
  std::size_t failed() const { return count(DiffRow::Verdict::Fail); }
  std::size_t skipped() const { return count(DiffRow::Verdict::Skip); }
  bool all_passed() const { return failed() == 0; }

  /// Deterministic order: method, then argument tuple, then source.
  void sort() {
    auto key_less = [](const DiffRow& a, const DiffRow& b) {
      if (a.method != b.method) return a.method < b.method;
      auto tup = [](const Value& v) {
        return std::pair{v.is_int() ? v.bits() : 0u, v.is_int() ? v.raw() : 0u};
      };
      for (std::size_t i = 0; i < std::min(a.args.size(), b.args.size()); ++i)
        if (tup(a.args[i]) != tup(b.args[i])) return tup(a.args[i]) < tup(b.args[i]);
      if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
      return a.source < b.source;
    };
    std::stable_sort(rows.begin(), rows.end(), key_less);
  }

  std::string to_text() const {
    std::string out;
    std::map<std::string, std::array<std::size_t, 3>> per_method;
    for (const DiffRow& r : rows)
      ++per_method[r.method][static_cast<int>(r.verdict)];
    for (const auto& [m, c] : per_method)
      out += m + ": " + std::to_string(c[0]) + " passed, " + std::to_string(c[1]) +
             " failed, " + std::to_string(c[2]) + " skipped\n";
    for (const DiffRow& r : rows) {
      if (r.verdict != DiffRow::Verdict::Fail) continue;
      std::string args;
      for (std::size_t i = 0; i < r.args.size(); ++i)
        args += (i ? ", " : "") + r.args[i].to_string();
      out += "FAIL " + r.method + "(" + args + ") [" + r.source + "]: expected " +
             r.expected + ", got " + r.actual;
      if (!r.detail.empty()) out += " (" + r.detail + ")";
      out += "\n";
    }
    out += "total: " + std::to_string(passed()) + " passed, " +
           std::to_string(failed()) + " failed, " + std::to_string(skipped()) +
           " skipped\n";
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (const DiffRow& r : rows) {
      nlohmann::ordered_json jr;
      jr["method"] = r.method;
      nlohmann::ordered_json args = nlohmann::ordered_json::array();
      for (const Value& a : r.args) args.push_back(a.to_string());
      jr["args"] = std::move(args);
      jr["source"] = r.source;
      jr["expected"] = r.expected;
      jr["actual"] = r.actual;
      jr["verdict"] = r.verdict == DiffRow::Verdict::Pass   ? "pass"
                      : r.verdict == DiffRow::Verdict::Fail ? "fail"
                                                            : "skip";
      if (!r.detail.empty()) jr["detail"] = r.detail;
      jrows.push_back(std::move(jr));
    }
    nlohmann::ordered_json j;
    j["rows"] = std::move(jrows);
    j["summary"] = {{"total", rows.size()},
                    {"passed", passed()},
                    {"failed", failed()},
                    {"skipped", skipped()}};
    return j;
  }
};

struct HarnessOptions {
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;  // shuffles execution order only
  std::uint64_t step_limit = kDefaultStepLimit;
};

namespace harness_detail {

/// Runs tasks 0..n-1 across `jobs` threads in a (possibly seeded) order.
/// Results must be written to preassigned slots; callers sort afterwards.
template <class F>
void for_each_task(std::size_t n, const HarnessOptions& options, F&& task) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    for (std::size_t i : order) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
      task(order[i]);
  };
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

inline std::string render(const RunResult& r) {
  if (auto* v = std::get_if<Value>(&r)) return v->to_string();
  return "error: " + std::get<ExecError>(r).message;
}

}  // namespace harness_detail

/// Executes every embedded test vector of the program.
inline DiffReport run_difftest(const Program& p, const HarnessOptions& options = {}) {
  DiffReport report;
  report.rows.resize(p.tests.size());
  harness_detail::for_each_task(p.tests.size(), options, [&](std::size_t i) {
    const TestVector& t = p.tests[i];
    TestOutcome o = static_test(p, t.method, t.args, t.expect, options.step_limit);
    DiffRow row;
    row.method = t.method;
    row.args = t.args;
    row.source = "embedded";
    row.expected = t.expect.to_string();
    row.actual = harness_detail::render(o.actual);
    row.verdict = o.passed ? DiffRow::Verdict::Pass : DiffRow::Verdict::Fail;
    row.detail = o.detail;
    report.rows[i] = std::move(row);
  });
  report.sort();
  return report;
}

/// Checks that the phase pipeline preserves behavior: (a) where the program
/// carries a golden optimized graph for (method, phases), the optimized
/// graph must be structurally equivalent to it; (b) for every embedded test
/// input and every boundary-value assignment to the parameters, the method
/// computes the same outcome before and after optimization.
inline DiffReport run_commutation_test(const Program& p, const std::vector<Phase>& phases,
                                       const HarnessOptions& options = {}) {
  DiffReport report;

  struct SemanticTask {
    std::string method;
    std::vector<Value> args;
  };
  std::vector<SemanticTask> tasks;
  std::map<std::string, Program> optimized;  // method -> program with it optimized

  for (const auto& [method, g] : p.methods) {
    IRGraph opt = run_phases(g, phases);
    Program po = p;
    po.methods[method] = opt;
    optimized.emplace(method, std::move(po));

    for (const Golden& gold : p.goldens) {
      if (gold.method != method || gold.phases != phases) continue;
      EquivalenceResult eq = structurally_equivalent(opt, gold.graph);
      DiffRow row;
      row.method = method;
      row.source = "golden";
      row.expected = "structurally equivalent to golden";
      row.actual = eq ? "structurally equivalent" : "differs";
      row.verdict = eq ? DiffRow::Verdict::Pass : DiffRow::Verdict::Fail;
      row.detail = eq.first_difference;
      report.rows.push_back(std::move(row));
    }

    std::vector<std::vector<Value>> inputs;
    auto add_input = [&](const std::vector<Value>& args) {
      if (std::find(inputs.begin(), inputs.end(), args) == inputs.end())
        inputs.push_back(args);
    };
    for (const TestVector& t : p.tests)
      if (t.method == method) add_input(t.args);

    std::map<std::uint32_t, unsigned> param_bits;
    for (const auto& [id, e] : g.nodes())
      if (e.node.kind == NodeKind::Parameter)
        param_bits[e.node.param_index()] =
            e.stamp.is_integer() ? e.stamp.bits() : 32u;
    std::size_t nparams = param_bits.empty() ? 0 : param_bits.rbegin()->first + 1;
    if (nparams <= 4) {
      std::vector<std::vector<Value>> tuples{{}};
      for (std::size_t i = 0; i < nparams; ++i) {
        unsigned bits = param_bits.count(static_cast<std::uint32_t>(i))
                            ? param_bits[static_cast<std::uint32_t>(i)]
                            : 32u;
        std::vector<std::vector<Value>> next;
        for (const auto& prefix : tuples)
          for (std::int64_t v : boundary_values(bits)) {
            auto t = prefix;
            t.push_back(Value::of(bits, v));
            next.push_back(std::move(t));
          }
        tuples = std::move(next);
      }
      for (auto& t : tuples) add_input(t);
    }
    for (auto& args : inputs) tasks.push_back({method, std::move(args)});
  }

  std::vector<DiffRow> semantic_rows(tasks.size());
  harness_detail::for_each_task(tasks.size(), options, [&](std::size_t i) {
    const SemanticTask& t = tasks[i];
    RunResult before = run(p, t.method, t.args, options.step_limit);
    RunResult after = run(optimized.at(t.method), t.method, t.args, options.step_limit);
    DiffRow row;
    row.method = t.method;
    row.args = t.args;
    row.source = "pre-optimization";
    row.expected = harness_detail::render(before);
    row.actual = harness_detail::render(after);
    row.verdict = row.expected == row.actual ? DiffRow::Verdict::Pass
                                             : DiffRow::Verdict::Fail;
    semantic_rows[i] = std::move(row);
  });
  for (auto& r : semantic_rows) report.rows.push_back(std::move(r));
  report.sort();
  return report;
}

}  // namespace sonir
