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

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run against the shipped corpus files (directory from
// argv[1], default the build-time corpus path).

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sonir/sonir.hpp"
#include "test_util.hpp"

using namespace sonir;

namespace {

std::string g_corpus_dir = SONIR_CORPUS_DIR;

Program load(const std::string& name) {
  return parse_program(sonir_test::read_file(g_corpus_dir + "/" + name + ".json"));
}

std::vector<std::pair<std::string, Program>> load_corpus() {
  std::vector<std::pair<std::string, Program>> out;
  for (const char* name : {"left_shift32", "test1_initial", "test1_final",
                           "nested_negation", "loop_sum", "static_field", "helper_call"})
    out.emplace_back(name, load(name));
  return out;
}

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  std::string result() const {
    if (failures_.empty()) return "";
    std::string out = failures_.front();
    if (failures_.size() > 1)
      out += " (+" + std::to_string(failures_.size() - 1) + " more)";
    return out;
  }

 private:
  std::vector<std::string> failures_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: operator differential suite ------------------------------

std::string criterion_operator_difftests() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<NodeKind> binaries = {
      NodeKind::Add,       NodeKind::Sub,        NodeKind::Mul,
      NodeKind::SignedDiv, NodeKind::SignedRem,  NodeKind::And,
      NodeKind::Or,        NodeKind::Xor,        NodeKind::LeftShift,
      NodeKind::RightShift, NodeKind::UnsignedRightShift};
  const std::vector<NodeKind> unaries = {NodeKind::Negate, NodeKind::Not, NodeKind::Abs};
  std::size_t total = 0;
  for (unsigned bits : {32u, 64u}) {
    for (NodeKind op : binaries) {
      Program p = gen_op_tests(op, bits);
      std::size_t expect =
          (op == NodeKind::SignedDiv || op == NodeKind::SignedRem) ? 72u : 81u;
      c.require(p.tests.size() == expect,
                std::string(kind_name(op)) + std::to_string(bits) + ": expected " +
                    std::to_string(expect) + " tests, got " +
                    std::to_string(p.tests.size()));
      DiffReport r = run_difftest(p);
      c.require(r.all_passed() && r.passed() == p.tests.size(),
                std::string(kind_name(op)) + std::to_string(bits) + ": " + r.to_text());
      total += p.tests.size();
    }
    for (NodeKind op : unaries) {
      Program p = gen_op_tests(op, bits);
      c.require(p.tests.size() == 9u, std::string(kind_name(op)) + ": expected 9 tests");
      DiffReport r = run_difftest(p);
      c.require(r.all_passed(), std::string(kind_name(op)) + std::to_string(bits));
      total += p.tests.size();
    }
  }
  c.require(total == 1800, "expected 1800 tests total, got " + std::to_string(total));
  double secs = seconds_since(t0);
  c.require(secs < 10.0, "took " + std::to_string(secs) + "s (budget 10s)");
  return c.result();
}

// ---- criterion 2: Fig. 2 transcription --------------------------------------

std::string criterion_left_shift_corpus_file() {
  Check c;
  Program p = load("left_shift32");
  c.require(p.tests.size() == 3, "expected exactly 3 embedded tests");
  std::vector<TestVector> expect = {
      {"leftShiftNode32", {Value::of(32, 2), Value::of(32, 2)}, Value::of(32, 8)},
      {"leftShiftNode32", {Value::of(32, 1), Value::of(32, 2)}, Value::of(32, 4)},
      {"leftShiftNode32", {Value::of(32, 0), Value::of(32, 2)}, Value::of(32, 0)},
  };
  c.require(p.tests == expect, "embedded vectors differ from the documented three");
  DiffReport r = run_difftest(p);
  c.require(r.passed() == 3 && r.failed() == 0, r.to_text());
  return c.result();
}

// ---- criterion 3: conditional elimination reproduces the final graph --------

std::string criterion_test1_reproduction() {
  Check c;
  Program initial = load("test1_initial");
  Program final_p = load("test1_final");
  const IRGraph& g0 = initial.methods.at("test1");
  const IRGraph& gf = final_p.methods.at("test1");
  c.require(gf.nodes().size() == 20, "final graph should carry nodes 0..19");
  c.require(gf.contains(19) && gf.node(19).kind == NodeKind::Constant &&
                gf.node(19).constant() == Value::from_raw(1, 1),
            "final graph node 19 should be the 1-bit true constant");
  c.require(gf.node(13).ref("condition") == Ref{19},
            "final graph If 13 should reference node 19");
  IRGraph opt = conditional_elimination(g0);
  auto eq = structurally_equivalent(opt, gf);
  c.require(eq.equivalent, eq.first_difference);
  return c.result();
}

// ---- criterion 4: phase separation ------------------------------------------

std::string criterion_phase_separation() {
  Check c;
  for (const auto& [name, p] : load_corpus()) {
    for (const auto& [method, g] : p.methods) {
      IRGraph ce = conditional_elimination(g);
      for (const auto& [id, e] : g.nodes()) {
        if (!ce.contains(id)) {
          c.require(false, name + "/" + method + ": node " + std::to_string(id) +
                               " removed by conditional elimination");
          continue;
        }
        const IRNode& after = ce.node(id);
        c.require(after.kind == e.node.kind,
                  name + "/" + method + ": node kind changed");
        const auto& roles = e.node.info().roles;
        for (std::size_t i = 0; i < roles.size(); ++i)
          if (roles[i].edge == EdgeKind::Successor)
            c.require(e.node.slots[i] == after.slots[i],
                      name + "/" + method + ": successor edge changed on node " +
                          std::to_string(id));
      }
      for (const auto& [id, e] : ce.nodes())
        if (!g.contains(id))
          c.require(e.node.kind == NodeKind::Constant,
                    name + "/" + method + ": non-constant node added");
    }
  }
  // The branch disappears only under canonicalization.
  Program initial = load("test1_initial");
  IRGraph ce = conditional_elimination(initial.methods.at("test1"));
  auto count_ifs = [](const IRGraph& g) {
    std::size_t n = 0;
    for (const auto& [id, e] : g.nodes())
      if (e.node.kind == NodeKind::If) ++n;
    return n;
  };
  c.require(count_ifs(ce) == 2, "conditional elimination must keep both Ifs");
  IRGraph canon = canonicalize(ce);
  c.require(count_ifs(canon) == 1, "canonicalization must remove the folded If");
  bool merges_left = false;
  for (const auto& [id, e] : canon.nodes())
    if (e.node.kind == NodeKind::Merge) merges_left = true;
  c.require(!merges_left, "the single-predecessor merge must collapse");
  return c.result();
}

// ---- criterion 5: commutation over the corpus -------------------------------

std::string criterion_commutation() {
  Check c;
  for (const auto& [name, p] : load_corpus()) {
    for (auto phases :
         {std::vector<Phase>{Phase::ConditionalElimination},
          std::vector<Phase>{Phase::Canonicalize},
          std::vector<Phase>{Phase::ConditionalElimination, Phase::Canonicalize}}) {
      DiffReport r = run_commutation_test(p, phases);
      c.require(r.all_passed() && r.skipped() == 0, name + ": " + r.to_text());
    }
  }
  return c.result();
}

// ---- criterion 6: permutation invariance and mutation sensitivity -----------

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
    NodeKind k = g.node(id).kind;
    if (k == NodeKind::Add) {
      out.node_mut(id).kind = NodeKind::Sub;
      return out;
    }
    if (k == NodeKind::IntegerLessThan) {
      out.node_mut(id).kind = NodeKind::IntegerEquals;
      return out;
    }
    if (k == NodeKind::LeftShift) {
      out.node_mut(id).kind = NodeKind::RightShift;
      return out;
    }
  }
  NodeId id = *reachable(g).begin();
  out.put(id, g.node(id), Stamp::integer(32, -7, 7));
  return out;
}

std::string criterion_permutation_invariance() {
  Check c;
  std::mt19937_64 rng(20260809);
  for (const auto& [name, p] : load_corpus()) {
    for (const auto& [method, g] : p.methods) {
      std::vector<NodeId> ids;
      for (const auto& [id, e] : g.nodes()) ids.push_back(id);
      for (int i = 0; i < 100; ++i) {
        std::vector<NodeId> shuffled = ids;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::map<NodeId, NodeId> perm;
        for (std::size_t k = 0; k < ids.size(); ++k)
          perm[ids[k]] = shuffled[k] + 1000;
        auto eq = structurally_equivalent(g, permute_ids(g, perm));
        c.require(eq.equivalent,
                  name + "/" + method + " permutation " + std::to_string(i) + ": " +
                      eq.first_difference);
        if (!eq.equivalent) return c.result();
      }
      c.require(!structurally_equivalent(g, mutate_one_node(g)).equivalent,
                name + "/" + method + ": mutation not detected");
    }
  }
  return c.result();
}

// ---- criterion 7: stamp soundness, exhaustive at 4 bits ----------------------

std::string criterion_stamp_soundness() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  for (int alo = -8; alo <= 7; ++alo)
    for (int ahi = alo; ahi <= 7; ++ahi)
      for (int blo = -8; blo <= 7; ++blo)
        for (int bhi = blo; bhi <= 7; ++bhi) {
          Stamp a = Stamp::integer(4, alo, ahi);
          Stamp b = Stamp::integer(4, blo, bhi);
          for (CompareKind op : {CompareKind::LessThan, CompareKind::Equals}) {
            TriState verdict = fold_compare(op, a, b);
            IRNode cond = op == CompareKind::LessThan ? make::integer_less_than(1, 2)
                                                      : make::integer_equals(1, 2);
            auto lookup = [&](NodeId n) -> std::optional<Stamp> {
              return n == 1 ? a : b;
            };
            for (bool polarity : {true, false}) {
              Refinement r = refine_by_condition(cond, polarity, lookup, lookup);
              Stamp ra = a, rb = b;
              for (const StampUpdate& u : r.updates) (u.node == 1 ? ra : rb) = u.stamp;
              bool any = false;
              for (int x = alo; x <= ahi; ++x)
                for (int y = blo; y <= bhi; ++y) {
                  bool concrete = op == CompareKind::LessThan ? x < y : x == y;
                  if (verdict == TriState::AlwaysTrue && !concrete)
                    c.require(false, "fold_compare claimed AlwaysTrue falsely");
                  if (verdict == TriState::AlwaysFalse && concrete)
                    c.require(false, "fold_compare claimed AlwaysFalse falsely");
                  if (concrete != polarity) continue;
                  any = true;
                  if (!ra.contains(x) || !rb.contains(y))
                    c.require(false, "refinement excluded a satisfying pair");
                }
              if (r.contradiction && any)
                c.require(false, "refinement claimed contradiction falsely");
            }
          }
        }
  double secs = seconds_since(t0);
  c.require(secs < 60.0, "took " + std::to_string(secs) + "s (budget 60s)");
  return c.result();
}

// ---- criterion 8: masking invariant under random inputs ----------------------

std::string criterion_masking_invariant() {
  Check c;
  std::mt19937_64 rng(8);
  const std::vector<unsigned> widths = {1, 8, 16, 32, 64};
  auto masked = [](const Value& v) {
    return v.is_undef() || (v.raw() & ~width_mask(v.bits())) == 0;
  };
  constexpr int kRounds = 10000;

  for (BinArith op : {BinArith::Add, BinArith::Sub, BinArith::Mul, BinArith::And,
                      BinArith::Or, BinArith::Xor}) {
    for (int i = 0; i < kRounds; ++i) {
      unsigned bits = widths[rng() % widths.size()];
      Value r = eval_binary(op, Value::from_raw(bits, rng()), Value::from_raw(bits, rng()));
      if (!masked(r)) return "binary op violated the masking invariant";
    }
  }
  for (DivKind op : {DivKind::Div, DivKind::Rem}) {
    for (int i = 0; i < kRounds; ++i) {
      unsigned bits = widths[rng() % widths.size()];
      auto r = eval_divrem(op, Value::from_raw(bits, rng()), Value::from_raw(bits, rng()));
      if (r && !masked(*r)) return "division violated the masking invariant";
    }
  }
  for (ShiftKind op : {ShiftKind::Left, ShiftKind::ArithRight, ShiftKind::LogicRight}) {
    for (int i = 0; i < kRounds; ++i) {
      unsigned bits = rng() % 2 ? 32 : 64;
      Value r = eval_shift(op, Value::from_raw(bits, rng()),
                           Value::from_raw(widths[rng() % widths.size()], rng()));
      if (!masked(r)) return "shift violated the masking invariant";
    }
  }
  for (UnaryArith op : {UnaryArith::Negate, UnaryArith::Not, UnaryArith::Abs}) {
    for (int i = 0; i < kRounds; ++i) {
      unsigned bits = widths[rng() % widths.size()];
      if (!masked(eval_unary(op, Value::from_raw(bits, rng()))))
        return "unary op violated the masking invariant";
    }
  }
  for (CompareKind op : {CompareKind::Equals, CompareKind::LessThan}) {
    for (int i = 0; i < kRounds; ++i) {
      unsigned bits = widths[rng() % widths.size()];
      Value r = eval_compare(op, Value::from_raw(bits, rng()), Value::from_raw(bits, rng()));
      if (!masked(r) || r.raw() > 1) return "comparison violated the masking invariant";
    }
  }
  for (int i = 0; i < kRounds; ++i) {
    unsigned in = widths[rng() % widths.size()];
    unsigned out = widths[rng() % widths.size()];
    Value a = Value::from_raw(in, rng());
    ConvertKind op = in < out ? (rng() % 2 ? ConvertKind::SignExtend : ConvertKind::ZeroExtend)
                              : ConvertKind::Narrow;
    if (!masked(eval_convert(op, in, out, a)))
      return "conversion violated the masking invariant";
  }
  return c.result();
}

// ---- criterion 9: named regressions ------------------------------------------

std::string criterion_named_regressions() {
  Check c;
  auto i32v = [](std::int64_t v) { return Value::of(32, v); };

  c.require(eval_divrem(DivKind::Div, i32v(-7), i32v(2))->as_signed() == -3,
            "signed division");
  c.require(*eval_divrem(DivKind::Div, i32v(min_signed(32)), i32v(-1)) ==
                i32v(min_signed(32)),
            "MIN32 / -1");
  c.require(*eval_divrem(DivKind::Div, Value::of(64, min_signed(64)), Value::of(64, -1)) ==
                Value::of(64, min_signed(64)),
            "MIN64 / -1");

  Value x = eval_binary(BinArith::Xor, i32v(-1), i32v(1));
  c.require((x.raw() & ~width_mask(32)) == 0 && x == Value::from_raw(32, 4294967294u),
            "xor masking");

  c.require(eval_shift(ShiftKind::ArithRight, i32v(-8), i32v(1)) == i32v(-4),
            "right shift negative");
  c.require(eval_shift(ShiftKind::ArithRight, i32v(8), i32v(1)) == i32v(4),
            "right shift positive");

  {
    Program p = gen_op_tests(NodeKind::SignedDiv, 32);
    ExecState s;
    s.params = {i32v(6), i32v(2)};
    bool threw = false;
    try {
      eval_expr(p.methods.at("signedDivNode32"), s, 4);
    } catch (const EvalError&) {
      threw = true;
    }
    c.require(threw, "signed div control-flow ordering");
  }

  c.require(eval_compare(CompareKind::LessThan, i32v(-1), i32v(1)) == Value::from_raw(1, 1),
            "signed less-than at 32 bits");
  c.require(eval_compare(CompareKind::LessThan, i32v(0), i32v(-1)) == Value::from_raw(1, 0),
            "less-than over significant bits");
  c.require(eval_unary(UnaryArith::Abs, i32v(-5)) == i32v(5), "abs over significant bits");
  c.require(eval_convert(ConvertKind::SignExtend, 8, 32, Value::of(8, 255)) == i32v(-1),
            "sign extraction");

  {
    IRGraph g = IRGraph::build({
        {0, make::start(3, 5), Stamp::void_stamp()},
        {1, make::parameter(0), unrestricted(32)},
        {2, make::parameter(1), unrestricted(64)},
        {3, make::frame_state(), Stamp::illegal()},
        {4, make::left_shift(1, 2), unrestricted(32)},
        {5, make::ret(4), unrestricted(32)},
    });
    Program p;
    p.methods["shl"] = g;
    RunResult r = run(p, "shl", {i32v(1), Value::of(64, 33)});
    c.require(std::holds_alternative<Value>(r) && std::get<Value>(r) == i32v(2),
              "shift unary promotion");
  }
  {
    IRGraph g = IRGraph::build({
        {0, make::start(3, 5), Stamp::void_stamp()},
        {1, make::parameter(0), Stamp::integer(8, -128, 127)},
        {3, make::frame_state(), Stamp::illegal()},
        {5, make::ret(1), unrestricted(32)},
    });
    Program p;
    p.methods["widen"] = g;
    RunResult r = run(p, "widen", {Value::of(8, 200)});
    c.require(std::holds_alternative<Value>(r) && std::get<Value>(r) == i32v(-56),
              "small parameter widening");
  }
  {
    IRGraph g = IRGraph::build({
        {0, make::start(3, 5), Stamp::void_stamp()},
        {1, make::parameter(0), unrestricted(32)},
        {2, make::parameter(1), unrestricted(32)},
        {3, make::frame_state(), Stamp::illegal()},
        {4, make::integer_equals(1, 2), Stamp::void_stamp()},
        {5, make::ret(4), unrestricted(32)},
    });
    Program p;
    p.methods["eq"] = g;
    RunResult r = run(p, "eq", {i32v(7), i32v(7)});
    c.require(std::holds_alternative<Value>(r) && std::get<Value>(r) == i32v(1),
              "boolean return coercion");
  }
  return c.result();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_corpus_dir = argv[1];

  struct Criterion {
    int number;
    std::string title;
    std::function<std::string()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "operator differential suite (1800 oracle-checked tests, < 10 s)",
       criterion_operator_difftests},
      {2, "left-shift corpus file passes its three embedded tests",
       criterion_left_shift_corpus_file},
      {3, "conditional elimination reproduces the transcribed final graph",
       criterion_test1_reproduction},
      {4, "conditional elimination never touches successor edges",
       criterion_phase_separation},
      {5, "commutation checks pass over the whole corpus", criterion_commutation},
      {6, "structural equivalence: permutation-invariant, mutation-sensitive",
       criterion_permutation_invariance},
      {7, "stamp folding and refinement sound (exhaustive at 4 bits, < 60 s)",
       criterion_stamp_soundness},
      {8, "masking invariant holds for 10^4 random applications per operator",
       criterion_masking_invariant},
      {9, "named regression checks for the operator and semantics bug list",
       criterion_named_regressions},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::cout << "PASS criterion " << c.number << ": " << c.title << "\n";
    } else {
      std::cout << "FAIL criterion " << c.number << ": " << c.title << " -- " << detail
                << "\n";
      ++failures;
    }
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
