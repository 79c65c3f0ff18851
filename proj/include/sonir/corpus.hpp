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

#include <string>
#include <utility>
#include <vector>

#include "sonir/program.hpp"
#include "sonir/stamp_algebra.hpp"

// The programs shipped under corpus/. Each is defined here once; the JSON
// files are generated from these builders and the test suites check the
// files stay in sync.

namespace sonir::corpus {

namespace corpus_detail {

inline Stamp i32() { return unrestricted(32); }
inline Stamp c32(std::int64_t v) { return Stamp::integer(32, v, v); }
inline Value v32(std::int64_t v) { return Value::of(32, v); }

}  // namespace corpus_detail

/// static int leftShiftNode32(int a, int b) { return a << b; }
inline IRGraph left_shift32_graph() {
  using namespace corpus_detail;
  return IRGraph::build({
      {0, make::start(3, 5), Stamp::void_stamp()},
      {1, make::parameter(0), i32()},
      {2, make::parameter(1), i32()},
      {3, make::frame_state(), Stamp::illegal()},
      {4, make::left_shift(1, 2), i32()},
      {5, make::ret(4), i32()},
  });
}

inline Program left_shift32() {
  using namespace corpus_detail;
  Program p;
  p.methods["leftShiftNode32"] = left_shift32_graph();
  p.tests = {
      {"leftShiftNode32", {v32(2), v32(2)}, v32(8)},
      {"leftShiftNode32", {v32(1), v32(2)}, v32(4)},
      {"leftShiftNode32", {v32(0), v32(2)}, v32(0)},
  };
  return p;
}

/// int test1(int a, int b) { if (a > b) { if (a > b) return 1; } return 2; }
/// Both Ifs share condition node 4 (b < a).
inline IRGraph test1_initial_graph() {
  using namespace corpus_detail;
  return IRGraph::build({
      {0, make::start(3, 7), Stamp::void_stamp()},
      {1, make::parameter(0), i32()},
      {2, make::parameter(1), i32()},
      {3, make::frame_state(), Stamp::illegal()},
      {4, make::integer_less_than(2, 1), Stamp::void_stamp()},
      {5, make::begin(8), Stamp::void_stamp()},
      {6, make::begin(13), Stamp::void_stamp()},
      {7, make::if_node(4, 6, 5), Stamp::void_stamp()},
      {8, make::end(), Stamp::void_stamp()},
      {9, make::merge({8, 10}, 16, 18), Stamp::void_stamp()},
      {10, make::end(), Stamp::void_stamp()},
      {11, make::begin(15), Stamp::void_stamp()},
      {12, make::begin(10), Stamp::void_stamp()},
      {13, make::if_node(4, 11, 12), Stamp::void_stamp()},
      {14, make::constant(v32(1)), c32(1)},
      {15, make::ret(14), Stamp::void_stamp()},
      {16, make::frame_state(), Stamp::illegal()},
      {17, make::constant(v32(2)), c32(2)},
      {18, make::ret(17), Stamp::void_stamp()},
  });
}

/// test1 after conditional elimination: the inner If's condition is the new
/// constant-true node 19.
inline IRGraph test1_final_graph() {
  IRGraph g = test1_initial_graph();
  g.put(19, make::constant(Value::from_raw(1, 1)), Stamp::void_stamp());
  g.node_mut(13).set_ref("condition", 19);
  return g;
}

inline std::vector<TestVector> test1_tests(const std::string& method) {
  using namespace corpus_detail;
  return {
      {method, {v32(5), v32(1)}, v32(1)},
      {method, {v32(1), v32(5)}, v32(2)},
      {method, {v32(2), v32(2)}, v32(2)},
  };
}

inline Program test1_initial() {
  Program p;
  p.methods["test1"] = test1_initial_graph();
  p.tests = test1_tests("test1");
  p.goldens.push_back({"test1", {Phase::ConditionalElimination}, test1_final_graph()});
  return p;
}

inline Program test1_final() {
  Program p;
  p.methods["test1"] = test1_final_graph();
  p.tests = test1_tests("test1");
  return p;
}

/// int nestedNegation(int a, int b) {
///   if (a < b) { if (b < a) return 1; return 2; }
///   return 3;
/// }
/// The inner condition is the mirror of the outer one and is always false
/// under it.
inline IRGraph nested_negation_graph() {
  using namespace corpus_detail;
  return IRGraph::build({
      {0, make::start(3, 7), Stamp::void_stamp()},
      {1, make::parameter(0), i32()},
      {2, make::parameter(1), i32()},
      {3, make::frame_state(), Stamp::illegal()},
      {4, make::integer_less_than(1, 2), Stamp::void_stamp()},
      {5, make::begin(8), Stamp::void_stamp()},
      {6, make::begin(10), Stamp::void_stamp()},
      {7, make::if_node(4, 6, 5), Stamp::void_stamp()},
      {8, make::ret(9), Stamp::void_stamp()},
      {9, make::constant(v32(3)), c32(3)},
      {10, make::if_node(11, 12, 14), Stamp::void_stamp()},
      {11, make::integer_less_than(2, 1), Stamp::void_stamp()},
      {12, make::begin(13), Stamp::void_stamp()},
      {13, make::ret(16), Stamp::void_stamp()},
      {14, make::begin(15), Stamp::void_stamp()},
      {15, make::ret(17), Stamp::void_stamp()},
      {16, make::constant(v32(1)), c32(1)},
      {17, make::constant(v32(2)), c32(2)},
  });
}

inline IRGraph nested_negation_final_graph() {
  IRGraph g = nested_negation_graph();
  g.put(18, make::constant(Value::from_raw(1, 0)), Stamp::void_stamp());
  g.node_mut(10).set_ref("condition", 18);
  return g;
}

inline Program nested_negation() {
  using namespace corpus_detail;
  Program p;
  p.methods["nestedNegation"] = nested_negation_graph();
  p.tests = {
      {"nestedNegation", {v32(1), v32(5)}, v32(2)},
      {"nestedNegation", {v32(5), v32(1)}, v32(3)},
      {"nestedNegation", {v32(2), v32(2)}, v32(3)},
  };
  p.goldens.push_back(
      {"nestedNegation", {Phase::ConditionalElimination}, nested_negation_final_graph()});
  return p;
}

/// int loopSum(int n) {
///   int m = n & 7, s = 0;
///   for (int i = 0; i < m; i++) s += i;
///   return s;
/// }
inline IRGraph loop_sum_graph() {
  using namespace corpus_detail;
  return IRGraph::build({
      {0, make::start(3, 4), Stamp::void_stamp()},
      {1, make::parameter(0), i32()},
      {2, make::constant(v32(0)), c32(0)},
      {3, make::frame_state(), Stamp::illegal()},
      {4, make::end(), Stamp::void_stamp()},
      {5, make::loop_begin({4, 15}, 9), Stamp::void_stamp()},
      {6, make::value_phi(5, {2, 13}), i32()},   // s
      {7, make::value_phi(5, {2, 14}), i32()},   // i
      {8, make::integer_less_than(7, 16), Stamp::void_stamp()},
      {9, make::if_node(8, 10, 11), Stamp::void_stamp()},
      {10, make::begin(15), Stamp::void_stamp()},
      {11, make::loop_exit(5, 12), Stamp::void_stamp()},
      {12, make::ret(6), Stamp::void_stamp()},
      {13, make::add(6, 7), i32()},
      {14, make::add(7, 17), i32()},
      {15, make::loop_end(5), Stamp::void_stamp()},
      {16, make::bit_and(1, 18), i32()},
      {17, make::constant(v32(1)), c32(1)},
      {18, make::constant(v32(7)), c32(7)},
  });
}

inline Program loop_sum() {
  using namespace corpus_detail;
  Program p;
  p.methods["loopSum"] = loop_sum_graph();
  p.tests = {
      {"loopSum", {v32(0)}, v32(0)},
      {"loopSum", {v32(7)}, v32(21)},
      {"loopSum", {v32(-1)}, v32(21)},
      {"loopSum", {v32(10)}, v32(1)},
  };
  return p;
}

/// static int F = 5;
/// int getField() { return F; }
/// int storeAndLoad(int x) { F = x; return F + 1; }
inline Program static_field() {
  using namespace corpus_detail;
  Program p;
  p.methods["getField"] = IRGraph::build({
      {0, make::start(2, 3), Stamp::void_stamp()},
      {1, make::load_field("F"), i32()},
      {2, make::frame_state(), Stamp::illegal()},
      {3, make::ret(1), Stamp::void_stamp()},
  });
  p.methods["storeAndLoad"] = IRGraph::build({
      {0, make::start(3, 4), Stamp::void_stamp()},
      {1, make::parameter(0), i32()},
      {2, make::constant(v32(1)), c32(1)},
      {3, make::frame_state(), Stamp::illegal()},
      {4, make::store_field("F", 1, 5), Stamp::void_stamp()},
      {5, make::ret(6), Stamp::void_stamp()},
      {6, make::add(7, 2), i32()},
      {7, make::load_field("F"), i32()},
  });
  p.fields["F"] = v32(5);
  p.tests = {
      {"getField", {}, v32(5)},
      {"storeAndLoad", {v32(7)}, v32(8)},
  };
  return p;
}

/// int helper(int x) { return x * 2; }
/// int caller(int a, int b) { return helper(a) + b; }
inline Program helper_call() {
  using namespace corpus_detail;
  Program p;
  p.methods["caller"] = IRGraph::build({
      {0, make::start(3, 4), Stamp::void_stamp()},
      {1, make::parameter(0), i32()},
      {2, make::parameter(1), i32()},
      {3, make::frame_state(), Stamp::illegal()},
      {4, make::invoke("helper", {1}, 5), i32()},
      {5, make::ret(6), Stamp::void_stamp()},
      {6, make::add(4, 2), i32()},
  });
  p.methods["helper"] = IRGraph::build({
      {0, make::start(3, 4), Stamp::void_stamp()},
      {1, make::parameter(0), i32()},
      {2, make::constant(v32(2)), c32(2)},
      {3, make::frame_state(), Stamp::illegal()},
      {4, make::ret(5), Stamp::void_stamp()},
      {5, make::mul(1, 2), i32()},
  });
  p.tests = {
      {"caller", {v32(3), v32(4)}, v32(10)},
  };
  return p;
}

/// Every shipped corpus program with its file base name.
inline std::vector<std::pair<std::string, Program>> all() {
  return {
      {"left_shift32", left_shift32()},
      {"test1_initial", test1_initial()},
      {"test1_final", test1_final()},
      {"nested_negation", nested_negation()},
      {"loop_sum", loop_sum()},
      {"static_field", static_field()},
      {"helper_call", helper_call()},
  };
}

}  // namespace sonir::corpus
