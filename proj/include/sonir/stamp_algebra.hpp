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
#include <functional>
#include <optional>
#include <vector>

#include "sonir/node.hpp"
#include "sonir/stamp.hpp"

namespace sonir {

enum class TriState { AlwaysTrue, AlwaysFalse, Unknown };

/// The full signed range of a width.
inline Stamp unrestricted(unsigned bits) {
  return Stamp::integer(bits, min_signed(bits), max_signed(bits));
}

/// The singleton range containing exactly the signed value of v.
inline Stamp constant_stamp(const Value& v) {
  return Stamp::integer(v.bits(), v.as_signed(), v.as_signed());
}

/// Range intersection; nullopt when empty. Both stamps must be integer
/// stamps of equal width.
inline std::optional<Stamp> intersect(const Stamp& a, const Stamp& b) {
  if (!a.is_integer() || !b.is_integer() || a.bits() != b.bits())
    throw std::invalid_argument("intersect requires integer stamps of equal width");
  std::int64_t lo = std::max(a.lo(), b.lo());
  std::int64_t hi = std::min(a.hi(), b.hi());
  if (lo > hi) return std::nullopt;
  return Stamp::integer(a.bits(), lo, hi);
}

/// Decides a comparison from ranges alone. Sound, not complete: Unknown
/// whenever the ranges admit both outcomes (or the stamps are unusable).
inline TriState fold_compare(CompareKind op, const Stamp& a, const Stamp& b) {
  if (!a.is_integer() || !b.is_integer() || a.bits() != b.bits())
    return TriState::Unknown;
  switch (op) {
    case CompareKind::LessThan:
      if (a.hi() < b.lo()) return TriState::AlwaysTrue;
      if (a.lo() >= b.hi()) return TriState::AlwaysFalse;
      return TriState::Unknown;
    case CompareKind::Equals:
      if (a.is_singleton() && b.is_singleton() && a.lo() == b.lo())
        return TriState::AlwaysTrue;
      if (a.hi() < b.lo() || b.hi() < a.lo()) return TriState::AlwaysFalse;
      return TriState::Unknown;
  }
  return TriState::Unknown;
}

struct StampUpdate {
  NodeId node = 0;
  Stamp stamp;
  friend bool operator==(const StampUpdate&, const StampUpdate&) = default;
};

/// Result of refining by a branch condition. `contradiction` means the
/// refined range of some operand is empty: the branch is unreachable under
/// the known stamps (callers may fold the condition on that basis).
struct Refinement {
  std::vector<StampUpdate> updates;
  bool contradiction = false;
};

/// Resolves a node to an integer stamp; nullopt when none is known.
using StampLookup = std::function<std::optional<Stamp>(NodeId)>;

/// Refines the stamps of a comparison's operands under the assumption that
/// the condition holds (polarity true) or fails (polarity false).
///
/// Constraint bounds come from `current` (the best known stamps); the stamp
/// being narrowed comes from `base`. Passing the node's original stamp as
/// `base` re-derives from scratch on every branch; passing `current` for
/// both narrows from the previous refinement instead. The two modes diverge
/// on chains of refinements of the same node.
inline Refinement refine_by_condition(const IRNode& cond, bool polarity,
                                      const StampLookup& current,
                                      const StampLookup& base) {
  Refinement out;
  if (cond.kind != NodeKind::IntegerEquals && cond.kind != NodeKind::IntegerLessThan)
    return out;
  Ref xr = cond.ref("x");
  Ref yr = cond.ref("y");
  if (!xr || !yr) return out;
  NodeId x = *xr, y = *yr;

  if (x == y) {
    // x < x is unsatisfiable; x == x is vacuous.
    bool lt = cond.kind == NodeKind::IntegerLessThan;
    out.contradiction = (lt && polarity) || (!lt && !polarity);
    return out;
  }

  auto cx = current(x);
  auto cy = current(y);
  auto bx = base(x);
  auto by = base(y);
  if (!cx || !cy || !bx || !by) return out;
  if (!cx->is_integer() || !cy->is_integer() || cx->bits() != cy->bits()) return out;
  const unsigned bits = cx->bits();

  auto apply = [&](NodeId n, const Stamp& b, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
      out.contradiction = true;
      return;
    }
    auto refined = intersect(b, Stamp::integer(bits, lo, hi));
    if (!refined) {
      out.contradiction = true;
      return;
    }
    out.updates.push_back({n, *refined});
  };

  if (cond.kind == NodeKind::IntegerLessThan) {
    if (polarity) {
      // x < y: x <= hi(y)-1, y >= lo(x)+1.
      if (cy->hi() == min_signed(bits) || cx->lo() == max_signed(bits)) {
        out.contradiction = true;
        return out;
      }
      apply(x, *bx, cx->lo(), cy->hi() - 1);
      apply(y, *by, cx->lo() + 1, cy->hi());
    } else {
      // x >= y: both land in [lo(y), hi(x)].
      apply(x, *bx, cy->lo(), cx->hi());
      apply(y, *by, cy->lo(), cx->hi());
    }
  } else {
    if (polarity) {
      // x == y: both shrink to the pairwise intersection.
      apply(x, *bx, cy->lo(), cy->hi());
      apply(y, *by, cx->lo(), cx->hi());
    }
    // x != y carves a hole out of a range, which intervals cannot express.
  }
  if (out.contradiction) out.updates.clear();
  return out;
}

}  // namespace sonir
