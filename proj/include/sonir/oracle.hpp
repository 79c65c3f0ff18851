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
#include <optional>
#include <span>

// Reference semantics for the fixed-width integer operators, computed with
// exact 128-bit arithmetic and an explicit wrap after every operation. This
// header is deliberately self-contained (own operator enum, no includes
// from the rest of the library) so it forms an independent side of the
// differential pair.

namespace sonir::oracle {

enum class Op {
  Add,
  Sub,
  Mul,
  Div,
  Rem,
  And,
  Or,
  Xor,
  Shl,
  Shr,
  UShr,
  Negate,
  Not,
  Abs,
  Equals,
  LessThan,
};

inline constexpr bool is_unary(Op op) {
  return op == Op::Negate || op == Op::Not || op == Op::Abs;
}

namespace oracle_detail {

using Wide = __int128;
using UWide = unsigned __int128;

/// ((v + 2^(bits-1)) mod 2^bits) - 2^(bits-1): the signed representative of
/// v modulo 2^bits.
inline std::int64_t wrap(Wide v, unsigned bits) {
  const UWide modulus = UWide{1} << bits;
  const Wide half = Wide{1} << (bits - 1);
  UWide shifted = static_cast<UWide>(v + half) & (modulus - 1);
  return static_cast<std::int64_t>(static_cast<Wide>(shifted) - half);
}

/// The unsigned representative of v modulo 2^bits.
inline UWide unsigned_rep(Wide v, unsigned bits) {
  const UWide mask = (UWide{1} << bits) - 1;
  return static_cast<UWide>(v) & mask;
}

}  // namespace oracle_detail

/// Evaluates one operator over mathematical integers in the signed range of
/// `bits` (32 or 64 for the generated suites; any width in [2,64] works).
/// nullopt signals division by zero. Comparisons yield 0/1.
inline std::optional<std::int64_t> eval(Op op, unsigned bits,
                                        std::span<const std::int64_t> args) {
  using namespace oracle_detail;
  const Wide a = args[0];
  const Wide b = args.size() > 1 ? Wide{args[1]} : Wide{0};
  switch (op) {
    case Op::Add: return wrap(a + b, bits);
    case Op::Sub: return wrap(a - b, bits);
    case Op::Mul: return wrap(a * b, bits);
    case Op::Div:
      if (b == 0) return std::nullopt;
      return wrap(a / b, bits);  // 128-bit division truncates toward zero
    case Op::Rem:
      if (b == 0) return std::nullopt;
      return wrap(a % b, bits);
    case Op::And: return wrap(a & b, bits);
    case Op::Or: return wrap(a | b, bits);
    case Op::Xor: return wrap(a ^ b, bits);
    case Op::Shl: {
      unsigned s = static_cast<unsigned>(static_cast<UWide>(b) & (bits - 1));
      return wrap(a << s, bits);
    }
    case Op::Shr: {
      unsigned s = static_cast<unsigned>(static_cast<UWide>(b) & (bits - 1));
      return wrap(a >> s, bits);  // arithmetic shift: sign bits fill
    }
    case Op::UShr: {
      unsigned s = static_cast<unsigned>(static_cast<UWide>(b) & (bits - 1));
      return wrap(static_cast<Wide>(unsigned_rep(a, bits) >> s), bits);
    }
    case Op::Negate: return wrap(-a, bits);
    case Op::Not: return wrap(~a, bits);
    case Op::Abs: return wrap(a < 0 ? -a : a, bits);
    case Op::Equals: return a == b ? 1 : 0;
    case Op::LessThan: return a < b ? 1 : 0;
  }
  return std::nullopt;
}

}  // namespace sonir::oracle
