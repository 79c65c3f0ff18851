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
#include <stdexcept>
#include <string>

namespace sonir {

/// Widths a program file may use for values and integer stamps.
inline constexpr bool is_program_width(unsigned bits) {
  return bits == 1 || bits == 8 || bits == 16 || bits == 32 || bits == 64;
}

inline constexpr std::uint64_t width_mask(unsigned bits) {
  return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

/// A runtime value: undefined, or an integer of a given significant width
/// stored in a 64-bit payload whose bits at positions >= width are zero.
class Value {
 public:
  Value() = default;  // undefined

  static Value undef() { return Value{}; }

  /// Wraps n modulo 2^bits into the low `bits` bits. Accepts any width in
  /// [1,64]; program files are restricted further by the parser.
  static Value of(unsigned bits, std::int64_t n) {
    check_bits(bits);
    return Value(bits, static_cast<std::uint64_t>(n) & width_mask(bits));
  }

  static Value from_raw(unsigned bits, std::uint64_t raw) {
    check_bits(bits);
    return Value(bits, raw & width_mask(bits));
  }

  bool is_undef() const { return !defined_; }
  bool is_int() const { return defined_; }
  unsigned bits() const { return bits_; }
  std::uint64_t raw() const { return raw_; }
  bool is_nonzero() const { return defined_ && raw_ != 0; }

  /// Two's-complement interpretation of the low `bits` bits.
  std::int64_t as_signed() const {
    if (bits_ >= 64) return static_cast<std::int64_t>(raw_);
    if (raw_ >> (bits_ - 1) & 1)
      return static_cast<std::int64_t>(raw_ | ~width_mask(bits_));
    return static_cast<std::int64_t>(raw_);
  }

  std::string to_string() const {
    if (!defined_) return "undef";
    return "int" + std::to_string(bits_) + "(" + std::to_string(as_signed()) + ")";
  }

  friend bool operator==(const Value&, const Value&) = default;

 private:
  Value(unsigned bits, std::uint64_t raw) : defined_(true), bits_(bits), raw_(raw) {}

  static void check_bits(unsigned bits) {
    if (bits < 1 || bits > 64) throw std::invalid_argument("unsupported bit count");
  }

  bool defined_ = false;
  unsigned bits_ = 0;
  std::uint64_t raw_ = 0;
};

enum class BinArith { Add, Sub, Mul, And, Or, Xor };
enum class DivKind { Div, Rem };
enum class ShiftKind { Left, ArithRight, LogicRight };
enum class UnaryArith { Negate, Not, Abs };
enum class CompareKind { Equals, LessThan };
enum class ConvertKind { SignExtend, ZeroExtend, Narrow };

/// Java binary numeric promotion target: 64 if either operand is 64-bit,
/// else 32.
inline constexpr unsigned promoted_width(unsigned a_bits, unsigned b_bits) {
  return (a_bits == 64 || b_bits == 64) ? 64u : 32u;
}

/// Sign-extends v to `target` bits when narrower; identity otherwise.
inline Value widen_to(const Value& v, unsigned target) {
  if (!v.is_int() || v.bits() >= target) return v;
  return Value::of(target, v.as_signed());
}

/// Wrapping arithmetic and bitwise ops on equal-width operands. Width
/// mismatch or an undefined operand yields undef.
inline Value eval_binary(BinArith op, const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int() || a.bits() != b.bits()) return Value::undef();
  const unsigned bits = a.bits();
  std::uint64_t r = 0;
  switch (op) {
    case BinArith::Add: r = a.raw() + b.raw(); break;
    case BinArith::Sub: r = a.raw() - b.raw(); break;
    case BinArith::Mul: r = a.raw() * b.raw(); break;
    case BinArith::And: r = a.raw() & b.raw(); break;
    case BinArith::Or: r = a.raw() | b.raw(); break;
    case BinArith::Xor: r = a.raw() ^ b.raw(); break;
  }
  return Value::from_raw(bits, r);
}

/// Java signed division/remainder: quotient truncates toward zero, MIN/-1
/// wraps to MIN. nullopt signals division by zero (distinct from undef).
inline std::optional<Value> eval_divrem(DivKind op, const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int() || a.bits() != b.bits()) return Value::undef();
  const unsigned bits = a.bits();
  const std::int64_t sa = a.as_signed();
  const std::int64_t sb = b.as_signed();
  if (sb == 0) return std::nullopt;
  if (sb == -1) {
    // Covers the one overflowing case (MIN/-1) without UB in the host ops.
    if (op == DivKind::Div)
      return Value::from_raw(bits, 0 - static_cast<std::uint64_t>(sa));
    return Value::of(bits, 0);
  }
  return Value::of(bits, op == DivKind::Div ? sa / sb : sa % sb);
}

/// Shift with Java distance masking (5 low bits of the distance for 32-bit
/// left operands, 6 for 64-bit). Operand widths may differ; the result has
/// the left operand's width. ArithRight replicates the sign bit of the
/// significant width; LogicRight shifts zeros into the masked payload.
inline Value eval_shift(ShiftKind op, const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int()) return Value::undef();
  const unsigned bits = a.bits();
  const unsigned s =
      static_cast<unsigned>(b.as_signed()) & (bits == 64 ? 63u : 31u);
  switch (op) {
    case ShiftKind::Left: return Value::from_raw(bits, a.raw() << s);
    case ShiftKind::ArithRight: return Value::of(bits, a.as_signed() >> s);
    case ShiftKind::LogicRight: return Value::from_raw(bits, a.raw() >> s);
  }
  return Value::undef();
}

inline Value eval_unary(UnaryArith op, const Value& a) {
  if (!a.is_int()) return Value::undef();
  const unsigned bits = a.bits();
  switch (op) {
    case UnaryArith::Negate: return Value::from_raw(bits, 0 - a.raw());
    case UnaryArith::Not: return Value::from_raw(bits, ~a.raw());
    case UnaryArith::Abs:
      return a.as_signed() >= 0 ? a : Value::from_raw(bits, 0 - a.raw());
  }
  return Value::undef();
}

/// Comparisons over the significant bits only; LessThan is signed. Yields a
/// 1-bit value (1 = true, 0 = false).
inline Value eval_compare(CompareKind op, const Value& a, const Value& b) {
  if (!a.is_int() || !b.is_int() || a.bits() != b.bits()) return Value::undef();
  bool r = false;
  switch (op) {
    case CompareKind::Equals: r = a.raw() == b.raw(); break;
    case CompareKind::LessThan: r = a.as_signed() < b.as_signed(); break;
  }
  return Value::from_raw(1, r ? 1 : 0);
}

/// Width changes. The operand must match in_bits; SignExtend/ZeroExtend
/// require in_bits < out_bits and Narrow the reverse, else undef.
inline Value eval_convert(ConvertKind op, unsigned in_bits, unsigned out_bits,
                          const Value& a) {
  if (!a.is_int() || a.bits() != in_bits) return Value::undef();
  if (op == ConvertKind::Narrow ? in_bits <= out_bits : in_bits >= out_bits)
    return Value::undef();
  switch (op) {
    case ConvertKind::SignExtend: return Value::of(out_bits, a.as_signed());
    case ConvertKind::ZeroExtend: return Value::from_raw(out_bits, a.raw());
    case ConvertKind::Narrow: return Value::from_raw(out_bits, a.raw());
  }
  return Value::undef();
}

}  // namespace sonir
