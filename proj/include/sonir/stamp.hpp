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
#include <limits>
#include <stdexcept>
#include <string>

namespace sonir {

inline constexpr std::int64_t min_signed(unsigned bits) {
  return bits >= 64 ? std::numeric_limits<std::int64_t>::min()
                    : -(std::int64_t{1} << (bits - 1));
}

inline constexpr std::int64_t max_signed(unsigned bits) {
  return bits >= 64 ? std::numeric_limits<std::int64_t>::max()
                    : (std::int64_t{1} << (bits - 1)) - 1;
}

/// Static per-node type info: void, illegal, or an integer width with
/// inclusive signed bounds. Bounds always satisfy MIN(bits) <= lo <= hi <=
/// MAX(bits). Any width in [1,64] is representable; program files are
/// restricted to {1,8,16,32,64} by the parser and validator.
class Stamp {
 public:
  enum class Kind { Void, Illegal, Integer };

  Stamp() = default;  // void

  static Stamp void_stamp() { return Stamp{}; }

  static Stamp illegal() {
    Stamp s;
    s.kind_ = Kind::Illegal;
    return s;
  }

  static Stamp integer(unsigned bits, std::int64_t lo, std::int64_t hi) {
    if (bits < 1 || bits > 64) throw std::invalid_argument("unsupported bit count");
    if (lo > hi || lo < min_signed(bits) || hi > max_signed(bits))
      throw std::invalid_argument("stamp bounds out of range");
    Stamp s;
    s.kind_ = Kind::Integer;
    s.bits_ = bits;
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
  }

  Kind kind() const { return kind_; }
  bool is_integer() const { return kind_ == Kind::Integer; }
  unsigned bits() const { return bits_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

  bool contains(std::int64_t v) const {
    return kind_ == Kind::Integer && lo_ <= v && v <= hi_;
  }

  bool is_singleton() const { return kind_ == Kind::Integer && lo_ == hi_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Void: return "void";
      case Kind::Illegal: return "illegal";
      case Kind::Integer:
        return "int" + std::to_string(bits_) + "[" + std::to_string(lo_) +
               ".." + std::to_string(hi_) + "]";
    }
    return "?";
  }

  friend bool operator==(const Stamp&, const Stamp&) = default;

 private:
  Kind kind_ = Kind::Void;
  unsigned bits_ = 0;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
};

}  // namespace sonir
