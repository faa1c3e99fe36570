// Copyright 2026 The gapcirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gapcirc {

/// Fixed-width little-endian bit string: bit 0 is the least significant.
class BitString {
 public:
  BitString() = default;

  explicit BitString(std::size_t width) : bits_(width, 0) {}

  BitString(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
      if (b != 0 && b != 1) throw std::invalid_argument("BitString: bits must be 0 or 1");
      bits_.push_back(static_cast<std::uint8_t>(b));
    }
  }

  /// The `width`-bit representation of `value`. Throws if it does not fit.
  static BitString from_integer(std::uint64_t value, std::size_t width) {
    if (width < 64 && (value >> width) != 0) {
      throw std::invalid_argument("BitString: value " + std::to_string(value) + " does not fit in " +
                                  std::to_string(width) + " bits");
    }
    BitString out(width);
    for (std::size_t j = 0; j < width && j < 64; ++j) out.bits_[j] = (value >> j) & 1U;
    return out;
  }

  /// Parses an LSB-first string of '0'/'1' characters.
  static BitString parse(std::string_view text) {
    BitString out(text.size());
    for (std::size_t j = 0; j < text.size(); ++j) {
      if (text[j] == '1') {
        out.bits_[j] = 1;
      } else if (text[j] != '0') {
        throw std::invalid_argument("BitString: unexpected character in '" + std::string(text) + "'");
      }
    }
    return out;
  }

  std::uint64_t to_integer() const {
    if (bits_.size() > 64) {
      for (std::size_t j = 64; j < bits_.size(); ++j) {
        if (bits_[j]) throw std::overflow_error("BitString: value exceeds 64 bits");
      }
    }
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < bits_.size() && j < 64; ++j) v |= std::uint64_t{bits_[j]} << j;
    return v;
  }

  std::size_t width() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  bool operator[](std::size_t j) const { return bits_.at(j) != 0; }
  void set(std::size_t j, bool value) { bits_.at(j) = value ? 1 : 0; }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto b : bits_) c += b;
    return c;
  }

  bool all_zero() const { return popcount() == 0; }

  /// Bitwise complement, i.e. the pattern written x XOR 1.
  BitString complemented() const {
    BitString out = *this;
    for (auto& b : out.bits_) b ^= 1U;
    return out;
  }

  /// LSB-first rendering, the inverse of parse().
  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Smallest r >= 1 with n <= 2^r. A plain ceil(log2 n) would give r = 0 at n = 1.
inline std::size_t index_width(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("index_width: n must be positive");
  std::size_t r = n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
  return r < 1 ? 1 : r;
}

}  // namespace gapcirc
