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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

namespace gapcirc {

/// Non-negative rational numerator / 2^exponent, compared exactly.
struct DyadicRational {
  std::uint64_t numerator = 0;
  std::size_t exponent = 0;

  /// Lowest terms; zero is (0, 0).
  DyadicRational reduced() const {
    if (numerator == 0) return {0, 0};
    DyadicRational out = *this;
    while (out.exponent > 0 && (out.numerator & 1U) == 0) {
      out.numerator >>= 1;
      --out.exponent;
    }
    return out;
  }

  bool is_zero() const { return numerator == 0; }

  double to_double() const { return std::ldexp(static_cast<double>(numerator), -static_cast<int>(exponent)); }

  /// "num/2^e" in the unreduced form.
  std::string to_power_string() const { return std::to_string(numerator) + "/2^" + std::to_string(exponent); }

  /// Reduced "num/den" (falls back to "num/2^e" when the denominator overflows 64 bits).
  std::string to_fraction_string() const {
    auto r = reduced();
    if (r.numerator == 0) return "0";
    if (r.exponent == 0) return std::to_string(r.numerator);
    if (r.exponent >= 64) return r.to_power_string();
    return std::to_string(r.numerator) + "/" + std::to_string(std::uint64_t{1} << r.exponent);
  }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    auto x = a.reduced();
    auto y = b.reduced();
    return x.numerator == y.numerator && x.exponent == y.exponent;
  }
};

}  // namespace gapcirc
