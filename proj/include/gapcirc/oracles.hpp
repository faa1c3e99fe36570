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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gapcirc/builders.hpp"
#include "gapcirc/dyadic.hpp"
#include "gapcirc/instances.hpp"

// Brute-force witness counts. These loops are the ground truth the circuits are checked against.

namespace gapcirc {

struct OracleCounts {
  std::uint64_t s = 0;      // witnesses
  std::uint64_t total = 0;  // n^2 or n^3
  std::int64_t gap = 0;     // 2s - total
};

inline OracleCounts make_counts(std::uint64_t s, std::uint64_t total) {
  return {s, total, 2 * static_cast<std::int64_t>(s) - static_cast<std::int64_t>(total)};
}

/// Pairs (i, j) with u_i . v_j = 0.
inline OracleCounts oracle_ov(const OVInstance& inst) {
  validate(inst);
  std::uint64_t s = 0;
  for (const auto& a : inst.u) {
    for (const auto& b : inst.v) {
      bool orth = true;
      for (std::size_t k = 0; k < inst.d && orth; ++k) orth = !(a[k] && b[k]);
      s += orth;
    }
  }
  return make_counts(s, inst.n * inst.n);
}

/// Ordered triples (a, b, c) in S^3 with a + b + c = 0, repetition allowed.
inline OracleCounts oracle_threesum(const ThreeSumInstance& inst) {
  validate(inst);
  std::uint64_t s = 0;
  for (auto a : inst.S) {
    for (auto b : inst.S) {
      for (auto c : inst.S) s += (a + b + c == 0);
    }
  }
  return make_counts(s, inst.n * inst.n * inst.n);
}

/// Ordered vertex triples (x, y, z) whose three edges all exist and whose weights sum below zero.
/// Repeated vertices never qualify: a vertex has no edge to itself.
inline OracleCounts oracle_nwt(const NwtInstance& inst) {
  validate(inst);
  const std::size_t n = inst.n;
  std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (const auto& e : inst.edges) {
    has[e.i - 1][e.j - 1] = has[e.j - 1][e.i - 1] = true;
    w[e.i - 1][e.j - 1] = w[e.j - 1][e.i - 1] = e.w;
  }
  std::uint64_t s = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (has[x][y] && has[y][z] && has[x][z] && w[x][y] + w[y][z] + w[x][z] < 0) ++s;
      }
    }
  }
  return make_counts(s, n * n * n);
}

inline OracleCounts oracle(const Instance& inst) {
  return std::visit(
      [](const auto& i) -> OracleCounts {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, OVInstance>) return oracle_ov(i);
        else if constexpr (std::is_same_v<T, ThreeSumInstance>) return oracle_threesum(i);
        else return oracle_nwt(i);
      },
      inst);
}

/// gap^2 / 2^k with the problem's denominator exponent.
inline DyadicRational predicted_pacc(Problem p, std::size_t r, std::size_t d, std::int64_t gap) {
  const auto g = static_cast<std::uint64_t>(gap < 0 ? -gap : gap);
  return DyadicRational{g * g, expected_denom_exponent(p, r, d)};
}

}  // namespace gapcirc
