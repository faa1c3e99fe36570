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
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gapcirc/bitstring.hpp"

namespace gapcirc {

/// Raised when a problem instance violates its invariants.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Problem { ov, threesum, nwt };

inline const char* problem_name(Problem p) {
  switch (p) {
    case Problem::ov:
      return "ov";
    case Problem::threesum:
      return "threesum";
    case Problem::nwt:
      return "nwt";
  }
  return "?";
}

inline Problem parse_problem(const std::string& s) {
  if (s == "ov") return Problem::ov;
  if (s == "threesum" || s == "3sum") return Problem::threesum;
  if (s == "nwt") return Problem::nwt;
  throw InstanceError("unknown problem '" + s + "' (expected ov, threesum or nwt)");
}

/// Orthogonal Vectors: two lists of n vectors in {0,1}^d.
struct OVInstance {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<BitString> u;
  std::vector<BitString> v;
};

/// 3-SUM: n distinct integers in [-U, U].
struct ThreeSumInstance {
  std::size_t n = 0;
  std::int64_t U = 0;
  std::vector<std::int64_t> S;
};

/// Undirected weighted edge between 1-based vertices i < j.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t w = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Negative Weight Triangle: n vertices, weights in [-M, M].
struct NwtInstance {
  std::size_t n = 0;
  std::int64_t M = 0;
  std::vector<Edge> edges;
};

using Instance = std::variant<OVInstance, ThreeSumInstance, NwtInstance>;

inline Problem problem_of(const Instance& inst) { return static_cast<Problem>(inst.index()); }

inline void validate(const OVInstance& inst) {
  if (inst.n == 0) throw InstanceError("ov: n must be at least 1");
  if (inst.d == 0) throw InstanceError("ov: d must be at least 1");
  if (inst.u.size() != inst.n || inst.v.size() != inst.n) throw InstanceError("ov: expected n vectors per side");
  for (const auto* side : {&inst.u, &inst.v}) {
    for (const auto& vec : *side) {
      if (vec.width() != inst.d) throw InstanceError("ov: vector of width " + std::to_string(vec.width()) + ", expected d");
    }
  }
}

inline void validate(const ThreeSumInstance& inst) {
  if (inst.n == 0) throw InstanceError("threesum: n must be at least 1");
  if (inst.U < 1) throw InstanceError("threesum: U must be at least 1");
  if (inst.S.size() != inst.n) throw InstanceError("threesum: |S| differs from n");
  std::set<std::int64_t> seen;
  for (auto e : inst.S) {
    if (e < -inst.U || e > inst.U) throw InstanceError("threesum: element " + std::to_string(e) + " outside [-U, U]");
    if (!seen.insert(e).second) throw InstanceError("threesum: duplicate element " + std::to_string(e));
  }
}

inline void validate(const NwtInstance& inst) {
  if (inst.n == 0) throw InstanceError("nwt: n must be at least 1");
  if (inst.M < 0) throw InstanceError("nwt: M must be non-negative");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : inst.edges) {
    if (e.i < 1 || e.j > inst.n || e.i >= e.j) {
      throw InstanceError("nwt: edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                          ") needs 1 <= i < j <= n");
    }
    if (e.w < -inst.M || e.w > inst.M) throw InstanceError("nwt: weight " + std::to_string(e.w) + " outside [-M, M]");
    if (!seen.insert({e.i, e.j}).second) throw InstanceError("nwt: duplicate edge");
  }
}

inline void validate(const Instance& inst) {
  std::visit([](const auto& i) { validate(i); }, inst);
}

}  // namespace gapcirc
