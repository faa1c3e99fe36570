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
#include <map>
#include <string>
#include <vector>

#include "gapcirc/builders.hpp"
#include "gapcirc/multicontrol.hpp"

namespace gapcirc {

/// Gate kind -> count. Kinds: H, X, Z, CX, Toffoli, QRAM.
using GateCounts = std::map<std::string, std::uint64_t>;

inline const std::vector<std::string>& gate_kinds() {
  static const std::vector<std::string> kinds{"H", "X", "Z", "CX", "Toffoli", "QRAM"};
  return kinds;
}

struct GateCountReport {
  std::map<int, GateCounts> per_step;
  std::map<int, GateCounts> table_bounds;
  GateCounts totals;
  std::vector<std::string> violations;
  bool pass = true;
};

/// Adds one gate to `counts`. A d-controlled bitmask gate costs popcount(mask) * mcx_toffoli_cost(d) Toffolis.
inline void tally(GateCounts& counts, const Gate& g) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gate::H>) ++counts["H"];
        else if constexpr (std::is_same_v<T, gate::X>) ++counts["X"];
        else if constexpr (std::is_same_v<T, gate::Z>) ++counts["Z"];
        else if constexpr (std::is_same_v<T, gate::CX>) ++counts["CX"];
        else if constexpr (std::is_same_v<T, gate::Toffoli>) ++counts["Toffoli"];
        else if constexpr (std::is_same_v<T, gate::MCBitmask>) counts["Toffoli"] += mcbitmask_toffoli_cost(v);
        else ++counts["QRAM"];
      },
      g);
}

inline GateCounts count_gates(const Circuit& c) {
  GateCounts out;
  for (const auto& op : c.ops()) tally(out, op.gate);
  return out;
}

/// Per-step upper bounds. Rows containing 8(k-3) use mcx_toffoli_cost(k), which equals 8(k-3) for k >= 5.
inline std::map<int, GateCounts> table_bounds(Problem p, LoadMode mode, const CircuitParams& prm) {
  const std::uint64_t n = prm.n, r = prm.r, d = prm.d;
  auto cost = [](std::uint64_t k) { return static_cast<std::uint64_t>(mcx_toffoli_cost(k)); };
  std::map<int, GateCounts> b;
  switch (p) {
    case Problem::ov:
      b[1] = {{"H", 2 * r}, {"X", r}};
      b[2] = {{"X", 4 * r + 6}, {"CX", 8 * r + 2}, {"Toffoli", 4 * r}};
      b[3] = mode == LoadMode::qram ? GateCounts{{"QRAM", 2}}
                                    : GateCounts{{"X", 4 * n * r}, {"Toffoli", 2 * n * d * cost(r)}};
      b[4] = {{"Toffoli", d}};
      b[5] = {{"X", 2 * d}, {"Toffoli", cost(d)}};
      b[6] = {{"Z", 1}};
      break;
    case Problem::threesum:
      b[1] = {{"H", 3 * r}, {"X", r}};
      b[2] = {{"X", 6 * r + 9}, {"CX", 12 * r + 3}, {"Toffoli", 6 * r}};
      b[3] = mode == LoadMode::qram ? GateCounts{{"QRAM", 3}}
                                    : GateCounts{{"X", 6 * n * r}, {"Toffoli", 3 * n * d * cost(r)}};
      b[4] = {{"CX", 4 * d + 1}, {"Toffoli", 2 * d}};
      b[5] = {{"CX", 4 * d + 5}, {"Toffoli", 2 * d + 2}};
      b[6] = {{"X", 2 * d + 4}, {"Toffoli", cost(d + 2)}};
      b[7] = {{"Z", 1}};
      break;
    case Problem::nwt: {
      const std::uint64_t pairs = std::uint64_t{1} << (2 * r);
      b[1] = {{"H", 3 * r}, {"X", r}};
      b[2] = {{"X", 6 * r + 9}, {"CX", 12 * r + 3}, {"Toffoli", 6 * r}};
      b[3] = mode == LoadMode::qram ? GateCounts{{"QRAM", 3}}
                                    : GateCounts{{"X", 12 * r * pairs}, {"Toffoli", 3 * pairs * d * cost(2 * r)}};
      b[4] = {{"X", 6 * d}, {"Toffoli", 3 * cost(d)}};
      b[5] = {{"CX", 8 * d + 6}, {"Toffoli", 4 * d + 2}};
      b[6] = {{"X", 3 * d + 8}, {"CX", 4 * d + 9}, {"Toffoli", 2 * d + 4}};
      b[7] = {{"X", 8}, {"Toffoli", 10}};
      b[8] = {{"Z", 1}};
      break;
    }
  }
  return b;
}

/// Compares per-step counts with the table bounds. A kind missing from a step's row has bound 0.
inline GateCountReport gate_accountant(const BuiltCircuit& built) {
  GateCountReport rep;
  for (const auto& op : built.circuit.ops()) {
    if (op.step <= 0) throw CircuitError("gate_accountant: untagged " + std::string(gate_name(op.gate)) + " gate");
    tally(rep.per_step[op.step], op.gate);
    tally(rep.totals, op.gate);
  }
  rep.table_bounds = table_bounds(built.problem, built.mode, built.params);
  for (const auto& [step, counts] : rep.per_step) {
    auto row = rep.table_bounds.find(step);
    for (const auto& [kind, actual] : counts) {
      std::uint64_t bound = 0;
      if (row != rep.table_bounds.end()) {
        auto it = row->second.find(kind);
        if (it != row->second.end()) bound = it->second;
      }
      if (actual > bound) {
        rep.violations.push_back("step " + std::to_string(step) + " " + kind + ": " + std::to_string(actual) + " > " +
                                 std::to_string(bound));
      }
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

/// Largest actual/bound ratio over all (step, kind) cells with a nonzero bound.
inline double max_bound_ratio(const GateCountReport& rep) {
  double worst = 0.0;
  for (const auto& [step, counts] : rep.per_step) {
    auto row = rep.table_bounds.find(step);
    if (row == rep.table_bounds.end()) continue;
    for (const auto& [kind, actual] : counts) {
      auto it = row->second.find(kind);
      if (it != row->second.end() && it->second > 0) {
        worst = std::max(worst, static_cast<double>(actual) / static_cast<double>(it->second));
      }
    }
  }
  return worst;
}

}  // namespace gapcirc
