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
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gapcirc/circuit.hpp"

namespace gapcirc {

namespace detail {

// Toffolis used by the ladder construction of an m-controlled X with m-2 borrowed qubits.
inline std::size_t ladder_cost(std::size_t m) { return m <= 2 ? 1 : 4 * (m - 2); }

// Control split for a d-controlled X with one borrowed ancilla: the first `first` controls
// drive the ancilla, the rest (plus the ancilla) drive the target.
inline std::size_t first_half(std::size_t d) { return (d + 2) / 2; }

}  // namespace detail

/// Toffoli-equivalent cost of one d-controlled X using a single borrowed ancilla.
///
/// d = 1 is a CX and d = 2 a Toffoli, each counted as one primitive. For d >= 3 the controls are
/// split into halves of sizes m1 = ceil((d+1)/2) and m2 = d+1-m1 (the second half includes the
/// ancilla), each realised by the ladder construction with 4(m-2) Toffolis and applied twice.
/// This gives 4 at d = 3, 10 at d = 4, and exactly 8(d-3) for every d >= 5.
inline std::size_t mcx_toffoli_cost(std::size_t d) {
  if (d == 0) throw std::invalid_argument("mcx_toffoli_cost: need at least one control");
  if (d <= 2) return 1;
  std::size_t m1 = detail::first_half(d);
  std::size_t m2 = d + 1 - m1;
  return 2 * detail::ladder_cost(m1) + 2 * detail::ladder_cost(m2);
}

/// Cost of one Lambda_d(X^mask): one d-controlled X per set mask bit.
inline std::size_t mcbitmask_toffoli_cost(const gate::MCBitmask& g) {
  return g.mask.popcount() * mcx_toffoli_cost(g.controls.size());
}

namespace detail {

// target ^= AND(controls), using `pool` as borrowed qubits (restored on exit).
inline void emit_ladder(std::vector<Op>& out, std::span<const Qubit> c, Qubit target, std::span<const Qubit> pool,
                        int step) {
  const std::size_t m = c.size();
  if (m == 1) {
    out.push_back({gate::CX{c[0], target}, step});
    return;
  }
  if (m == 2) {
    out.push_back({gate::Toffoli{c[0], c[1], target}, step});
    return;
  }
  if (pool.size() < m - 2) throw CircuitError("multi-control expansion: not enough borrowed qubits");
  auto a = pool.first(m - 2);
  auto top = [&] { out.push_back({gate::Toffoli{c[m - 1], a[m - 3], target}, step}); };
  auto bottom = [&] { out.push_back({gate::Toffoli{c[0], c[1], a[0]}, step}); };
  auto link = [&](std::size_t k) { out.push_back({gate::Toffoli{c[k + 1], a[k - 1], a[k]}, step}); };
  auto down = [&] {
    for (std::size_t k = m - 3; k >= 1; --k) link(k);
  };
  auto up = [&] {
    for (std::size_t k = 1; k + 3 <= m; ++k) link(k);
  };
  for (int pass = 0; pass < 2; ++pass) {
    top();
    down();
    bottom();
    up();
  }
}

}  // namespace detail

/// Appends Toffoli/CX gates implementing target ^= AND(controls) with one borrowed ancilla.
/// The ancilla may hold any value and is restored.
inline void append_mcx_decomposition(std::vector<Op>& out, std::span<const Qubit> controls, Qubit target,
                                     std::optional<Qubit> ancilla, int step) {
  const std::size_t d = controls.size();
  if (d == 0) throw CircuitError("multi-control expansion: no controls");
  if (d <= 2) {
    detail::emit_ladder(out, controls, target, {}, step);
    return;
  }
  if (!ancilla) throw CircuitError("multi-control expansion: d >= 3 requires an ancilla");
  const std::size_t m1 = detail::first_half(d);
  auto lower = controls.first(m1);
  auto upper_controls = controls.subspan(m1);

  std::vector<Qubit> upper(upper_controls.begin(), upper_controls.end());
  upper.push_back(*ancilla);
  std::vector<Qubit> lower_pool(upper_controls.begin(), upper_controls.end());
  lower_pool.push_back(target);
  std::vector<Qubit> upper_pool(lower.begin(), lower.end());

  for (int pass = 0; pass < 2; ++pass) {
    detail::emit_ladder(out, upper, target, upper_pool, step);
    detail::emit_ladder(out, lower, *ancilla, lower_pool, step);
  }
}

/// Replaces every MCX gate by its Toffoli decomposition; all other gates are kept.
inline Circuit expand_multicontrolled(const Circuit& circuit) {
  std::vector<Op> ops;
  ops.reserve(circuit.ops().size());
  for (const auto& op : circuit.ops()) {
    const auto* m = std::get_if<gate::MCBitmask>(&op.gate);
    if (!m) {
      ops.push_back(op);
      continue;
    }
    for (std::size_t j = 0; j < m->targets.size(); ++j) {
      if (m->mask[j]) append_mcx_decomposition(ops, m->controls, m->targets[j], m->ancilla, op.step);
    }
  }
  return circuit.with_ops(std::move(ops));
}

}  // namespace gapcirc
