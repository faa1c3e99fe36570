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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapcirc/arithmetic.hpp"
#include "gapcirc/circuit.hpp"
#include "gapcirc/dataload.hpp"
#include "gapcirc/instances.hpp"

namespace gapcirc {

/// How the classical data reaches the circuit.
enum class LoadMode { qram, explicit_unitary };

inline const char* mode_name(LoadMode m) { return m == LoadMode::qram ? "qram" : "explicit"; }

inline LoadMode parse_mode(const std::string& s) {
  if (s == "qram") return LoadMode::qram;
  if (s == "explicit") return LoadMode::explicit_unitary;
  throw std::invalid_argument("unknown mode '" + s + "' (expected qram or explicit)");
}

/// Register widths derived from an instance. `bound` is U for 3-SUM, M for NWT, 0 for OV.
struct CircuitParams {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t d = 0;
  std::int64_t bound = 0;
  friend bool operator==(const CircuitParams&, const CircuitParams&) = default;
};

/// A constructed circuit with p_acc = gap^2 / 2^denom_exponent.
struct BuiltCircuit {
  Problem problem = Problem::ov;
  LoadMode mode = LoadMode::qram;
  Circuit circuit;
  CircuitParams params;
  std::size_t denom_exponent = 0;
};

inline std::size_t expected_qubits(Problem p, std::size_t r, std::size_t d) {
  switch (p) {
    case Problem::ov:
      return 3 * d + 3 * r + 4;
    case Problem::threesum:
      return 4 * r + 3 * d + 8;
    case Problem::nwt:
      return 4 * r + 4 * d + 14;
  }
  return 0;
}

inline std::size_t expected_denom_exponent(Problem p, std::size_t r, std::size_t d) {
  switch (p) {
    case Problem::ov:
      return 5 * r + 3 * d + 1;
    case Problem::threesum:
      return 7 * r + 3 * d + 4;
    case Problem::nwt:
      return 7 * r + 4 * d + 10;
  }
  return 0;
}

inline CircuitParams derive_params_ov(const OVInstance& inst) {
  validate(inst);
  return {inst.n, index_width(inst.n), inst.d, 0};
}

/// d is the smallest width with 2U <= 2^d - 1.
inline CircuitParams derive_params_threesum(const ThreeSumInstance& inst) {
  validate(inst);
  auto d = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(2 * inst.U)));
  return {inst.n, index_width(inst.n), d, inst.U};
}

/// d is the smallest width with 2M+1 < 2^d.
inline CircuitParams derive_params_nwt(const NwtInstance& inst) {
  validate(inst);
  auto d = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(2 * inst.M + 1)));
  return {inst.n, index_width(inst.n), d, inst.M};
}

/// W_ij = weight + M on edges, 2M+1 for no edge, diagonal, or out-of-range index; indices are 0-based.
inline std::vector<std::vector<std::int64_t>> build_w_matrix(const NwtInstance& inst, std::size_t r) {
  const std::size_t side = std::size_t{1} << r;
  if (inst.n > side) throw InstanceError("build_w_matrix: 2^r smaller than n");
  const std::int64_t sentinel = 2 * inst.M + 1;
  std::vector<std::vector<std::int64_t>> w(side, std::vector<std::int64_t>(side, sentinel));
  for (const auto& e : inst.edges) {
    w[e.i - 1][e.j - 1] = e.w + inst.M;
    w[e.j - 1][e.i - 1] = e.w + inst.M;
  }
  return w;
}

namespace detail {

inline void emit_index_prologue(Circuit& c, const std::vector<Register>& indices, const Register& nmax,
                                std::size_t n) {
  c.set_step(1);
  for (const auto& reg : indices) {
    for (Qubit q : reg.qubits()) c.append(gate::H{q});
  }
  emit_x_pattern(c, nmax, BitString::from_integer(n - 1, nmax.width));
  c.set_step(2);
  const Qubit anc = c.reg("anc")[0];
  const Register& valid = c.reg("valid");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    emit_comparator_leq(c, ArithLayout{anc, indices[k], nmax, valid[k]});
  }
}

inline void finish(Circuit& c) {
  MeasurementPlan plan;
  plan.z_qubits = c.reg("valid").qubits();
  plan.unmeasured = c.reg("anc").qubits();
  for (Qubit q = 0; q < c.n_qubits(); ++q) {
    bool z = std::find(plan.z_qubits.begin(), plan.z_qubits.end(), q) != plan.z_qubits.end();
    bool u = std::find(plan.unmeasured.begin(), plan.unmeasured.end(), q) != plan.unmeasured.end();
    if (!z && !u) plan.x_qubits.push_back(q);
  }
  c.set_measurement(std::move(plan));
  c.set_step(0);
}

inline BuiltCircuit package(Problem p, LoadMode mode, Circuit c, CircuitParams params) {
  BuiltCircuit out{p, mode, std::move(c), params, expected_denom_exponent(p, params.r, params.d)};
  const auto& circ = out.circuit;
  if (circ.n_qubits() != expected_qubits(p, params.r, params.d)) {
    throw CircuitError("internal: qubit count differs from the layout formula");
  }
  if (out.denom_exponent != circ.h_layer_size() + circ.measurement().x_qubits.size()) {
    throw CircuitError("internal: denominator exponent differs from h + |x_qubits|");
  }
  return out;
}

}  // namespace detail

/// Orthogonal Vectors circuit: acceptance probability gap^2 / 2^{5r+3d+1}.
inline BuiltCircuit build_ov_circuit(const OVInstance& inst, LoadMode mode) {
  const auto params = derive_params_ov(inst);
  const auto r = params.r;
  const auto d = params.d;
  Circuit c = new_circuit({{"i", r}, {"j", r}, {"nmax", r}, {"valid", 2}, {"du", d}, {"dv", d}, {"prod", d},
                           {"phase", 1}, {"anc", 1}});
  const Register i = c.reg("i"), j = c.reg("j"), du = c.reg("du"), dv = c.reg("dv"), prod = c.reg("prod");
  const Qubit phase = c.reg("phase")[0];
  const Qubit anc = c.reg("anc")[0];

  DataTable left("D", r, d), right("Dp", r, d);
  for (std::size_t x = 0; x < inst.n; ++x) {
    left.store(x, inst.u[x]);
    right.store(x, inst.v[x]);
  }

  detail::emit_index_prologue(c, {i, j}, c.reg("nmax"), inst.n);

  c.set_step(3);
  if (mode == LoadMode::qram) {
    emit_qram_load(c, left, i.qubits(), du);
    emit_qram_load(c, right, j.qubits(), dv);
  } else {
    for (std::size_t x = 0; x < inst.n; ++x) {
      emit_address_loader(c, x, inst.u[x], i.qubits(), du, anc);
      emit_address_loader(c, x, inst.v[x], j.qubits(), dv, anc);
    }
  }

  c.set_step(4);
  for (std::size_t k = 0; k < d; ++k) c.append(gate::Toffoli{du[k], dv[k], prod[k]});

  c.set_step(5);
  emit_equality_detector(c, prod, BitString(d), phase, anc);

  c.set_step(6);
  c.append(gate::Z{phase});

  detail::finish(c);
  return detail::package(Problem::ov, mode, std::move(c), params);
}

/// 3-SUM circuit: acceptance probability gap^2 / 2^{7r+3d+4}.
inline BuiltCircuit build_threesum_circuit(const ThreeSumInstance& inst, LoadMode mode) {
  const auto params = derive_params_threesum(inst);
  const auto r = params.r;
  const auto d = params.d;
  Circuit c = new_circuit({{"i", r}, {"j", r}, {"k", r}, {"nmax", r}, {"valid", 3}, {"e1", d}, {"e2", d + 1},
                           {"e3", d + 2}, {"phase", 1}, {"anc", 1}});
  const Register i = c.reg("i"), j = c.reg("j"), k = c.reg("k");
  const Register e1 = c.reg("e1"), e2 = c.reg("e2"), e3 = c.reg("e3");
  const Qubit phase = c.reg("phase")[0];
  const Qubit anc = c.reg("anc")[0];

  // Elements shifted into [0, 2U].
  DataTable table("D", r, d);
  for (std::size_t x = 0; x < inst.n; ++x) {
    table.store(x, BitString::from_integer(static_cast<std::uint64_t>(inst.S[x] + inst.U), d));
  }

  detail::emit_index_prologue(c, {i, j, k}, c.reg("nmax"), inst.n);

  c.set_step(3);
  const Register targets[] = {e1, e2.slice(0, d), e3.slice(0, d)};
  const Register* sources[] = {&i, &j, &k};
  for (int t = 0; t < 3; ++t) {
    if (mode == LoadMode::qram) {
      emit_qram_load(c, table, sources[t]->qubits(), targets[t]);
    } else {
      emit_loader_unitary(c, table, *sources[t], targets[t], anc);
    }
  }

  c.set_step(4);
  emit_adder(c, ArithLayout{anc, e1, e2, std::nullopt});
  c.set_step(5);
  emit_adder(c, ArithLayout{anc, e2, e3, std::nullopt});

  // The target sum is 3U after shifting every element by U.
  c.set_step(6);
  emit_equality_detector(c, e3, BitString::from_integer(static_cast<std::uint64_t>(3 * inst.U), d + 2), phase, anc);

  c.set_step(7);
  c.append(gate::Z{phase});

  detail::finish(c);
  return detail::package(Problem::threesum, mode, std::move(c), params);
}

/// Negative Weight Triangle circuit: acceptance probability gap^2 / 2^{7r+4d+10}.
inline BuiltCircuit build_nwt_circuit(const NwtInstance& inst, LoadMode mode) {
  const auto params = derive_params_nwt(inst);
  const auto r = params.r;
  const auto d = params.d;
  Circuit c = new_circuit({{"x", r}, {"y", r}, {"z", r}, {"nmax", r}, {"valid", 3}, {"w1", d}, {"w2", d + 1},
                           {"w3", d + 2}, {"sentinel", 3}, {"bound", d + 2}, {"lt", 1}, {"phase", 1}, {"anc", 1}});
  const Register x = c.reg("x"), y = c.reg("y"), z = c.reg("z");
  const Register w1 = c.reg("w1"), w2 = c.reg("w2"), w3 = c.reg("w3");
  const Register sentinel = c.reg("sentinel"), bound = c.reg("bound");
  const Qubit lt = c.reg("lt")[0];
  const Qubit phase = c.reg("phase")[0];
  const Qubit anc = c.reg("anc")[0];
  const auto M = static_cast<std::uint64_t>(inst.M);

  const auto w = build_w_matrix(inst, r);
  DataTable table("W", 2 * r, d);
  for (std::uint64_t a = 0; a < w.size(); ++a) {
    for (std::uint64_t b = 0; b < w.size(); ++b) {
      table.store(pair_index(a, b, r), BitString::from_integer(static_cast<std::uint64_t>(w[a][b]), d));
    }
  }

  detail::emit_index_prologue(c, {x, y, z}, c.reg("nmax"), inst.n);

  c.set_step(3);
  const Register lows[] = {w1, w2.slice(0, d), w3.slice(0, d)};
  const std::vector<Qubit> addresses[] = {pair_address(x, y), pair_address(y, z), pair_address(x, z)};
  if (mode == LoadMode::qram) {
    for (int t = 0; t < 3; ++t) emit_qram_load(c, table, addresses[t], lows[t]);
  } else {
    for (std::uint64_t b = 0; b < w.size(); ++b) {
      for (std::uint64_t a = 0; a < w.size(); ++a) {
        const auto key = pair_index(a, b, r);
        for (int t = 0; t < 3; ++t) emit_address_loader(c, key, table.lookup(key), addresses[t], lows[t], anc);
      }
    }
  }

  c.set_step(4);
  for (int t = 0; t < 3; ++t) emit_sentinel_detector(c, lows[t], 2 * M + 1, sentinel[t], anc);

  c.set_step(5);
  emit_adder(c, ArithLayout{anc, w1, w2, std::nullopt});
  emit_adder(c, ArithLayout{anc, w2, w3, std::nullopt});

  // lt = [sum >= 3M]; it is 0 exactly on negative-weight triples.
  c.set_step(6);
  emit_x_pattern(c, bound, BitString::from_integer(3 * M, d + 2));
  emit_comparator_lt(c, ArithLayout{anc, w3, bound, lt});

  c.set_step(7);
  std::vector<Qubit> flags = sentinel.qubits();
  flags.push_back(lt);
  for (Qubit q : flags) c.append(gate::X{q});
  c.append(gate::MCBitmask{flags, BitString{1}, {phase}, anc});
  for (Qubit q : flags) c.append(gate::X{q});

  c.set_step(8);
  c.append(gate::Z{phase});

  detail::finish(c);
  return detail::package(Problem::nwt, mode, std::move(c), params);
}

inline BuiltCircuit build_circuit(const Instance& inst, LoadMode mode) {
  return std::visit(
      [&](const auto& i) -> BuiltCircuit {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, OVInstance>) {
          return build_ov_circuit(i, mode);
        } else if constexpr (std::is_same_v<T, ThreeSumInstance>) {
          return build_threesum_circuit(i, mode);
        } else {
          return build_nwt_circuit(i, mode);
        }
      },
      inst);
}

/// Simulation time below which the matching fine-grained hardness assumption would fail. Reporting only.
///
/// `slack` is c for OV, eta for 3-SUM and M for NWT.
inline double hardness_time(Problem p, double n_qubits, double delta, double slack) {
  switch (p) {
    case Problem::ov:
      if (slack <= -1) throw std::invalid_argument("hardness_time: c must exceed -1");
      return std::exp2((2 - delta) * (n_qubits - 7) / (3 * (slack + 1)));
    case Problem::threesum:
      return std::exp2((2 - delta) * (n_qubits - 18) / (13 + 3 * slack));
    case Problem::nwt:
      if (slack < 0) throw std::invalid_argument("hardness_time: M must be non-negative");
      return std::exp2((3 - delta) / 4 * (n_qubits - 4 * std::log2(2 * slack + 1) - 22));
  }
  throw std::invalid_argument("hardness_time: unknown problem");
}

}  // namespace gapcirc
