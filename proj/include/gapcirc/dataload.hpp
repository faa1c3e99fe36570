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
#include <optional>
#include <string>
#include <vector>

#include "gapcirc/circuit.hpp"
#include "gapcirc/data_table.hpp"

namespace gapcirc {

/// What a QRAM call XORs into a data register addressed by `address`.
inline BitString qram_semantics(const DataTable& table, const BitString& address) {
  if (address.width() != table.address_width()) {
    throw std::invalid_argument("qram_semantics: address width " + std::to_string(address.width()) +
                                " != table address width " + std::to_string(table.address_width()));
  }
  return table.lookup(address.to_integer());
}

/// One native QRAM access: data ^= table[I(address)]. Registers the table on the circuit.
inline void emit_qram_load(Circuit& circuit, const DataTable& table, const std::vector<Qubit>& address,
                           const Register& data) {
  circuit.add_table(table);
  circuit.append(gate::QramLoad{address, data.qubits(), table.table_id()});
}

/// U_x = (X^{x XOR 1} (x) I) Lambda_r(X^word) (X^{x XOR 1} (x) I): data ^= word iff address == x.
/// The X conjugation turns the all-ones control pattern into the pattern x.
inline void emit_address_loader(Circuit& circuit, std::uint64_t x, const BitString& word,
                                const std::vector<Qubit>& address, const Register& data,
                                std::optional<Qubit> ancilla) {
  if (word.width() != data.width) throw CircuitError("emit_address_loader: word width differs from data register");
  const auto flips = BitString::from_integer(x, address.size()).complemented();
  for (std::size_t j = 0; j < address.size(); ++j) {
    if (flips[j]) circuit.append(gate::X{address[j]});
  }
  emit_mcbitmask(circuit, address, word, data, ancilla);
  for (std::size_t j = 0; j < address.size(); ++j) {
    if (flips[j]) circuit.append(gate::X{address[j]});
  }
}

/// Explicit replacement of one QRAM access: the product of U_x over every stored address x.
inline void emit_loader_unitary(Circuit& circuit, const DataTable& table, const Register& address,
                                const Register& data, std::optional<Qubit> ancilla) {
  if (address.width != table.address_width() || data.width != table.data_width()) {
    throw CircuitError("emit_loader_unitary: register widths do not match table '" + table.table_id() + "'");
  }
  const auto addr = address.qubits();
  for (const auto& [x, word] : table.entries()) emit_address_loader(circuit, x, word, addr, data, ancilla);
}

/// Address qubits of a two-index lookup: first index low, second index high.
inline std::vector<Qubit> pair_address(const Register& first, const Register& second) {
  auto q = first.qubits();
  auto s = second.qubits();
  q.insert(q.end(), s.begin(), s.end());
  return q;
}

/// Packs (i, j) into the address used by a two-index table.
inline std::uint64_t pair_index(std::uint64_t i, std::uint64_t j, std::size_t r) { return i | (j << r); }

/// Explicit replacement of a two-index QRAM access: the product of U_ij over all 2^{2r} pairs.
inline void emit_pair_loader_unitary(Circuit& circuit, const DataTable& table, const Register& first,
                                     const Register& second, const Register& data, std::optional<Qubit> ancilla) {
  if (first.width != second.width || first.width + second.width != table.address_width() ||
      data.width != table.data_width()) {
    throw CircuitError("emit_pair_loader_unitary: register widths do not match table '" + table.table_id() + "'");
  }
  const std::size_t r = first.width;
  const auto addr = pair_address(first, second);
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << r); ++j) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << r); ++i) {
      const auto key = pair_index(i, j, r);
      emit_address_loader(circuit, key, table.lookup(key), addr, data, ancilla);
    }
  }
}

/// flag ^= [reg == pattern]: X on the zero bits of the pattern, an all-ones test, then undo.
inline void emit_equality_detector(Circuit& circuit, const Register& reg, const BitString& pattern, Qubit flag,
                                   std::optional<Qubit> ancilla) {
  if (pattern.width() != reg.width) throw CircuitError("emit_equality_detector: pattern width mismatch");
  const auto flips = pattern.complemented();
  emit_x_pattern(circuit, reg, flips);
  const auto controls = reg.qubits();
  circuit.append(gate::MCBitmask{controls, BitString{1}, {flag}, ancilla});
  emit_x_pattern(circuit, reg, flips);
}

/// V: flag ^= [data == B[2M+1]], the no-edge sentinel of the weight matrix.
inline void emit_sentinel_detector(Circuit& circuit, const Register& data, std::uint64_t sentinel, Qubit flag,
                                   std::optional<Qubit> ancilla) {
  emit_equality_detector(circuit, data, BitString::from_integer(sentinel, data.width), flag, ancilla);
}

}  // namespace gapcirc
