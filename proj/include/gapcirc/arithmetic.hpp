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
#include <string>

#include "gapcirc/circuit.hpp"

// Ripple-carry arithmetic built from MAJ / UMA blocks (Cuccaro et al. style). Every routine
// borrows the single `ancilla` qubit as carry-in; it must be 0 on entry and is restored.

namespace gapcirc {

/// Qubits used by one adder or comparator application.
struct ArithLayout {
  Qubit ancilla;
  Register a;
  Register b;
  std::optional<Qubit> out;  // comparator result; the adder's carry-out is the top qubit of `b`

  Qubit result() const {
    if (!out) throw CircuitError("comparator layout needs an output qubit");
    return *out;
  }
};

/// MAJ(c, b, a): a <- MAJ(a, b, c), b <- a ^ b, c <- a ^ c.
inline void emit_maj(Circuit& circuit, Qubit c, Qubit b, Qubit a) {
  circuit.append(gate::CX{a, b});
  circuit.append(gate::CX{a, c});
  circuit.append(gate::Toffoli{c, b, a});
}

/// UMA(c, b, a): inverts MAJ on a and c, writes the sum bit a ^ b ^ c into b.
inline void emit_uma(Circuit& circuit, Qubit c, Qubit b, Qubit a) {
  circuit.append(gate::Toffoli{c, b, a});
  circuit.append(gate::CX{a, c});
  circuit.append(gate::CX{c, b});
}

/// UMA'(c, b, a): plain inverse of MAJ, no sum write-back.
inline void emit_uma_prime(Circuit& circuit, Qubit c, Qubit b, Qubit a) {
  circuit.append(gate::Toffoli{c, b, a});
  circuit.append(gate::CX{a, c});
  circuit.append(gate::CX{a, b});
}

/// MAJ cascade over the low `n` bits; afterwards a[n-1] holds the carry c_n.
inline void emit_majority_chain(Circuit& circuit, Qubit carry_in, const Register& a, const Register& b,
                                std::size_t n) {
  emit_maj(circuit, carry_in, b[0], a[0]);
  for (std::size_t i = 1; i < n; ++i) emit_maj(circuit, a[i - 1], b[i], a[i]);
}

/// Undoes emit_majority_chain with UMA' blocks.
inline void emit_unmajority_chain(Circuit& circuit, Qubit carry_in, const Register& a, const Register& b,
                                  std::size_t n) {
  for (std::size_t i = n - 1; i >= 1; --i) emit_uma_prime(circuit, a[i - 1], b[i], a[i]);
  emit_uma_prime(circuit, carry_in, b[0], a[0]);
}

/// b <- a + b. `a` has r qubits, `b` has r + 1 (the top one is the carry-out slot, initially 0).
/// Uses 2r Toffoli and 4r + 1 CX gates.
inline void emit_adder(Circuit& circuit, const ArithLayout& layout) {
  const Register& a = layout.a;
  const Register& b = layout.b;
  if (a.width == 0 || b.width != a.width + 1) {
    throw CircuitError("emit_adder: sum register '" + b.name + "' must be one qubit wider than '" + a.name + "'");
  }
  const std::size_t r = a.width;
  emit_majority_chain(circuit, layout.ancilla, a, b, r);
  circuit.append(gate::CX{a[r - 1], b[r]});
  for (std::size_t i = r - 1; i >= 1; --i) emit_uma(circuit, a[i - 1], b[i], a[i]);
  emit_uma(circuit, layout.ancilla, b[0], a[0]);
}

namespace detail {

// out ^= [I(a) >= I(b)], computed as the carry out of a + b* + 1.
inline void emit_geq(Circuit& circuit, Qubit ancilla, const Register& a, const Register& b, Qubit out) {
  if (a.width == 0 || a.width != b.width) {
    throw CircuitError("comparator: registers '" + a.name + "' and '" + b.name + "' differ in width");
  }
  const std::size_t n = a.width;
  for (std::size_t i = 0; i < n; ++i) circuit.append(gate::X{b[i]});
  circuit.append(gate::X{ancilla});
  emit_majority_chain(circuit, ancilla, a, b, n);
  circuit.append(gate::CX{a[n - 1], out});
  emit_unmajority_chain(circuit, ancilla, a, b, n);
  circuit.append(gate::X{ancilla});
  for (std::size_t i = 0; i < n; ++i) circuit.append(gate::X{b[i]});
}

}  // namespace detail

/// C': out ^= chi(I(b) - I(a)) XOR 1, i.e. the result is 0 exactly when I(a) < I(b).
/// Uses 2n+2 X, 4n+1 CX and 2n Toffoli gates.
inline void emit_comparator_lt(Circuit& circuit, const ArithLayout& layout) {
  detail::emit_geq(circuit, layout.ancilla, layout.a, layout.b, layout.result());
}

/// C: out ^= chi(I(a) - I(b)), i.e. the result is 0 exactly when I(a) <= I(b).
/// This is C' with the operands swapped and the result complemented: 2n+3 X, 4n+1 CX, 2n Toffoli.
inline void emit_comparator_leq(Circuit& circuit, const ArithLayout& layout) {
  detail::emit_geq(circuit, layout.ancilla, layout.b, layout.a, layout.result());
  circuit.append(gate::X{layout.result()});
}

}  // namespace gapcirc
