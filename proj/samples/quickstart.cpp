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

// Builds the circuit for a two-vector OV instance, simulates it and compares with the brute-force count.

#include <iostream>

#include "gapcirc/gapcirc.hpp"

int main() {
  using namespace gapcirc;
  OVInstance inst{2, 1, {BitString{1}, BitString{0}}, {BitString{1}, BitString{0}}};

  const auto built = build_circuit(inst, LoadMode::qram);
  const auto out = simulate_pathsum(built.circuit);
  const auto counts = oracle_ov(inst);

  std::cout << "qubits:    " << built.circuit.n_qubits() << "\n";
  std::cout << "gap:       " << counts.gap << "\n";
  std::cout << "p_acc:     " << out.exact->to_fraction_string() << "\n";

  const auto report = verify_instance(inst, LoadMode::explicit_unitary);
  std::cout << "explicit:  " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return report.pass() ? 0 : 1;
}
