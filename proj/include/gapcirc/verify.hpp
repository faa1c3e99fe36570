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
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gapcirc/accountant.hpp"
#include "gapcirc/builders.hpp"
#include "gapcirc/oracles.hpp"
#include "gapcirc/simulator.hpp"

namespace gapcirc {

/// Which backends verification runs. Path-sum is exact; dense is a floating-point cross-check.
enum class BackendChoice { pathsum, dense, both };

inline BackendChoice parse_backend_choice(const std::string& s) {
  if (s == "both") return BackendChoice::both;
  return parse_backend(s) == Backend::pathsum ? BackendChoice::pathsum : BackendChoice::dense;
}

inline const char* backend_choice_name(BackendChoice b) {
  switch (b) {
    case BackendChoice::pathsum:
      return "pathsum";
    case BackendChoice::dense:
      return "dense";
    case BackendChoice::both:
      return "both";
  }
  return "?";
}

struct VerifyOptions {
  BackendChoice backend = BackendChoice::pathsum;
  unsigned jobs = 1;
  std::size_t dense_cap = DenseState::kDefaultCap;
  double dense_tolerance = 1e-9;
};

struct VerifyReport {
  Problem problem = Problem::ov;
  LoadMode mode = LoadMode::qram;
  BackendChoice backend = BackendChoice::pathsum;
  CircuitParams params;
  std::size_t n_qubits = 0;
  std::size_t expected_qubits = 0;
  std::size_t denom_exponent = 0;
  OracleCounts oracle;
  DyadicRational predicted;
  std::optional<SimOutcome> pathsum;
  std::optional<SimOutcome> dense;
  GateCountReport gates;

  bool qubits_ok = false;
  bool equal = false;            // simulated p_acc == predicted
  bool sign_consistent = false;  // |S| == |gap| (path-sum only; true otherwise)
  bool backends_agree = true;
  bool ancilla_restored = true;

  bool pass() const { return qubits_ok && equal && sign_consistent && backends_agree && ancilla_restored && gates.pass; }
};

/// Checks an already built circuit against the oracle counts of its instance.
inline VerifyReport verify_built(const BuiltCircuit& built, const OracleCounts& counts, const VerifyOptions& opts = {}) {
  VerifyReport rep;
  rep.problem = built.problem;
  rep.mode = built.mode;
  rep.backend = opts.backend;
  rep.params = built.params;
  rep.n_qubits = built.circuit.n_qubits();
  rep.expected_qubits = expected_qubits(built.problem, built.params.r, built.params.d);
  rep.denom_exponent = built.denom_exponent;
  rep.oracle = counts;
  rep.predicted = predicted_pacc(built.problem, built.params.r, built.params.d, counts.gap);
  rep.qubits_ok = rep.n_qubits == rep.expected_qubits;
  rep.gates = gate_accountant(built);

  if (opts.backend != BackendChoice::dense) {
    rep.pathsum = simulate_pathsum(built.circuit, opts.jobs);
    rep.equal = *rep.pathsum->exact == rep.predicted;
    const auto gap = counts.gap < 0 ? -counts.gap : counts.gap;
    const auto s = rep.pathsum->signed_sum < 0 ? -rep.pathsum->signed_sum : rep.pathsum->signed_sum;
    rep.sign_consistent = s == gap;
    rep.ancilla_restored = rep.pathsum->ancilla_restored;
  } else {
    rep.sign_consistent = true;
  }
  if (opts.backend != BackendChoice::pathsum) {
    rep.dense = simulate_dense(built.circuit, opts.dense_cap);
    rep.ancilla_restored = rep.ancilla_restored && rep.dense->ancilla_restored;
    const double ref = rep.pathsum ? rep.pathsum->probability : rep.predicted.to_double();
    rep.backends_agree = std::abs(rep.dense->probability - ref) <= opts.dense_tolerance;
    if (!rep.pathsum) rep.equal = rep.backends_agree;
  }
  return rep;
}

/// Builds the circuit for `inst`, simulates it and compares with the brute-force gap.
inline VerifyReport verify_instance(const Instance& inst, LoadMode mode, const VerifyOptions& opts = {}) {
  return verify_built(build_circuit(inst, mode), oracle(inst), opts);
}

inline std::string format_counts(const GateCounts& c) {
  std::string out;
  for (const auto& kind : gate_kinds()) {
    auto it = c.find(kind);
    if (it == c.end()) continue;
    if (!out.empty()) out += ' ';
    out += kind + "=" + std::to_string(it->second);
  }
  return out.empty() ? "-" : out;
}

/// key: value report. A non-empty `timestamp` becomes the single first line.
inline std::string to_text(const VerifyReport& r, const std::string& timestamp = "") {
  std::ostringstream o;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  if (!timestamp.empty()) o << "generated: " << timestamp << '\n';
  o << "problem: " << problem_name(r.problem) << '\n';
  o << "mode: " << mode_name(r.mode) << '\n';
  o << "backend: " << backend_choice_name(r.backend) << '\n';
  o << "n: " << r.params.n << '\n';
  o << "r: " << r.params.r << '\n';
  o << "d: " << r.params.d << '\n';
  if (r.problem == Problem::threesum) o << "U: " << r.params.bound << '\n';
  if (r.problem == Problem::nwt) o << "M: " << r.params.bound << '\n';
  o << "qubits: " << r.n_qubits << '\n';
  o << "qubits_expected: " << r.expected_qubits << '\n';
  o << "denominator_exponent: " << r.denom_exponent << '\n';
  o << "oracle_s: " << r.oracle.s << '\n';
  o << "oracle_total: " << r.oracle.total << '\n';
  o << "oracle_gap: " << r.oracle.gap << '\n';
  o << "p_acc_predicted: " << r.predicted.to_fraction_string() << '\n';
  if (r.pathsum) {
    o << "p_acc_pathsum: " << r.pathsum->exact->to_fraction_string() << '\n';
    o << "signed_sum: " << r.pathsum->signed_sum << '\n';
    o << "branches: " << r.pathsum->branches << '\n';
  }
  if (r.dense) {
    std::ostringstream p;
    p.precision(17);
    p << r.dense->probability;
    o << "p_acc_dense: " << p.str() << '\n';
    o << "backends_agree: " << yes(r.backends_agree) << '\n';
  }
  o << "equal: " << yes(r.equal) << '\n';
  o << "sign_consistent: " << yes(r.sign_consistent) << '\n';
  o << "ancilla_restored: " << yes(r.ancilla_restored) << '\n';
  o << "qubits_ok: " << yes(r.qubits_ok) << '\n';
  for (const auto& [step, counts] : r.gates.per_step) {
    auto b = r.gates.table_bounds.find(step);
    o << "step_" << step << ": " << format_counts(counts) << " | bound "
      << (b == r.gates.table_bounds.end() ? "-" : format_counts(b->second)) << '\n';
  }
  o << "gates_total: " << format_counts(r.gates.totals) << '\n';
  o << "gates_ok: " << yes(r.gates.pass) << '\n';
  for (const auto& v : r.gates.violations) o << "gate_violation: " << v << '\n';
  o << "result: " << (r.pass() ? "PASS" : "FAIL") << '\n';
  return o.str();
}

inline nlohmann::ordered_json counts_json(const GateCounts& c) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& kind : gate_kinds()) {
    if (auto it = c.find(kind); it != c.end()) j[kind] = it->second;
  }
  return j;
}

inline nlohmann::ordered_json dyadic_json(const DyadicRational& d) {
  const auto red = d.reduced();
  return {{"numerator", red.numerator}, {"exponent", red.exponent}, {"fraction", red.to_fraction_string()}};
}

/// Machine-readable report (schema gapcirc-report/1).
inline nlohmann::ordered_json to_json(const VerifyReport& r, const std::string& timestamp = "") {
  nlohmann::ordered_json j;
  if (!timestamp.empty()) j["generated"] = timestamp;
  j["schema"] = "gapcirc-report/1";
  j["problem"] = problem_name(r.problem);
  j["mode"] = mode_name(r.mode);
  j["backend"] = backend_choice_name(r.backend);
  j["params"] = {{"n", r.params.n}, {"r", r.params.r}, {"d", r.params.d}, {"bound", r.params.bound}};
  j["qubits"] = {{"actual", r.n_qubits}, {"expected", r.expected_qubits}, {"ok", r.qubits_ok}};
  j["denominator_exponent"] = r.denom_exponent;
  j["oracle"] = {{"s", r.oracle.s}, {"total", r.oracle.total}, {"gap", r.oracle.gap}};
  j["p_acc_predicted"] = dyadic_json(r.predicted);
  if (r.pathsum) {
    j["pathsum"] = {{"p_acc", dyadic_json(*r.pathsum->exact)},
                    {"signed_sum", r.pathsum->signed_sum},
                    {"branches", r.pathsum->branches}};
  }
  if (r.dense) j["dense"] = {{"p_acc", r.dense->probability}, {"agrees", r.backends_agree}};
  j["equal"] = r.equal;
  j["sign_consistent"] = r.sign_consistent;
  j["ancilla_restored"] = r.ancilla_restored;
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& [step, counts] : r.gates.per_step) {
    auto b = r.gates.table_bounds.find(step);
    steps.push_back({{"step", step},
                     {"counts", counts_json(counts)},
                     {"bound", b == r.gates.table_bounds.end() ? nlohmann::ordered_json::object() : counts_json(b->second)}});
  }
  j["gates"] = {{"steps", steps},
                {"totals", counts_json(r.gates.totals)},
                {"ok", r.gates.pass},
                {"violations", r.gates.violations}};
  j["pass"] = r.pass();
  return j;
}

}  // namespace gapcirc
