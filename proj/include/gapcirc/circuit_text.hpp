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
#include <sstream>
#include <string>
#include <vector>

#include "gapcirc/builders.hpp"
#include "gapcirc/circuit.hpp"

// Line-oriented circuit format. See docs/circuit-format.md.

namespace gapcirc {

/// Raised on malformed circuit text; carries the 1-based line number.
class CircuitFormatError : public std::invalid_argument {
 public:
  CircuitFormatError(std::size_t line, const std::string& what)
      : std::invalid_argument("circuit text line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string join_qubits(const std::vector<Qubit>& qs) {
  std::string s;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(qs[i]);
  }
  return s;
}

inline void write_gate(std::ostream& o, const Op& op) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gate::H>) o << "H " << v.target;
        else if constexpr (std::is_same_v<T, gate::X>) o << "X " << v.target;
        else if constexpr (std::is_same_v<T, gate::Z>) o << "Z " << v.target;
        else if constexpr (std::is_same_v<T, gate::CX>) o << "CX " << v.control << ' ' << v.target;
        else if constexpr (std::is_same_v<T, gate::Toffoli>) o << "CCX " << v.control1 << ' ' << v.control2 << ' ' << v.target;
        else if constexpr (std::is_same_v<T, gate::MCBitmask>) {
          o << "MCX c:" << join_qubits(v.controls) << " t:" << join_qubits(v.targets) << " mask:" << v.mask.to_string()
            << " anc:" << (v.ancilla ? std::to_string(*v.ancilla) : "-");
        } else {
          o << "QRAM " << v.table_id << " a:" << join_qubits(v.address) << " t:" << join_qubits(v.data);
        }
      },
      op.gate);
  o << " @" << op.step << '\n';
}

}  // namespace detail

inline std::string circuit_to_text(const Circuit& c) {
  std::ostringstream o;
  o << "gapcirc-circuit 1\n";
  o << "qubits " << c.n_qubits() << '\n';
  for (const auto& r : c.registers()) o << "reg " << r.name << ' ' << r.offset << ' ' << r.width << '\n';
  for (const auto& [id, t] : c.tables()) {
    o << "table " << id << ' ' << t.address_width() << ' ' << t.data_width() << '\n';
    for (const auto& [addr, word] : t.entries()) o << "entry " << addr << ' ' << word.to_string() << '\n';
  }
  const auto& m = c.measurement();
  if (!m.z_qubits.empty() || !m.x_qubits.empty() || !m.unmeasured.empty()) {
    o << "measure z " << detail::join_qubits(m.z_qubits) << '\n';
    o << "measure x " << detail::join_qubits(m.x_qubits) << '\n';
    o << "measure u " << detail::join_qubits(m.unmeasured) << '\n';
  }
  for (const auto& op : c.ops()) detail::write_gate(o, op);
  return o.str();
}

/// Header lines `param key value` followed by the circuit body.
inline std::string built_to_text(const BuiltCircuit& b) {
  std::ostringstream o;
  o << "param problem " << problem_name(b.problem) << '\n';
  o << "param mode " << mode_name(b.mode) << '\n';
  o << "param n " << b.params.n << '\n';
  o << "param r " << b.params.r << '\n';
  o << "param d " << b.params.d << '\n';
  o << "param bound " << b.params.bound << '\n';
  o << "param denominator_exponent " << b.denom_exponent << '\n';
  return o.str() + circuit_to_text(b.circuit);
}

namespace detail {

struct LineReader {
  std::size_t line = 0;

  [[noreturn]] void fail(const std::string& what) const { throw CircuitFormatError(line, what); }

  std::uint64_t number(const std::string& s) const {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) fail("expected a number, got '" + s + "'");
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      fail("number out of range: '" + s + "'");
    }
  }

  std::int64_t signed_number(const std::string& s) const {
    if (!s.empty() && s[0] == '-') return -static_cast<std::int64_t>(number(s.substr(1)));
    return static_cast<std::int64_t>(number(s));
  }

  std::vector<Qubit> qubit_list(const std::string& s) const {
    std::vector<Qubit> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<Qubit>(number(item)));
    return out;
  }

  // Value of a `key:value` token.
  std::string keyed(const std::string& tok, const std::string& key) const {
    if (tok.rfind(key + ":", 0) != 0) fail("expected '" + key + ":...', got '" + tok + "'");
    return tok.substr(key.size() + 1);
  }
};

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

struct ParsedText {
  Circuit circuit;
  std::vector<std::pair<std::string, std::string>> params;
};

inline ParsedText parse_text(const std::string& text) {
  ParsedText out;
  Circuit& c = out.circuit;
  LineReader rd;
  std::istringstream in(text);
  std::string raw;
  bool header = false;
  std::size_t declared = 0;
  std::vector<DataTable> tables;
  MeasurementPlan plan;
  bool have_plan = false;
  auto flush_tables = [&] {
    for (auto& t : tables) c.add_table(std::move(t));
    tables.clear();
  };
  while (std::getline(in, raw)) {
    ++rd.line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto w = split_words(raw);
    if (w.empty()) continue;
    const std::string& kw = w[0];
    try {
      if (!header) {
        if (kw == "param") {
          if (w.size() != 3) rd.fail("param takes a key and a value");
          out.params.emplace_back(w[1], w[2]);
          continue;
        }
        if (kw != "gapcirc-circuit" || w.size() != 2 || w[1] != "1") rd.fail("expected 'gapcirc-circuit 1'");
        header = true;
        continue;
      }
      if (kw == "qubits") {
        if (w.size() != 2) rd.fail("qubits takes one value");
        declared = rd.number(w[1]);
      } else if (kw == "reg") {
        if (w.size() != 4) rd.fail("reg takes name, offset, width");
        if (rd.number(w[2]) != c.n_qubits()) rd.fail("register '" + w[1] + "' offset is not contiguous");
        c.add_register(w[1], rd.number(w[3]));
      } else if (kw == "table") {
        if (w.size() != 4) rd.fail("table takes id, address width, data width");
        tables.emplace_back(w[1], rd.number(w[2]), rd.number(w[3]));
      } else if (kw == "entry") {
        if (tables.empty() || w.size() != 3) rd.fail("entry must follow a table and take address, bits");
        tables.back().store(rd.number(w[1]), BitString::parse(w[2]));
      } else if (kw == "measure") {
        if (w.size() < 2 || w.size() > 3) rd.fail("measure takes a kind and a qubit list");
        auto qs = rd.qubit_list(w.size() == 3 ? w[2] : "");
        if (w[1] == "z") plan.z_qubits = qs;
        else if (w[1] == "x") plan.x_qubits = qs;
        else if (w[1] == "u") plan.unmeasured = qs;
        else rd.fail("unknown measurement kind '" + w[1] + "'");
        have_plan = true;
      } else {
        flush_tables();
        if (declared != c.n_qubits()) rd.fail("qubit count " + std::to_string(declared) + " differs from registers");
        if (w.size() < 2 || w.back().size() < 2 || w.back()[0] != '@') rd.fail("gate line must end with @step");
        const int step = static_cast<int>(rd.signed_number(w.back().substr(1)));
        w.pop_back();
        auto need = [&](std::size_t k) {
          if (w.size() != k) rd.fail(kw + " takes " + std::to_string(k - 1) + " operands");
        };
        auto q = [&](std::size_t i) { return static_cast<Qubit>(rd.number(w[i])); };
        if (kw == "H") {
          need(2);
          c.append_tagged(gate::H{q(1)}, step);
        } else if (kw == "X") {
          need(2);
          c.append_tagged(gate::X{q(1)}, step);
        } else if (kw == "Z") {
          need(2);
          c.append_tagged(gate::Z{q(1)}, step);
        } else if (kw == "CX") {
          need(3);
          c.append_tagged(gate::CX{q(1), q(2)}, step);
        } else if (kw == "CCX") {
          need(4);
          c.append_tagged(gate::Toffoli{q(1), q(2), q(3)}, step);
        } else if (kw == "MCX") {
          need(5);
          gate::MCBitmask g{rd.qubit_list(rd.keyed(w[1], "c")), BitString::parse(rd.keyed(w[3], "mask")),
                            rd.qubit_list(rd.keyed(w[2], "t")), std::nullopt};
          const auto anc = rd.keyed(w[4], "anc");
          if (anc != "-") g.ancilla = static_cast<Qubit>(rd.number(anc));
          c.append_tagged(std::move(g), step);
        } else if (kw == "QRAM") {
          need(4);
          c.append_tagged(gate::QramLoad{rd.qubit_list(rd.keyed(w[2], "a")), rd.qubit_list(rd.keyed(w[3], "t")), w[1]},
                          step);
        } else {
          rd.fail("unknown keyword '" + kw + "'");
        }
      }
    } catch (const CircuitFormatError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      rd.fail(e.what());
    }
  }
  if (!header) throw CircuitFormatError(rd.line, "missing 'gapcirc-circuit 1' header");
  flush_tables();
  if (declared != c.n_qubits()) throw CircuitFormatError(rd.line, "qubit count differs from registers");
  if (have_plan) {
    try {
      c.set_measurement(std::move(plan));
    } catch (const std::invalid_argument& e) {
      throw CircuitFormatError(rd.line, e.what());
    }
  }
  return out;
}

}  // namespace detail

inline Circuit circuit_from_text(const std::string& text) { return detail::parse_text(text).circuit; }

/// Inverse of built_to_text.
inline BuiltCircuit built_from_text(const std::string& text) {
  auto parsed = detail::parse_text(text);
  BuiltCircuit b;
  b.circuit = std::move(parsed.circuit);
  bool seen[7] = {};
  for (const auto& [key, value] : parsed.params) {
    try {
      if (key == "problem") b.problem = parse_problem(value), seen[0] = true;
      else if (key == "mode") b.mode = parse_mode(value), seen[1] = true;
      else if (key == "n") b.params.n = std::stoull(value), seen[2] = true;
      else if (key == "r") b.params.r = std::stoull(value), seen[3] = true;
      else if (key == "d") b.params.d = std::stoull(value), seen[4] = true;
      else if (key == "bound") b.params.bound = std::stoll(value), seen[5] = true;
      else if (key == "denominator_exponent") b.denom_exponent = std::stoull(value), seen[6] = true;
      else throw CircuitFormatError(0, "unknown param '" + key + "'");
    } catch (const CircuitFormatError&) {
      throw;
    } catch (const std::exception&) {
      throw CircuitFormatError(0, "bad value for param '" + key + "'");
    }
  }
  for (bool s : seen) {
    if (!s) throw CircuitFormatError(0, "missing param header");
  }
  return b;
}

}  // namespace gapcirc
