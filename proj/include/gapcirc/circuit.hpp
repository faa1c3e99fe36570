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
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gapcirc/bitstring.hpp"
#include "gapcirc/data_table.hpp"

namespace gapcirc {

using Qubit = std::uint32_t;

/// Raised for malformed circuits and violated emission preconditions.
class CircuitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A named, contiguous range of qubits.
struct Register {
  std::string name;
  Qubit offset = 0;
  std::size_t width = 0;

  Qubit operator[](std::size_t j) const {
    if (j >= width) throw CircuitError("register '" + name + "': index " + std::to_string(j) + " out of range");
    return offset + static_cast<Qubit>(j);
  }

  std::vector<Qubit> qubits() const {
    std::vector<Qubit> out(width);
    for (std::size_t j = 0; j < width; ++j) out[j] = offset + static_cast<Qubit>(j);
    return out;
  }

  /// The low `count` qubits starting at `start`, as an anonymous sub-register.
  Register slice(std::size_t start, std::size_t count) const {
    if (start + count > width) throw CircuitError("register '" + name + "': slice out of range");
    return Register{name, offset + static_cast<Qubit>(start), count};
  }

  friend bool operator==(const Register&, const Register&) = default;
};

namespace gate {

struct H {
  Qubit target;
  friend bool operator==(const H&, const H&) = default;
};
struct X {
  Qubit target;
  friend bool operator==(const X&, const X&) = default;
};
struct Z {
  Qubit target;
  friend bool operator==(const Z&, const Z&) = default;
};
struct CX {
  Qubit control;
  Qubit target;
  friend bool operator==(const CX&, const CX&) = default;
};
struct Toffoli {
  Qubit control1;
  Qubit control2;
  Qubit target;
  friend bool operator==(const Toffoli&, const Toffoli&) = default;
};

/// Flips targets[j] for every j with mask[j] = 1 iff all controls are 1.
/// The ancilla is only borrowed by the Toffoli decomposition; it is never read or written here.
struct MCBitmask {
  std::vector<Qubit> controls;
  BitString mask;
  std::vector<Qubit> targets;
  std::optional<Qubit> ancilla;
  friend bool operator==(const MCBitmask&, const MCBitmask&) = default;
};

/// data ^= table[I[address]], address read little-endian from the listed qubits.
struct QramLoad {
  std::vector<Qubit> address;
  std::vector<Qubit> data;
  std::string table_id;
  friend bool operator==(const QramLoad&, const QramLoad&) = default;
};

}  // namespace gate

using Gate = std::variant<gate::H, gate::X, gate::Z, gate::CX, gate::Toffoli, gate::MCBitmask, gate::QramLoad>;

inline const char* gate_name(const Gate& g) {
  constexpr const char* names[] = {"H", "X", "Z", "CX", "CCX", "MCX", "QRAM"};
  return names[g.index()];
}

/// Every qubit a gate touches, controls first.
inline std::vector<Qubit> gate_qubits(const Gate& g) {
  return std::visit(
      [](const auto& v) -> std::vector<Qubit> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gate::CX>) {
          return {v.control, v.target};
        } else if constexpr (std::is_same_v<T, gate::Toffoli>) {
          return {v.control1, v.control2, v.target};
        } else if constexpr (std::is_same_v<T, gate::MCBitmask>) {
          std::vector<Qubit> q = v.controls;
          q.insert(q.end(), v.targets.begin(), v.targets.end());
          if (v.ancilla) q.push_back(*v.ancilla);
          return q;
        } else if constexpr (std::is_same_v<T, gate::QramLoad>) {
          std::vector<Qubit> q = v.address;
          q.insert(q.end(), v.data.begin(), v.data.end());
          return q;
        } else {
          return {v.target};
        }
      },
      g);
}

/// A gate together with the construction step that emitted it (0 = untagged).
struct Op {
  Gate gate;
  int step = 0;
  friend bool operator==(const Op&, const Op&) = default;
};

struct MeasurementPlan {
  std::vector<Qubit> z_qubits;    // accept on |0>
  std::vector<Qubit> x_qubits;    // accept on |+>
  std::vector<Qubit> unmeasured;  // traced out
  friend bool operator==(const MeasurementPlan&, const MeasurementPlan&) = default;
};

class Circuit {
 public:
  Circuit() = default;

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Register>& registers() const { return registers_; }
  const std::vector<Op>& ops() const { return ops_; }
  const std::map<std::string, DataTable>& tables() const { return tables_; }
  const MeasurementPlan& measurement() const { return measurement_; }

  const Register& reg(const std::string& name) const {
    for (const auto& r : registers_) {
      if (r.name == name) return r;
    }
    throw CircuitError("no register named '" + name + "'");
  }

  bool has_register(const std::string& name) const {
    return std::any_of(registers_.begin(), registers_.end(), [&](const Register& r) { return r.name == name; });
  }

  /// Appends a register after the existing ones.
  const Register& add_register(const std::string& name, std::size_t width) {
    if (name.empty()) throw CircuitError("register name must be nonempty");
    if (width == 0) throw CircuitError("register '" + name + "' has zero width");
    if (has_register(name)) throw CircuitError("duplicate register name '" + name + "'");
    registers_.push_back(Register{name, static_cast<Qubit>(n_qubits_), width});
    n_qubits_ += width;
    return registers_.back();
  }

  /// Gates appended after this call are tagged with `step`.
  void set_step(int step) { step_ = step; }
  int step() const { return step_; }

  void append(Gate g) { append_tagged(std::move(g), step_); }

  void append_tagged(Gate g, int step) {
    validate(g);
    ops_.push_back(Op{std::move(g), step});
  }

  void add_table(DataTable table) {
    auto it = tables_.find(table.table_id());
    if (it != tables_.end()) {
      if (!(it->second == table)) throw CircuitError("conflicting table '" + table.table_id() + "'");
      return;
    }
    auto id = table.table_id();
    tables_.emplace(std::move(id), std::move(table));
  }

  void replace_table(DataTable table) { tables_[table.table_id()] = std::move(table); }

  const DataTable& table(const std::string& id) const {
    auto it = tables_.find(id);
    if (it == tables_.end()) throw CircuitError("no data table '" + id + "'");
    return it->second;
  }

  /// Installs a measurement plan; the three sets must partition the qubits.
  void set_measurement(MeasurementPlan plan) {
    std::vector<int> seen(n_qubits_, 0);
    auto mark = [&](const std::vector<Qubit>& qs) {
      for (Qubit q : qs) {
        if (q >= n_qubits_) throw CircuitError("measurement qubit " + std::to_string(q) + " out of range");
        if (seen[q]++) throw CircuitError("qubit " + std::to_string(q) + " appears twice in measurement plan");
      }
    };
    mark(plan.z_qubits);
    mark(plan.x_qubits);
    mark(plan.unmeasured);
    for (std::size_t q = 0; q < n_qubits_; ++q) {
      if (!seen[q]) throw CircuitError("qubit " + std::to_string(q) + " missing from measurement plan");
    }
    measurement_ = std::move(plan);
  }

  /// Number of leading H gates.
  std::size_t h_layer_size() const {
    std::size_t h = 0;
    while (h < ops_.size() && std::holds_alternative<gate::H>(ops_[h].gate)) ++h;
    return h;
  }

  /// True iff no H gate follows a non-H gate and no qubit receives two layer H gates.
  bool classical_after_h() const {
    std::size_t h = h_layer_size();
    std::vector<int> hit(n_qubits_, 0);
    for (std::size_t i = 0; i < h; ++i) {
      if (hit[std::get<gate::H>(ops_[i].gate).target]++) return false;
    }
    for (std::size_t i = h; i < ops_.size(); ++i) {
      if (std::holds_alternative<gate::H>(ops_[i].gate)) return false;
    }
    return true;
  }

  /// Copy with the op at `index` removed (mutation testing).
  Circuit without_op(std::size_t index) const {
    if (index >= ops_.size()) throw CircuitError("without_op: index out of range");
    Circuit c = *this;
    c.ops_.erase(c.ops_.begin() + static_cast<std::ptrdiff_t>(index));
    return c;
  }

  /// Copy with the gate list replaced; registers, tables and measurement are kept.
  Circuit with_ops(std::vector<Op> ops) const {
    Circuit c = *this;
    c.ops_.clear();
    for (auto& op : ops) c.append_tagged(std::move(op.gate), op.step);
    return c;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_qubit(Qubit q) const {
    if (q >= n_qubits_) {
      throw CircuitError("qubit " + std::to_string(q) + " outside circuit of " + std::to_string(n_qubits_) +
                         " qubits");
    }
  }

  void validate(const Gate& g) const {
    auto qs = gate_qubits(g);
    for (Qubit q : qs) check_qubit(q);
    auto sorted = qs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw CircuitError(std::string(gate_name(g)) + " gate uses a qubit twice");
    }
    if (const auto* m = std::get_if<gate::MCBitmask>(&g)) {
      if (m->controls.empty()) throw CircuitError("MCX gate needs at least one control");
      if (m->mask.width() != m->targets.size()) throw CircuitError("MCX mask width differs from target count");
    }
    if (const auto* q = std::get_if<gate::QramLoad>(&g)) {
      const auto& t = table(q->table_id);
      if (t.address_width() != q->address.size() || t.data_width() != q->data.size()) {
        throw CircuitError("QRAM gate widths do not match table '" + q->table_id + "'");
      }
    }
  }

  std::size_t n_qubits_ = 0;
  std::vector<Register> registers_;
  std::vector<Op> ops_;
  std::map<std::string, DataTable> tables_;
  MeasurementPlan measurement_;
  int step_ = 0;
};

/// Lays registers out contiguously in declaration order.
inline Circuit new_circuit(const std::vector<std::pair<std::string, std::size_t>>& registers) {
  Circuit c;
  for (const auto& [name, width] : registers) c.add_register(name, width);
  return c;
}

/// Appends Lambda_d(X^mask): targets ^= mask iff every control is 1.
inline void emit_mcbitmask(Circuit& circuit, std::span<const Qubit> controls, const BitString& mask,
                           const Register& targets, std::optional<Qubit> ancilla) {
  if (mask.width() != targets.width) {
    throw CircuitError("emit_mcbitmask: mask width " + std::to_string(mask.width()) + " != target width " +
                       std::to_string(targets.width));
  }
  if (controls.empty()) throw CircuitError("emit_mcbitmask: no controls");
  circuit.append(gate::MCBitmask{std::vector<Qubit>(controls.begin(), controls.end()), mask, targets.qubits(),
                                 ancilla});
}

/// Applies X to every qubit of `reg` whose bit in `pattern` is 1.
inline void emit_x_pattern(Circuit& circuit, const Register& reg, const BitString& pattern) {
  if (pattern.width() != reg.width) throw CircuitError("emit_x_pattern: width mismatch on '" + reg.name + "'");
  for (std::size_t j = 0; j < reg.width; ++j) {
    if (pattern[j]) circuit.append(gate::X{reg[j]});
  }
}

/// Result of a non-H gate on one computational basis state.
struct BasisImage {
  std::uint64_t state;
  int sign;
};

/// Action of a permutation or diagonal gate on a packed basis state (qubit q = bit q).
inline BasisImage basis_action(const Gate& g, std::uint64_t s, const Circuit& circuit) {
  auto bit = [&](Qubit q) { return (s >> q) & 1U; };
  return std::visit(
      [&](const auto& v) -> BasisImage {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gate::H>) {
          throw CircuitError("basis_action: H is not a basis permutation");
        } else if constexpr (std::is_same_v<T, gate::X>) {
          return {s ^ (std::uint64_t{1} << v.target), 1};
        } else if constexpr (std::is_same_v<T, gate::Z>) {
          return {s, bit(v.target) ? -1 : 1};
        } else if constexpr (std::is_same_v<T, gate::CX>) {
          return {s ^ (std::uint64_t{bit(v.control)} << v.target), 1};
        } else if constexpr (std::is_same_v<T, gate::Toffoli>) {
          return {s ^ (std::uint64_t{bit(v.control1) & bit(v.control2)} << v.target), 1};
        } else if constexpr (std::is_same_v<T, gate::MCBitmask>) {
          for (Qubit c : v.controls) {
            if (!bit(c)) return {s, 1};
          }
          for (std::size_t j = 0; j < v.targets.size(); ++j) {
            if (v.mask[j]) s ^= std::uint64_t{1} << v.targets[j];
          }
          return {s, 1};
        } else {
          std::uint64_t address = 0;
          for (std::size_t j = 0; j < v.address.size(); ++j) address |= std::uint64_t{bit(v.address[j])} << j;
          std::uint64_t word = circuit.table(v.table_id).lookup_word(address);
          for (std::size_t j = 0; j < v.data.size(); ++j) s ^= ((word >> j) & 1U) << v.data[j];
          return {s, 1};
        }
      },
      g);
}

}  // namespace gapcirc
