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
#include <stdexcept>
#include <string>
#include <limits>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "gapcirc/circuit.hpp"
#include "gapcirc/dyadic.hpp"

namespace gapcirc {

/// Raised when a simulation would exceed a configured size limit.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Backend { pathsum, dense };

inline const char* backend_name(Backend b) { return b == Backend::pathsum ? "pathsum" : "dense"; }

inline Backend parse_backend(const std::string& s) {
  if (s == "pathsum") return Backend::pathsum;
  if (s == "dense") return Backend::dense;
  throw std::invalid_argument("unknown backend '" + s + "' (expected pathsum or dense)");
}

/// Acceptance probability of a circuit: the valid register reads 0, every X-measured qubit reads +.
struct SimOutcome {
  Backend backend = Backend::pathsum;
  std::optional<DyadicRational> exact;  // path-sum only
  double probability = 0.0;
  std::int64_t signed_sum = 0;  // path-sum: sum of signs over accepted branches
  bool ancilla_restored = true;
  std::uint64_t branches = 0;
};

namespace detail {

__extension__ using wide_uint = unsigned __int128;

inline std::uint64_t bit_of(Qubit q) { return std::uint64_t{1} << q; }

inline std::uint64_t mask_of(const std::vector<Qubit>& qs) {
  std::uint64_t m = 0;
  for (Qubit q : qs) m |= bit_of(q);
  return m;
}

// Gathers the bits of `s` at `qubits` into a little-endian integer.
inline std::uint64_t gather(std::uint64_t s, const std::vector<Qubit>& qubits) {
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) v |= ((s >> qubits[j]) & 1U) << j;
  return v;
}

inline std::uint64_t scatter(std::uint64_t v, const std::vector<Qubit>& qubits) {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) s |= ((v >> j) & 1U) << qubits[j];
  return s;
}

// Flat form of one non-H gate.
struct FlatOp {
  enum Kind { flip, phase, lookup } kind = flip;
  std::uint64_t cmask = 0;  // flip: controls; phase: qubit
  std::uint64_t tmask = 0;  // flip: targets
  std::vector<Qubit> address;
  std::vector<std::uint64_t> words;  // lookup: scattered data per address value
};

inline constexpr std::size_t kMaxLookupAddressBits = 24;

inline std::vector<FlatOp> flatten(const Circuit& circuit, std::size_t first) {
  std::vector<FlatOp> out;
  out.reserve(circuit.ops().size() - first);
  for (std::size_t i = first; i < circuit.ops().size(); ++i) {
    const Gate& g = circuit.ops()[i].gate;
    FlatOp f;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, gate::H>) {
            throw CircuitError("H gate at position " + std::to_string(i) + " follows a classical gate");
          } else if constexpr (std::is_same_v<T, gate::X>) {
            f.tmask = bit_of(v.target);
          } else if constexpr (std::is_same_v<T, gate::Z>) {
            f.kind = FlatOp::phase;
            f.cmask = bit_of(v.target);
          } else if constexpr (std::is_same_v<T, gate::CX>) {
            f.cmask = bit_of(v.control);
            f.tmask = bit_of(v.target);
          } else if constexpr (std::is_same_v<T, gate::Toffoli>) {
            f.cmask = bit_of(v.control1) | bit_of(v.control2);
            f.tmask = bit_of(v.target);
          } else if constexpr (std::is_same_v<T, gate::MCBitmask>) {
            f.cmask = mask_of(v.controls);
            for (std::size_t j = 0; j < v.targets.size(); ++j) {
              if (v.mask[j]) f.tmask |= bit_of(v.targets[j]);
            }
          } else {
            if (v.address.size() > kMaxLookupAddressBits) {
              throw ResourceCapError("QRAM address of " + std::to_string(v.address.size()) + " bits is too wide");
            }
            f.kind = FlatOp::lookup;
            f.address = v.address;
            const auto& table = circuit.table(v.table_id);
            f.words.assign(std::size_t{1} << v.address.size(), 0);
            for (const auto& [addr, word] : table.entries()) f.words[addr] = scatter(word.to_integer(), v.data);
          }
        },
        g);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace detail

/// A circuit compiled for branch enumeration: an H layer on |0...0> followed by basis gates.
class PathSum {
 public:
  explicit PathSum(const Circuit& circuit) : n_(circuit.n_qubits()) {
    if (n_ > 64) throw ResourceCapError("path-sum backend supports at most 64 qubits");
    if (!circuit.classical_after_h()) throw CircuitError("path-sum backend needs a single leading H layer");
    const std::size_t h = circuit.h_layer_size();
    for (std::size_t i = 0; i < h; ++i) h_qubits_.push_back(std::get<gate::H>(circuit.ops()[i].gate).target);
    ops_ = detail::flatten(circuit, h);
    const auto& m = circuit.measurement();
    zmask_ = detail::mask_of(m.z_qubits);
    unmeasured_ = m.unmeasured;
    x_count_ = m.x_qubits.size();
  }

  std::size_t branch_bits() const { return h_qubits_.size(); }
  std::size_t denom_exponent() const { return h_qubits_.size() + x_count_; }

  /// Final basis state and sign of branch `index` (bit j of index = value of the j-th H qubit).
  std::pair<std::uint64_t, int> evaluate_branch(std::uint64_t index) const {
    std::uint64_t s = detail::scatter(index, h_qubits_);
    int sign = 1;
    for (const auto& op : ops_) {
      switch (op.kind) {
        case detail::FlatOp::flip:
          if ((s & op.cmask) == op.cmask) s ^= op.tmask;
          break;
        case detail::FlatOp::phase:
          if (s & op.cmask) sign = -sign;
          break;
        case detail::FlatOp::lookup:
          s ^= op.words[detail::gather(s, op.address)];
          break;
      }
    }
    return {s, sign};
  }

  bool accepted(std::uint64_t state) const { return (state & zmask_) == 0; }

  SimOutcome run(unsigned jobs = 1) const {
    const std::size_t h = branch_bits();
    if (h > 40) throw ResourceCapError("path-sum: 2^" + std::to_string(h) + " branches is too many");
    if (unmeasured_.size() > 16) throw ResourceCapError("path-sum: too many unmeasured qubits");
    const std::uint64_t total = std::uint64_t{1} << h;
    const std::size_t buckets = std::size_t{1} << unmeasured_.size();
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 256))));

    std::vector<std::vector<std::int64_t>> partial(jobs, std::vector<std::int64_t>(buckets, 0));
    auto work = [&](unsigned w) {
      const std::uint64_t lo = total * w / jobs;
      const std::uint64_t hi = total * (w + 1) / jobs;
      auto& acc = partial[w];
      for (std::uint64_t b = lo; b < hi; ++b) {
        auto [s, sign] = evaluate_branch(b);
        if (accepted(s)) acc[detail::gather(s, unmeasured_)] += sign;
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }

    std::vector<std::int64_t> sums(buckets, 0);
    for (const auto& acc : partial) {
      for (std::size_t u = 0; u < buckets; ++u) sums[u] += acc[u];
    }
    SimOutcome out;
    out.backend = Backend::pathsum;
    out.branches = total;
    detail::wide_uint numerator = 0;
    for (std::size_t u = 0; u < buckets; ++u) {
      out.signed_sum += sums[u];
      if (u != 0 && sums[u] != 0) out.ancilla_restored = false;
      const auto a = static_cast<detail::wide_uint>(sums[u] < 0 ? -sums[u] : sums[u]);
      numerator += a * a;
    }
    if (numerator > std::numeric_limits<std::uint64_t>::max()) throw ResourceCapError("path-sum: numerator overflow");
    out.exact = DyadicRational{static_cast<std::uint64_t>(numerator), denom_exponent()};
    out.probability = out.exact->to_double();
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Qubit> h_qubits_;
  std::vector<detail::FlatOp> ops_;
  std::uint64_t zmask_ = 0;
  std::vector<Qubit> unmeasured_;
  std::size_t x_count_ = 0;
};

inline SimOutcome simulate_pathsum(const Circuit& circuit, unsigned jobs = 1) { return PathSum(circuit).run(jobs); }

/// Real state vector. X gates are kept in a pending XOR frame and applied lazily.
class DenseState {
 public:
  static constexpr std::size_t kDefaultCap = 22;

  explicit DenseState(std::size_t n_qubits, std::size_t cap = kDefaultCap) : n_(n_qubits) {
    if (n_qubits > cap) {
      throw ResourceCapError("dense backend: " + std::to_string(n_qubits) + " qubits exceeds cap of " +
                             std::to_string(cap));
    }
    amp_.assign(std::size_t{1} << n_qubits, 0.0);
    amp_[0] = 1.0;
  }

  std::size_t n_qubits() const { return n_; }

  /// Amplitude of basis state `index` (pending X frame included).
  double amplitude(std::uint64_t index) const { return amp_[index ^ frame_]; }

  double norm_squared() const {
    double s = 0.0;
    for (double a : amp_) s += a * a;
    return s;
  }

  void apply(const Gate& g, const Circuit& circuit) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, gate::H>) {
            apply_h(v.target);
          } else if constexpr (std::is_same_v<T, gate::X>) {
            frame_ ^= detail::bit_of(v.target);
          } else if constexpr (std::is_same_v<T, gate::Z>) {
            apply_z(v.target);
          } else if constexpr (std::is_same_v<T, gate::CX>) {
            controlled_flip(detail::bit_of(v.control), detail::bit_of(v.target));
          } else if constexpr (std::is_same_v<T, gate::Toffoli>) {
            controlled_flip(detail::bit_of(v.control1) | detail::bit_of(v.control2), detail::bit_of(v.target));
          } else if constexpr (std::is_same_v<T, gate::MCBitmask>) {
            std::uint64_t t = 0;
            for (std::size_t j = 0; j < v.targets.size(); ++j) {
              if (v.mask[j]) t |= detail::bit_of(v.targets[j]);
            }
            controlled_flip(detail::mask_of(v.controls), t);
          } else {
            apply_lookup(v, circuit);
          }
        },
        g);
  }

  void apply_h(Qubit q) {
    flush();
    const std::size_t stride = std::size_t{1} << q;
    const double k = 1.0 / std::sqrt(2.0);
    for (std::size_t base = 0; base < amp_.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const double a0 = amp_[i];
        const double a1 = amp_[i + stride];
        amp_[i] = (a0 + a1) * k;
        amp_[i + stride] = (a0 - a1) * k;
      }
    }
  }

  /// Applies the pending X frame to the stored vector.
  void flush() {
    if (frame_ == 0) return;
    const std::uint64_t high = std::bit_floor(frame_);
    for (std::uint64_t p = 0; p < amp_.size(); ++p) {
      if ((p & high) == 0) std::swap(amp_[p], amp_[p ^ frame_]);
    }
    frame_ = 0;
  }

 private:
  // Visits every stored index p with (p & fixed_mask) == fixed_value.
  template <class F>
  void for_each_fixed(std::uint64_t fixed_mask, std::uint64_t fixed_value, F&& f) {
    const std::uint64_t full = amp_.size() - 1;
    const std::uint64_t free = full & ~fixed_mask;
    std::uint64_t s = 0;
    do {
      f(s | fixed_value);
      s = (s - free) & free;
    } while (s != 0);
  }

  void apply_z(Qubit q) {
    const std::uint64_t b = detail::bit_of(q);
    for_each_fixed(b, b & ~frame_, [&](std::uint64_t p) { amp_[p] = -amp_[p]; });
  }

  // Flips `tmask` wherever every logical control bit is 1.
  void controlled_flip(std::uint64_t cmask, std::uint64_t tmask) {
    if (tmask == 0) return;
    const std::uint64_t high = std::bit_floor(tmask);
    const std::uint64_t want = cmask & ~frame_;
    for_each_fixed(cmask | high, want, [&](std::uint64_t p) { std::swap(amp_[p], amp_[p ^ tmask]); });
  }

  void apply_lookup(const gate::QramLoad& v, const Circuit& circuit) {
    if (v.address.size() > detail::kMaxLookupAddressBits) throw ResourceCapError("QRAM address too wide");
    const auto& table = circuit.table(v.table_id);
    const std::uint64_t amask = detail::mask_of(v.address);
    for (const auto& [addr, word] : table.entries()) {
      const std::uint64_t t = detail::scatter(word.to_integer(), v.data);
      if (t == 0) continue;
      const std::uint64_t high = std::bit_floor(t);
      const std::uint64_t want = (detail::scatter(addr, v.address) ^ frame_) & amask;
      for_each_fixed(amask | high, want, [&](std::uint64_t p) { std::swap(amp_[p], amp_[p ^ t]); });
    }
  }

  std::size_t n_;
  std::vector<double> amp_;
  std::uint64_t frame_ = 0;
};

/// Runs the full gate list, then reads the acceptance probability with explicit H on the X-measured qubits.
inline SimOutcome simulate_dense(const Circuit& circuit, std::size_t cap = DenseState::kDefaultCap) {
  DenseState st(circuit.n_qubits(), cap);
  for (const auto& op : circuit.ops()) st.apply(op.gate, circuit);
  const auto& m = circuit.measurement();
  for (Qubit q : m.x_qubits) st.apply_h(q);
  st.flush();
  const double norm = st.norm_squared();
  if (std::abs(norm - 1.0) > 1e-9) throw std::logic_error("dense backend: norm drifted to " + std::to_string(norm));

  SimOutcome out;
  out.backend = Backend::dense;
  const std::size_t buckets = std::size_t{1} << m.unmeasured.size();
  for (std::size_t u = 0; u < buckets; ++u) {
    const double a = st.amplitude(detail::scatter(u, m.unmeasured));
    out.probability += a * a;
    if (u != 0 && std::abs(a) > 1e-12) out.ancilla_restored = false;
  }
  return out;
}

struct SimOptions {
  Backend backend = Backend::pathsum;
  unsigned jobs = 1;
  std::size_t dense_cap = DenseState::kDefaultCap;
};

inline SimOutcome simulate(const Circuit& circuit, const SimOptions& opts = {}) {
  return opts.backend == Backend::pathsum ? simulate_pathsum(circuit, opts.jobs)
                                          : simulate_dense(circuit, opts.dense_cap);
}

}  // namespace gapcirc
