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
#include <chrono>
#include <exception>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gapcirc/instance_io.hpp"
#include "gapcirc/verify.hpp"

namespace gapcirc {

/// Seed of trial `trial` at size point (a, b); a pure function of its inputs.
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t trial) {
  std::uint64_t x = base;
  for (std::uint64_t v : {a, b, trial}) {
    x ^= v + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    x ^= x >> 31;
  }
  return x;
}

/// Second size parameter: d for OV, U for 3-SUM, M for NWT.
inline Instance generate_instance(Problem p, std::size_t n, std::int64_t second, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (p) {
    case Problem::ov:
      return generate_ov(n, static_cast<std::size_t>(second), rng);
    case Problem::threesum:
      return generate_threesum(n, second, rng);
    case Problem::nwt:
      return generate_nwt(n, second, rng);
  }
  throw InstanceError("generate_instance: unknown problem");
}

/// True when `generate_instance` can produce an instance of this size.
inline bool size_feasible(Problem p, std::size_t n, std::int64_t second) {
  if (n == 0) return false;
  switch (p) {
    case Problem::ov:
      return second >= 1;
    case Problem::threesum:
      return second >= 1 && n <= static_cast<std::size_t>(2 * second + 1);
    case Problem::nwt:
      return second >= 0;
  }
  return false;
}

/// Removes the phase gate, the only gate that makes the amplitudes depend on the witnesses.
inline BuiltCircuit mutate_drop_phase(BuiltCircuit built) {
  const auto& ops = built.circuit.ops();
  for (std::size_t i = ops.size(); i-- > 0;) {
    if (std::holds_alternative<gate::Z>(ops[i].gate)) {
      built.circuit = built.circuit.without_op(i);
      return built;
    }
  }
  throw CircuitError("mutate_drop_phase: circuit has no Z gate");
}

struct SweepConfig {
  Problem problem = Problem::ov;
  std::vector<std::pair<std::size_t, std::int64_t>> sizes;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::vector<LoadMode> modes{LoadMode::qram, LoadMode::explicit_unitary};
  VerifyOptions verify;
  unsigned jobs = 1;
  bool mutate = false;
};

struct SweepRow {
  std::size_t n = 0;
  std::int64_t second = 0;
  bool feasible = true;
  std::size_t runs = 0;
  std::size_t passes = 0;
  std::size_t trials_passed = 0;  // trials whose every mode passed
  std::size_t zero_gap = 0;
  double max_gate_ratio = 0.0;
  double seconds = 0.0;
  std::vector<std::string> failures;
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  std::size_t runs = 0;
  std::size_t passes = 0;
  std::size_t trials = 0;
  std::size_t trials_passed = 0;
  bool ok() const { return runs == passes; }
};

namespace detail {

struct TrialResult {
  std::size_t runs = 0;
  std::size_t passes = 0;
  std::size_t zero_gap = 0;
  double max_ratio = 0.0;
  std::vector<std::string> failures;
};

inline TrialResult run_trial(const SweepConfig& cfg, std::size_t n, std::int64_t second, std::size_t trial) {
  TrialResult out;
  const auto seed = trial_seed(cfg.seed, n, static_cast<std::uint64_t>(second), trial);
  const auto inst = generate_instance(cfg.problem, n, second, seed);
  const auto counts = oracle(inst);
  if (counts.gap == 0) ++out.zero_gap;
  for (auto mode : cfg.modes) {
    auto built = build_circuit(inst, mode);
    if (cfg.mutate) built = mutate_drop_phase(std::move(built));
    auto opts = cfg.verify;
    opts.jobs = 1;
    const auto rep = verify_built(built, counts, opts);
    ++out.runs;
    out.max_ratio = std::max(out.max_ratio, max_bound_ratio(rep.gates));
    if (rep.pass()) {
      ++out.passes;
    } else {
      out.failures.push_back("trial " + std::to_string(trial) + " mode " + mode_name(mode) + " seed " +
                             std::to_string(seed) + " gap " + std::to_string(counts.gap));
    }
  }
  return out;
}

}  // namespace detail

/// Runs every (size, trial, mode) combination. Results are ordered by (size, trial) whatever `jobs` is.
inline SweepSummary run_sweep(const SweepConfig& cfg) {
  SweepSummary sum;
  for (const auto& [n, second] : cfg.sizes) {
    SweepRow row;
    row.n = n;
    row.second = second;
    row.feasible = size_feasible(cfg.problem, n, second);
    if (!row.feasible) {
      sum.rows.push_back(row);
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<detail::TrialResult> results(cfg.trials);
    const unsigned workers = std::max(1U, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(cfg.trials, 1))));
    if (workers == 1) {
      for (std::size_t t = 0; t < cfg.trials; ++t) results[t] = detail::run_trial(cfg, n, second, t);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t t = w; t < cfg.trials; t += workers) results[t] = detail::run_trial(cfg, n, second, t);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (auto& r : results) {
      row.runs += r.runs;
      row.passes += r.passes;
      row.trials_passed += r.passes == r.runs;
      row.zero_gap += r.zero_gap;
      row.max_gate_ratio = std::max(row.max_gate_ratio, r.max_ratio);
      for (auto& f : r.failures) row.failures.push_back(std::move(f));
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    sum.runs += row.runs;
    sum.passes += row.passes;
    sum.trials += cfg.trials;
    sum.trials_passed += row.trials_passed;
    sum.rows.push_back(std::move(row));
  }
  return sum;
}

}  // namespace gapcirc
