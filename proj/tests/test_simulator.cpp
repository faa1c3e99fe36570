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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gapcirc/builders.hpp"
#include "gapcirc/dyadic.hpp"
#include "gapcirc/instance_io.hpp"
#include "gapcirc/simulator.hpp"

using namespace gapcirc;

TEST(Dyadic, ReducesAndComparesExactly) {
  EXPECT_EQ((DyadicRational{4, 9}), (DyadicRational{1, 7}));
  EXPECT_FALSE((DyadicRational{3, 9}) == (DyadicRational{1, 7}));
  EXPECT_EQ((DyadicRational{0, 12}), (DyadicRational{0, 0}));
  EXPECT_EQ((DyadicRational{4, 9}).to_fraction_string(), "1/128");
  EXPECT_EQ((DyadicRational{225, 32}).to_fraction_string(), "225/4294967296");
  EXPECT_EQ((DyadicRational{1, 70}).to_fraction_string(), "1/2^70");
  EXPECT_EQ((DyadicRational{8, 3}).to_fraction_string(), "1");
  EXPECT_EQ((DyadicRational{0, 5}).to_fraction_string(), "0");
  EXPECT_DOUBLE_EQ((DyadicRational{4, 9}).to_double(), 1.0 / 128);
}

TEST(PathSum, InterferenceCancels) {
  auto c = new_circuit({{"q", 1}});
  c.append(gate::H{0});
  c.set_measurement({{}, {0}, {}});
  EXPECT_EQ(*simulate_pathsum(c).exact, (DyadicRational{1, 0}));
  c.append(gate::Z{0});
  const auto out = simulate_pathsum(c);
  EXPECT_TRUE(out.exact->is_zero());
  EXPECT_EQ(out.branches, 2U);
}

TEST(PathSum, ZMeasuredQubitFiltersBranches) {
  auto c = new_circuit({{"q", 1}, {"v", 1}});
  c.append(gate::H{0});
  c.append(gate::CX{0, 1});
  c.set_measurement({{1}, {0}, {}});
  // Only the q=0 branch survives: amplitude (1/sqrt2)(1/sqrt2) -> p = 1/4.
  EXPECT_EQ(*simulate_pathsum(c).exact, (DyadicRational{1, 2}));
}

TEST(PathSum, EvaluateBranch) {
  auto c = new_circuit({{"q", 2}, {"t", 1}});
  c.append(gate::H{0});
  c.append(gate::H{1});
  c.append(gate::Toffoli{0, 1, 2});
  c.append(gate::Z{2});
  c.set_measurement({{}, {0, 1, 2}, {}});
  PathSum ps(c);
  EXPECT_EQ(ps.branch_bits(), 2U);
  auto [s, sign] = ps.evaluate_branch(3);
  EXPECT_EQ(s, 7U);
  EXPECT_EQ(sign, -1);
  auto [s0, sign0] = ps.evaluate_branch(1);
  EXPECT_EQ(s0, 1U);
  EXPECT_EQ(sign0, 1);
}

TEST(PathSum, RejectsLateHadamard) {
  auto c = new_circuit({{"q", 2}});
  c.append(gate::X{0});
  c.append(gate::H{1});
  c.set_measurement({{}, {0, 1}, {}});
  EXPECT_THROW(PathSum{c}, CircuitError);
  EXPECT_NO_THROW(simulate_dense(c));
}

TEST(PathSum, ReportsUnrestoredAncilla) {
  auto c = new_circuit({{"q", 1}, {"anc", 1}});
  c.append(gate::H{0});
  c.append(gate::CX{0, 1});
  c.set_measurement({{}, {0}, {1}});
  const auto out = simulate_pathsum(c);
  EXPECT_FALSE(out.ancilla_restored);
  // Tracing out the ancilla: two incoherent halves of 1/4 each.
  EXPECT_EQ(*out.exact, (DyadicRational{1, 1}));
  EXPECT_NEAR(simulate_dense(c).probability, 0.5, 1e-12);
}

TEST(Dense, CapIsEnforced) {
  auto c = new_circuit({{"q", 23}});
  c.set_measurement({{}, c.reg("q").qubits(), {}});
  EXPECT_THROW(simulate_dense(c), ResourceCapError);
  EXPECT_THROW(simulate_dense(c, 20), ResourceCapError);
  auto small = new_circuit({{"q", 21}});
  small.set_measurement({{}, small.reg("q").qubits(), {}});
  EXPECT_THROW(simulate_dense(small, 20), ResourceCapError);
}

TEST(Dense, PendingXFrameIsFlushedBeforeHadamard) {
  DenseState st(2);
  auto c = new_circuit({{"q", 2}});
  st.apply(gate::X{0}, c);
  st.apply(gate::H{0}, c);
  st.apply(gate::X{1}, c);
  const double k = 1 / std::sqrt(2.0);
  EXPECT_NEAR(st.amplitude(0b10), k, 1e-15);
  EXPECT_NEAR(st.amplitude(0b11), -k, 1e-15);
  EXPECT_NEAR(st.amplitude(0b00), 0, 1e-15);
  EXPECT_NEAR(st.norm_squared(), 1.0, 1e-15);
}

namespace {

// Random circuit: H layer on a prefix, then basis gates on all qubits.
Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t h) {
  auto c = new_circuit({{"q", n}});
  DataTable t("T", 2, 2);
  for (std::uint64_t a = 0; a < 4; ++a) t.store(a, BitString::from_integer(rng() % 4, 2));
  c.add_table(t);
  for (Qubit q = 0; q < h; ++q) c.append(gate::H{q});
  auto pick = [&](std::size_t k) {
    std::vector<Qubit> all(n);
    for (Qubit q = 0; q < n; ++q) all[q] = q;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    return all;
  };
  for (int g = 0; g < 40; ++g) {
    switch (rng() % 7) {
      case 0:
        c.append(gate::X{pick(1)[0]});
        break;
      case 1:
        c.append(gate::Z{pick(1)[0]});
        break;
      case 2: {
        auto q = pick(2);
        c.append(gate::CX{q[0], q[1]});
        break;
      }
      case 3: {
        auto q = pick(3);
        c.append(gate::Toffoli{q[0], q[1], q[2]});
        break;
      }
      case 4: {
        auto q = pick(5);
        c.append(gate::MCBitmask{{q[0], q[1], q[2]}, BitString::from_integer(1 + rng() % 3, 2), {q[3], q[4]}, std::nullopt});
        break;
      }
      default: {
        auto q = pick(4);
        c.append(gate::QramLoad{{q[0], q[1]}, {q[2], q[3]}, "T"});
        break;
      }
    }
  }
  auto order = pick(n);
  MeasurementPlan plan;
  const std::size_t nz = rng() % 3, nu = rng() % 3;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < nz) plan.z_qubits.push_back(order[i]);
    else if (i < nz + nu) plan.unmeasured.push_back(order[i]);
    else plan.x_qubits.push_back(order[i]);
  }
  c.set_measurement(plan);
  return c;
}

}  // namespace

TEST(BackendAgreement, RandomCircuits) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 5 + rng() % 6;
    const std::size_t h = 1 + rng() % (n - 1);
    const auto c = random_circuit(rng, n, h);
    const auto ps = simulate_pathsum(c);
    const auto dn = simulate_dense(c);
    ASSERT_NEAR(ps.probability, dn.probability, 1e-12) << "trial " << trial;
    ASSERT_EQ(ps.ancilla_restored, dn.ancilla_restored) << "trial " << trial;
  }
}

TEST(BackendAgreement, BuiltCircuits) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ov = generate_ov(1 + rng() % 4, 1 + rng() % 3, rng);
    for (auto mode : {LoadMode::qram, LoadMode::explicit_unitary}) {
      const auto b = build_circuit(ov, mode);
      ASSERT_NEAR(simulate_pathsum(b.circuit).probability, simulate_dense(b.circuit).probability, 1e-9);
    }
  }
  const auto ts = build_circuit(ThreeSumInstance{2, 1, {-1, 1}}, LoadMode::explicit_unitary);
  EXPECT_NEAR(simulate_pathsum(ts.circuit).probability, simulate_dense(ts.circuit).probability, 1e-9);
}

TEST(PathSum, JobsDoNotChangeResult) {
  std::mt19937_64 rng(13);
  const auto inst = generate_nwt(5, 2, rng);
  const auto b = build_circuit(inst, LoadMode::qram);
  const auto one = simulate_pathsum(b.circuit, 1);
  for (unsigned jobs : {2U, 3U, 8U}) {
    const auto many = simulate_pathsum(b.circuit, jobs);
    EXPECT_EQ(*many.exact, *one.exact);
    EXPECT_EQ(many.signed_sum, one.signed_sum);
  }
}

TEST(PathSum, ModesAgreeExactly) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance insts[] = {generate_ov(1 + rng() % 6, 1 + rng() % 4, rng), generate_threesum(1 + rng() % 5, 8, rng),
                              generate_nwt(2 + rng() % 4, 1 + static_cast<std::int64_t>(rng() % 3), rng)};
    for (const auto& inst : insts) {
      const auto q = simulate_pathsum(build_circuit(inst, LoadMode::qram).circuit);
      const auto e = simulate_pathsum(build_circuit(inst, LoadMode::explicit_unitary).circuit);
      EXPECT_EQ(*q.exact, *e.exact);
      EXPECT_EQ(q.signed_sum, e.signed_sum);
    }
  }
}

TEST(Backends, ParseNames) {
  EXPECT_EQ(parse_backend("pathsum"), Backend::pathsum);
  EXPECT_EQ(parse_backend("dense"), Backend::dense);
  EXPECT_THROW(parse_backend("gpu"), std::invalid_argument);
}
