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

#include <random>
#include <set>

#include "gapcirc/builders.hpp"
#include "gapcirc/instance_io.hpp"
#include "support/reference.hpp"

using namespace gapcirc;

namespace {

void expect_well_formed(const BuiltCircuit& b, std::size_t last_step) {
  const auto& c = b.circuit;
  EXPECT_TRUE(c.classical_after_h());
  EXPECT_EQ(b.denom_exponent, c.h_layer_size() + c.measurement().x_qubits.size());
  EXPECT_EQ(c.measurement().z_qubits, c.reg("valid").qubits());
  EXPECT_EQ(c.measurement().unmeasured, c.reg("anc").qubits());
  for (const auto& op : c.ops()) {
    EXPECT_GE(op.step, 1);
    EXPECT_LE(op.step, static_cast<int>(last_step));
  }
  std::size_t z = 0;
  for (const auto& op : c.ops()) {
    if (std::holds_alternative<gate::Z>(op.gate)) {
      ++z;
      EXPECT_EQ(std::get<gate::Z>(op.gate).target, c.reg("phase")[0]);
      EXPECT_EQ(op.step, static_cast<int>(last_step));
    }
  }
  EXPECT_EQ(z, 1U);
}

}  // namespace

TEST(Params, ThreeSumWidth) {
  EXPECT_EQ(derive_params_threesum({1, 1, {0}}).d, 2U);
  EXPECT_EQ(derive_params_threesum({1, 8, {0}}).d, 5U);
  EXPECT_EQ(derive_params_threesum({1, 64, {0}}).d, 8U);
  for (std::int64_t U = 1; U <= 100; ++U) {
    EXPECT_EQ(derive_params_threesum({1, U, {0}}).d, ref::width_above(static_cast<std::uint64_t>(2 * U)));
  }
}

TEST(Params, NwtWidth) {
  EXPECT_EQ(derive_params_nwt({3, 1, {}}).d, 2U);
  EXPECT_EQ(derive_params_nwt({3, 2, {}}).d, 3U);
  EXPECT_EQ(derive_params_nwt({3, 3, {}}).d, 3U);
  EXPECT_EQ(derive_params_nwt({3, 0, {}}).d, 1U);
  for (std::int64_t M = 0; M <= 100; ++M) {
    EXPECT_EQ(derive_params_nwt({3, M, {}}).d, ref::width_above(static_cast<std::uint64_t>(2 * M + 1)));
  }
}

TEST(Builders, OvQubitsAndStructure) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 9; ++n) {
    for (std::size_t d = 1; d <= 5; ++d) {
      const auto inst = generate_ov(n, d, rng);
      for (auto mode : {LoadMode::qram, LoadMode::explicit_unitary}) {
        const auto b = build_ov_circuit(inst, mode);
        const auto r = ref::index_bits(n);
        EXPECT_EQ(b.circuit.n_qubits(), ref::ov_qubits(r, d));
        EXPECT_EQ(b.denom_exponent, ref::ov_exponent(r, d));
        EXPECT_EQ(b.circuit.h_layer_size(), 2 * r);
        expect_well_formed(b, 6);
      }
    }
  }
}

TEST(Builders, ThreeSumQubitsAndStructure) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::int64_t U : {3, 8, 64}) {
      const auto inst = generate_threesum(n, U, rng);
      for (auto mode : {LoadMode::qram, LoadMode::explicit_unitary}) {
        const auto b = build_threesum_circuit(inst, mode);
        const auto r = ref::index_bits(n);
        const auto d = ref::width_above(static_cast<std::uint64_t>(2 * U));
        EXPECT_EQ(b.circuit.n_qubits(), ref::threesum_qubits(r, d));
        EXPECT_EQ(b.denom_exponent, ref::threesum_exponent(r, d));
        EXPECT_EQ(b.circuit.h_layer_size(), 3 * r);
        expect_well_formed(b, 7);
      }
    }
  }
}

TEST(Builders, NwtQubitsAndStructure) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::int64_t M : {0, 1, 2, 3}) {
      const auto inst = generate_nwt(n, M, rng);
      for (auto mode : {LoadMode::qram, LoadMode::explicit_unitary}) {
        const auto b = build_nwt_circuit(inst, mode);
        const auto r = ref::index_bits(n);
        const auto d = ref::width_above(static_cast<std::uint64_t>(2 * M + 1));
        EXPECT_EQ(b.circuit.n_qubits(), ref::nwt_qubits(r, d));
        EXPECT_EQ(b.denom_exponent, ref::nwt_exponent(r, d));
        EXPECT_EQ(b.circuit.h_layer_size(), 3 * r);
        expect_well_formed(b, 8);
      }
    }
  }
}

TEST(Builders, QramModeUsesExpectedCallCount) {
  auto count_qram = [](const BuiltCircuit& b) {
    std::size_t k = 0;
    for (const auto& op : b.circuit.ops()) k += std::holds_alternative<gate::QramLoad>(op.gate);
    return k;
  };
  OVInstance ov{2, 1, {BitString{1}, BitString{0}}, {BitString{1}, BitString{0}}};
  EXPECT_EQ(count_qram(build_ov_circuit(ov, LoadMode::qram)), 2U);
  EXPECT_EQ(count_qram(build_ov_circuit(ov, LoadMode::explicit_unitary)), 0U);
  ThreeSumInstance ts{2, 3, {-1, 2}};
  EXPECT_EQ(count_qram(build_threesum_circuit(ts, LoadMode::qram)), 3U);
  NwtInstance nw{3, 1, {{1, 2, -1}}};
  EXPECT_EQ(count_qram(build_nwt_circuit(nw, LoadMode::qram)), 3U);
  EXPECT_EQ(count_qram(build_nwt_circuit(nw, LoadMode::explicit_unitary)), 0U);
}

TEST(Builders, ExampleQubitCounts) {
  OVInstance ov{2, 1, {BitString{1}, BitString{0}}, {BitString{1}, BitString{0}}};
  EXPECT_EQ(build_circuit(ov, LoadMode::qram).circuit.n_qubits(), 10U);
  EXPECT_EQ(build_circuit(ThreeSumInstance{1, 1, {0}}, LoadMode::qram).circuit.n_qubits(), 18U);
  EXPECT_EQ(build_circuit(NwtInstance{3, 1, {{1, 2, -1}, {1, 3, -1}, {2, 3, -1}}}, LoadMode::qram).circuit.n_qubits(),
            30U);
}

TEST(Builders, RejectsInvalidInstances) {
  EXPECT_THROW(build_ov_circuit({2, 1, {BitString{1}}, {BitString{1}, BitString{0}}}, LoadMode::qram), InstanceError);
  EXPECT_THROW(build_threesum_circuit({2, 1, {1, 1}}, LoadMode::qram), InstanceError);
  EXPECT_THROW(build_threesum_circuit({1, 1, {2}}, LoadMode::qram), InstanceError);
  EXPECT_THROW(build_nwt_circuit({3, 1, {{2, 2, 0}}}, LoadMode::qram), InstanceError);
  EXPECT_THROW(build_nwt_circuit({3, 1, {{1, 2, 2}}}, LoadMode::qram), InstanceError);
  EXPECT_THROW(build_nwt_circuit({3, 1, {{1, 2, 0}, {1, 2, 1}}}, LoadMode::qram), InstanceError);
}

TEST(WMatrix, SymmetricWithSentinel) {
  NwtInstance inst{3, 2, {{1, 2, -2}, {2, 3, 1}}};
  const auto w = build_w_matrix(inst, 2);
  ASSERT_EQ(w.size(), 4U);
  EXPECT_EQ(w[0][1], 0);
  EXPECT_EQ(w[1][0], 0);
  EXPECT_EQ(w[1][2], 3);
  EXPECT_EQ(w[2][1], 3);
  EXPECT_EQ(w[0][2], 5);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(w[i][i], 5);
  EXPECT_EQ(w[3][0], 5);
  EXPECT_THROW(build_w_matrix(NwtInstance{5, 1, {}}, 2), InstanceError);
}

TEST(Modes, ParseNames) {
  EXPECT_EQ(parse_mode("qram"), LoadMode::qram);
  EXPECT_EQ(parse_mode("explicit"), LoadMode::explicit_unitary);
  EXPECT_THROW(parse_mode("both"), std::invalid_argument);
  EXPECT_STREQ(mode_name(LoadMode::explicit_unitary), "explicit");
}

TEST(HardnessTime, MonotoneInQubits) {
  EXPECT_LT(hardness_time(Problem::ov, 20, 0.1, 1), hardness_time(Problem::ov, 40, 0.1, 1));
  EXPECT_LT(hardness_time(Problem::threesum, 30, 0.1, 1), hardness_time(Problem::threesum, 60, 0.1, 1));
  EXPECT_LT(hardness_time(Problem::nwt, 40, 0.1, 1), hardness_time(Problem::nwt, 80, 0.1, 1));
  EXPECT_THROW(hardness_time(Problem::ov, 20, 0.1, -1), std::invalid_argument);
}
