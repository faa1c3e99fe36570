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

#include "gapcirc/multicontrol.hpp"
#include "support/reference.hpp"

using namespace gapcirc;

TEST(McxCost, SmallValues) {
  EXPECT_EQ(mcx_toffoli_cost(1), 1U);
  EXPECT_EQ(mcx_toffoli_cost(2), 1U);
  EXPECT_EQ(mcx_toffoli_cost(3), 4U);
  EXPECT_EQ(mcx_toffoli_cost(4), 10U);
  EXPECT_THROW(mcx_toffoli_cost(0), std::invalid_argument);
}

TEST(McxCost, MatchesEightDMinusThreeFromFiveOn) {
  for (std::size_t d = 5; d <= 40; ++d) EXPECT_EQ(mcx_toffoli_cost(d), 8 * (d - 3)) << "d=" << d;
}

TEST(McxCost, BitmaskScalesWithPopcount) {
  gate::MCBitmask g{{0, 1, 2, 3, 4}, BitString::parse("1011"), {5, 6, 7, 8}, 9};
  EXPECT_EQ(mcbitmask_toffoli_cost(g), 3 * 8U * 2U);
}

namespace {

struct Expanded {
  Circuit original;
  Circuit expanded;
};

// d controls, `targets` targets, one borrowed ancilla as the last qubit.
Expanded make(std::size_t d, const BitString& mask) {
  auto c = new_circuit({{"c", d}, {"t", mask.width()}, {"anc", 1}});
  emit_mcbitmask(c, c.reg("c").qubits(), mask, c.reg("t"), c.reg("anc")[0]);
  return {c, expand_multicontrolled(c)};
}

std::uint64_t count_toffoli(const Circuit& c) {
  std::uint64_t n = 0;
  for (const auto& op : c.ops()) {
    if (std::holds_alternative<gate::Toffoli>(op.gate) || std::holds_alternative<gate::CX>(op.gate)) ++n;
    EXPECT_FALSE(std::holds_alternative<gate::MCBitmask>(op.gate));
  }
  return n;
}

}  // namespace

class McxExpansion : public ::testing::TestWithParam<std::size_t> {};

// Exhaustive over every basis state, including both ancilla values.
TEST_P(McxExpansion, MatchesGateOnEveryBasisState) {
  const std::size_t d = GetParam();
  const auto e = make(d, BitString::parse("1"));
  const std::uint64_t states = std::uint64_t{1} << e.original.n_qubits();
  for (std::uint64_t s = 0; s < states; ++s) {
    const auto want = ref::run_classical(e.original, s);
    const auto got = ref::run_classical(e.expanded, s);
    ASSERT_EQ(got.state, want.state) << "d=" << d << " s=" << s;
  }
}

TEST_P(McxExpansion, ToffoliCountEqualsCostModel) {
  const std::size_t d = GetParam();
  EXPECT_EQ(count_toffoli(make(d, BitString::parse("1")).expanded), mcx_toffoli_cost(d));
  EXPECT_EQ(count_toffoli(make(d, BitString::parse("101")).expanded), 2 * mcx_toffoli_cost(d));
}

INSTANTIATE_TEST_SUITE_P(Controls, McxExpansion, ::testing::Range<std::size_t>(1, 12));

TEST(McxExpansionMask, MultiTargetExhaustive) {
  const auto e = make(4, BitString::parse("110"));
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << e.original.n_qubits()); ++s) {
    ASSERT_EQ(ref::run_classical(e.expanded, s).state, ref::run_classical(e.original, s).state);
  }
}

TEST(McxExpansionErrors, NeedsAncillaFromThreeControls) {
  auto c = new_circuit({{"c", 3}, {"t", 1}});
  emit_mcbitmask(c, c.reg("c").qubits(), BitString{1}, c.reg("t"), std::nullopt);
  EXPECT_THROW(expand_multicontrolled(c), CircuitError);

  auto ok = new_circuit({{"c", 2}, {"t", 1}});
  emit_mcbitmask(ok, ok.reg("c").qubits(), BitString{1}, ok.reg("t"), std::nullopt);
  EXPECT_NO_THROW(expand_multicontrolled(ok));
}

TEST(McxExpansionSteps, KeepsStepTags) {
  auto c = new_circuit({{"c", 5}, {"t", 1}, {"anc", 1}});
  c.set_step(4);
  emit_mcbitmask(c, c.reg("c").qubits(), BitString{1}, c.reg("t"), c.reg("anc")[0]);
  for (const auto& op : expand_multicontrolled(c).ops()) EXPECT_EQ(op.step, 4);
}
