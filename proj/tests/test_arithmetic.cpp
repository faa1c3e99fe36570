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

#include "gapcirc/accountant.hpp"
#include "gapcirc/arithmetic.hpp"
#include "support/reference.hpp"

using namespace gapcirc;

namespace {

Circuit adder_circuit(std::size_t r) {
  auto c = new_circuit({{"a", r}, {"b", r + 1}, {"anc", 1}});
  emit_adder(c, ArithLayout{c.reg("anc")[0], c.reg("a"), c.reg("b"), std::nullopt});
  return c;
}

enum class Cmp { lt, leq };

Circuit comparator_circuit(std::size_t n, Cmp kind) {
  auto c = new_circuit({{"a", n}, {"b", n}, {"out", 1}, {"anc", 1}});
  ArithLayout l{c.reg("anc")[0], c.reg("a"), c.reg("b"), c.reg("out")[0]};
  if (kind == Cmp::lt) emit_comparator_lt(c, l);
  else emit_comparator_leq(c, l);
  return c;
}

}  // namespace

class ArithmeticWidth : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ArithmeticWidth, AdderAllPairs) {
  const std::size_t r = GetParam();
  const auto c = adder_circuit(r);
  const auto &a = c.reg("a"), &b = c.reg("b"), &anc = c.reg("anc");
  for (std::uint64_t x = 0; x < (1U << r); ++x) {
    for (std::uint64_t y = 0; y < (1U << r); ++y) {
      std::uint64_t s = ref::put(ref::put(0, a, x), b, y);
      const auto out = ref::run_classical(c, s);
      ASSERT_EQ(ref::get(out.state, b), x + y) << x << "+" << y;
      ASSERT_EQ(ref::get(out.state, a), x);
      ASSERT_EQ(ref::get(out.state, anc), 0U);
      ASSERT_EQ(out.sign, 1);
    }
  }
}

TEST_P(ArithmeticWidth, ComparatorsAllPairsBothOutputValues) {
  const std::size_t n = GetParam();
  for (Cmp kind : {Cmp::lt, Cmp::leq}) {
    const auto c = comparator_circuit(n, kind);
    const auto &a = c.reg("a"), &b = c.reg("b"), &o = c.reg("out"), &anc = c.reg("anc");
    for (std::uint64_t x = 0; x < (1U << n); ++x) {
      for (std::uint64_t y = 0; y < (1U << n); ++y) {
        for (std::uint64_t init : {0U, 1U}) {
          std::uint64_t s = ref::put(ref::put(ref::put(0, a, x), b, y), o, init);
          const auto out = ref::run_classical(c, s);
          // C' leaves 0 iff a < b; C leaves 0 iff a <= b.
          const std::uint64_t flag = kind == Cmp::lt ? (x >= y) : (x > y);
          ASSERT_EQ(ref::get(out.state, o), init ^ flag) << x << " vs " << y;
          ASSERT_EQ(ref::get(out.state, a), x);
          ASSERT_EQ(ref::get(out.state, b), y);
          ASSERT_EQ(ref::get(out.state, anc), 0U);
        }
      }
    }
  }
}

TEST_P(ArithmeticWidth, AdderGateTally) {
  const std::size_t r = GetParam();
  auto counts = count_gates(adder_circuit(r));
  EXPECT_EQ(counts["Toffoli"], 2 * r);
  EXPECT_EQ(counts["CX"], 4 * r + 1);
  EXPECT_EQ(counts["X"], 0U);
}

TEST_P(ArithmeticWidth, ComparatorGateTally) {
  const std::size_t n = GetParam();
  auto lt = count_gates(comparator_circuit(n, Cmp::lt));
  auto leq = count_gates(comparator_circuit(n, Cmp::leq));
  EXPECT_EQ(lt["X"], 2 * n + 2);
  EXPECT_EQ(leq["X"], 2 * n + 3);
  for (auto* m : {&lt, &leq}) {
    EXPECT_EQ((*m)["Toffoli"], 2 * n);
    EXPECT_EQ((*m)["CX"], 4 * n + 1);
  }
}

INSTANTIATE_TEST_SUITE_P(UpToSix, ArithmeticWidth, ::testing::Range<std::size_t>(1, 7));

TEST(Arithmetic, AdderRejectsBadWidths) {
  auto c = new_circuit({{"a", 3}, {"b", 3}, {"anc", 1}});
  EXPECT_THROW(emit_adder(c, ArithLayout{c.reg("anc")[0], c.reg("a"), c.reg("b"), std::nullopt}), CircuitError);
}

TEST(Arithmetic, ComparatorRejectsBadWidthsAndMissingOutput) {
  auto c = new_circuit({{"a", 3}, {"b", 2}, {"o", 1}, {"anc", 1}});
  EXPECT_THROW(emit_comparator_lt(c, ArithLayout{c.reg("anc")[0], c.reg("a"), c.reg("b"), c.reg("o")[0]}),
               CircuitError);
  auto d = new_circuit({{"a", 2}, {"b", 2}, {"anc", 1}});
  EXPECT_THROW(emit_comparator_leq(d, ArithLayout{d.reg("anc")[0], d.reg("a"), d.reg("b"), std::nullopt}),
               CircuitError);
}

TEST(Arithmetic, MajThenUmaPrimeIsIdentity) {
  auto c = new_circuit({{"q", 3}});
  emit_maj(c, 0, 1, 2);
  emit_uma_prime(c, 0, 1, 2);
  for (std::uint64_t s = 0; s < 8; ++s) EXPECT_EQ(ref::run_classical(c, s).state, s);
}

TEST(Arithmetic, MajComputesMajority) {
  auto c = new_circuit({{"q", 3}});
  emit_maj(c, 0, 1, 2);
  for (std::uint64_t s = 0; s < 8; ++s) {
    const int ones = static_cast<int>((s & 1) + ((s >> 1) & 1) + ((s >> 2) & 1));
    EXPECT_EQ((ref::run_classical(c, s).state >> 2) & 1U, ones >= 2 ? 1U : 0U);
  }
}
