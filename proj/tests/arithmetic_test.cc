// Copyright 2026 The qbilerp Authors
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

#include "qbilerp/arithmetic.h"

#include <gtest/gtest.h>

#include "qbilerp/oracle.h"
#include "qbilerp/resources.h"
#include "qbilerp/simulator.h"
#include "test_util.h"

using namespace qbilerp;
using qbilerp::testing::operand;
using qbilerp::testing::zeros;

namespace {

struct TwoOperand {
    Circuit c;
    std::vector<QubitId> a;
    std::vector<QubitId> b;
};

TwoOperand two_operand(std::size_t n) {
    TwoOperand t;
    t.a = operand(t.c, "A", n);
    t.b = operand(t.c, "B", n);
    return t;
}

ClassicalState load(const Circuit& c, const std::vector<std::pair<std::vector<QubitId>, std::uint64_t>>& values) {
    ClassicalState s(c.qubit_count());
    for (const auto& [qs, v] : values) s.write(qs, v);
    return s;
}

// All qubits outside the listed registers are zero.
bool ancillae_clear(const ClassicalState& s, const std::vector<std::vector<QubitId>>& regs) {
    std::vector<QubitId> listed;
    for (const auto& r : regs) listed.insert(listed.end(), r.begin(), r.end());
    return qbilerp::testing::same_except(s, ClassicalState(s.size()), listed);
}

void expect_statevector_agrees(const Circuit& c, const ClassicalState& in, const ClassicalState& want) {
    for (const auto& got : qbilerp::testing::branch_readouts(c, in)) {
        ASSERT_TRUE(got.has_value());
        ASSERT_EQ(*got, want);
    }
}

bool small_enough(const Circuit& c) { return expand_macros(c).qubit_count() <= 12; }

}  // namespace

TEST(arithmetic, adder_examples) {
    TwoOperand t = two_operand(3);
    build_adder(t.c, t.a, t.b);
    ClassicalState out = run_permutation(t.c, load(t.c, {{t.a, 3}, {t.b, 4}}));
    EXPECT_EQ(out.read(t.b), 7u);
    EXPECT_EQ(out.read(t.a), 3u);
    out = run_permutation(t.c, load(t.c, {{t.a, 5}, {t.b, 6}}));
    EXPECT_EQ(out.read(t.b), 3u);
}

TEST(arithmetic, adder_and_subtractor_exhaustive) {
    for (std::size_t n = 1; n <= 4; ++n) {
        TwoOperand add = two_operand(n);
        build_adder(add.c, add.a, add.b);
        TwoOperand sub = two_operand(n);
        build_subtractor(sub.c, sub.a, sub.b);
        bool sv_add = small_enough(add.c);
        bool sv_sub = small_enough(sub.c);
        for (std::uint64_t a = 0; a < (1u << n); ++a) {
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                ClassicalState in = load(add.c, {{add.a, a}, {add.b, b}});
                ClassicalState out = run_permutation(add.c, in);
                ASSERT_EQ(out.read(add.b), oracle::mod_add(b, a, static_cast<int>(n)));
                ASSERT_EQ(out.read(add.a), a);
                ASSERT_TRUE(ancillae_clear(out, {add.a, add.b}));
                if (sv_add) expect_statevector_agrees(add.c, in, out);

                ClassicalState sin = load(sub.c, {{sub.a, a}, {sub.b, b}});
                ClassicalState sout = run_permutation(sub.c, sin);
                ASSERT_EQ(sout.read(sub.b), oracle::mod_sub(b, a, static_cast<int>(n)));
                ASSERT_EQ(sout.read(sub.a), a);
                ASSERT_TRUE(ancillae_clear(sout, {sub.a, sub.b}));
                if (sv_sub) expect_statevector_agrees(sub.c, sin, sout);
            }
        }
    }
}

TEST(arithmetic, subtractor_examples) {
    TwoOperand t = two_operand(4);
    build_subtractor(t.c, t.a, t.b);
    EXPECT_EQ(run_permutation(t.c, load(t.c, {{t.a, 3}, {t.b, 5}})).read(t.b), 2u);
    EXPECT_EQ(run_permutation(t.c, load(t.c, {{t.a, 5}, {t.b, 2}})).read(t.b), 13u);
}

TEST(arithmetic, subtractor_undoes_adder) {
    for (std::size_t n = 1; n <= 4; ++n) {
        TwoOperand t = two_operand(n);
        build_adder(t.c, t.a, t.b);
        build_subtractor(t.c, t.a, t.b);
        std::vector<QubitId> both = t.a;
        both.insert(both.end(), t.b.begin(), t.b.end());
        EquivalenceVerdict v = assert_equivalence(t.c, PermutationReference{both, [](std::uint64_t x) { return x; }});
        EXPECT_TRUE(v.pass) << "n=" << n << " " << v.detail;
    }
}

TEST(arithmetic, conditional_adder_exhaustive) {
    for (std::size_t n = 1; n <= 3; ++n) {
        TwoOperand t = two_operand(n);
        QubitId ctrl = operand(t.c, "ctrl", 1)[0];
        build_conditional_adder(t.c, ctrl, t.a, t.b);
        bool sv = small_enough(t.c);
        for (std::uint64_t k = 0; k < 2; ++k) {
            for (std::uint64_t a = 0; a < (1u << n); ++a) {
                for (std::uint64_t b = 0; b < (1u << n); ++b) {
                    ClassicalState in = load(t.c, {{t.a, a}, {t.b, b}, {{ctrl}, k}});
                    ClassicalState out = run_permutation(t.c, in);
                    ASSERT_EQ(out.read(t.b), k ? oracle::mod_add(b, a, static_cast<int>(n)) : b);
                    ASSERT_EQ(out.read(t.a), a);
                    ASSERT_EQ(out.get(ctrl), k == 1);
                    ASSERT_TRUE(ancillae_clear(out, {t.a, t.b, {ctrl}}));
                    if (sv) expect_statevector_agrees(t.c, in, out);
                }
            }
        }
    }
}

TEST(arithmetic, conditional_adder_examples) {
    TwoOperand t = two_operand(3);
    QubitId ctrl = operand(t.c, "ctrl", 1)[0];
    build_conditional_adder(t.c, ctrl, t.a, t.b);
    EXPECT_EQ(run_permutation(t.c, load(t.c, {{t.a, 7}, {t.b, 1}, {{ctrl}, 0}})).read(t.b), 1u);
    EXPECT_EQ(run_permutation(t.c, load(t.c, {{t.a, 7}, {t.b, 1}, {{ctrl}, 1}})).read(t.b), 0u);
}

TEST(arithmetic, multiplier_exhaustive) {
    for (std::size_t n = 1; n <= 3; ++n) {
        TwoOperand t = two_operand(n);
        auto p = zeros(t.c, "P", 2 * n);
        build_multiplier(t.c, t.a, t.b, p);
        bool sv = small_enough(t.c);
        for (std::uint64_t a = 0; a < (1u << n); ++a) {
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                ClassicalState in = load(t.c, {{t.a, a}, {t.b, b}});
                ClassicalState out = run_permutation(t.c, in);
                ASSERT_EQ(out.read(p), oracle::mod_mul(a, b, static_cast<int>(n)));
                ASSERT_EQ(out.read(t.a), a);
                ASSERT_EQ(out.read(t.b), b);
                ASSERT_TRUE(ancillae_clear(out, {t.a, t.b, p}));
                if (sv) expect_statevector_agrees(t.c, in, out);
            }
        }
    }
}

TEST(arithmetic, multiplier_examples) {
    TwoOperand t = two_operand(2);
    auto p = zeros(t.c, "P", 4);
    build_multiplier(t.c, t.a, t.b, p);
    EXPECT_EQ(run_permutation(t.c, load(t.c, {{t.a, 3}, {t.b, 3}})).read(p), 9u);
    EXPECT_EQ(run_permutation(t.c, load(t.c, {{t.a, 0}, {t.b, 3}})).read(p), 0u);
}

TEST(arithmetic, block_t_counts) {
    for (std::size_t n : {1u, 2u, 3u, 4u, 8u}) {
        TwoOperand add = two_operand(n);
        build_adder(add.c, add.a, add.b);
        EXPECT_EQ(count_resources(add.c).t_type(), 4 * (n - 1));
        TwoOperand sub = two_operand(n);
        build_subtractor(sub.c, sub.a, sub.b);
        EXPECT_EQ(count_resources(sub.c).t_type(), 4 * n - 4);
        TwoOperand cond = two_operand(n);
        build_conditional_adder(cond.c, operand(cond.c, "ctrl", 1)[0], cond.a, cond.b);
        std::uint64_t cond_t = count_resources(cond.c).t_type();
        EXPECT_EQ(cond_t, 8 * n - 4);
        TwoOperand mul = two_operand(n);
        build_multiplier(mul.c, mul.a, mul.b, zeros(mul.c, "P", 2 * n));
        std::uint64_t mul_t = count_resources(mul.c).t_type();
        EXPECT_EQ(mul_t, 8 * n * n - 4 * n);
        EXPECT_EQ(mul_t, n * cond_t);
    }
}

TEST(arithmetic, block_records) {
    TwoOperand t = two_operand(3);
    ArithmeticBlock blk = build_adder(t.c, t.a, t.b);
    EXPECT_EQ(blk.kind, BlockKind::adder);
    EXPECT_EQ(blk.operand_width, 3u);
    EXPECT_EQ(blk.output, t.b);
    ASSERT_EQ(t.c.blocks().size(), 1u);
    EXPECT_EQ(t.c.blocks()[0].span, blk.span);
    EXPECT_EQ(blk.span.end, t.c.gates().size());
    auto p = zeros(t.c, "P", 6);
    build_multiplier(t.c, t.a, t.b, p);
    EXPECT_EQ(census(t.c), (BlockCensus{1, 0, 0, 1, 0}));
}

TEST(arithmetic, argument_errors) {
    Circuit c;
    auto a = operand(c, "A", 3);
    auto b = operand(c, "B", 2);
    auto d = operand(c, "D", 3);
    EXPECT_THROW(build_adder(c, a, b), CircuitError);
    EXPECT_THROW(build_adder(c, a, a), CircuitError);
    EXPECT_THROW(build_subtractor(c, a, b), CircuitError);
    EXPECT_THROW(build_conditional_adder(c, a[0], a, d), CircuitError);
    EXPECT_THROW(build_multiplier(c, a, d, zeros(c, "P", 5)), CircuitError);
    // Product qubits that already carry data are rejected.
    auto p = zeros(c, "Q", 6);
    c.append(Gate::x(p[0]));
    EXPECT_THROW(build_multiplier(c, a, d, p), CircuitError);
    EXPECT_THROW(build_multiplier(c, a, d, std::vector<QubitId>(d.begin(), d.end())), CircuitError);
}
