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

#include "qbilerp/resources.h"

#include <gtest/gtest.h>

#include "qbilerp/arithmetic.h"
#include "qbilerp/bilerp.h"
#include "qbilerp/gadgets.h"
#include "test_util.h"

using namespace qbilerp;
using qbilerp::testing::operand;
using qbilerp::testing::zeros;

TEST(resources, empty_circuit) {
    EXPECT_EQ(count_resources(Circuit()), ResourceReport{});
    EXPECT_EQ(count_resources_macro(Circuit()), ResourceReport{});
}

TEST(resources, single_toffoli) {
    Circuit c;
    auto d = operand(c, "d", 3);
    c.append(Gate::toffoli(d[0], d[1], d[2]));
    ResourceReport r = count_resources(c);
    EXPECT_EQ(r.t_type(), 4u);
    EXPECT_EQ(r.t_count, 1u);
    EXPECT_EQ(r.tdg_count, 2u);
    EXPECT_EQ(r.magic_state_count, 1u);
    EXPECT_EQ(r.measurement_count, 1u);
    EXPECT_EQ(r.qubit_count, 4u);
    EXPECT_EQ(r.ancilla_high_water, 1u);
}

TEST(resources, adder_n4) {
    Circuit c;
    auto a = operand(c, "A", 4);
    auto b = operand(c, "B", 4);
    build_adder(c, a, b);
    std::uint64_t t = count_resources(c).t_type();
    EXPECT_EQ(t, 12u);
    EXPECT_LE(static_cast<std::int64_t>(t), CostModel::proposed().adder(4));
}

TEST(resources, macro_count_matches_expansion) {
    std::vector<Circuit> circuits;
    {
        Circuit c;
        auto a = operand(c, "A", 3);
        auto b = operand(c, "B", 3);
        build_multiplier(c, a, b, zeros(c, "P", 6));
        build_subtractor(c, a, b);
        circuits.push_back(std::move(c));
    }
    {
        Circuit c(0, MagicPrep::gates);
        auto a = operand(c, "A", 3);
        auto b = operand(c, "B", 3);
        build_conditional_adder(c, operand(c, "k", 1)[0], a, b);
        c.append(Gate::toffoli(a[0], a[1], b[2]));
        circuits.push_back(std::move(c));
    }
    circuits.push_back(build_scale_down({ScaleMode::down, 2, 1, 4}).circuit);
    circuits.push_back(build_scale_up({ScaleMode::up, 1, 2, 3}).circuit);
    for (const Circuit& c : circuits) {
        EXPECT_EQ(count_resources_macro(c), count_resources(c));
    }
}

TEST(resources, ancilla_high_water_tracks_reuse) {
    Circuit c;
    auto a = operand(c, "A", 4);
    auto b = operand(c, "B", 4);
    build_adder(c, a, b);
    // The carry ladder holds all three carries at once.
    EXPECT_EQ(count_resources(c).ancilla_high_water, 3u);
}

TEST(resources, proposed_formula_values) {
    EXPECT_EQ(formula_proposed_tcount(1), 44);
    EXPECT_EQ(formula_proposed_tcount(2), 224);
    EXPECT_EQ(formula_proposed_tcount(4), 968);
    EXPECT_THROW(formula_proposed_tcount(0), FormulaError);
}

TEST(resources, prior_formula_values) {
    EXPECT_EQ(formula_prior_tcount(1), 954);
    EXPECT_EQ(formula_prior_tcount(2), 3830);
    EXPECT_EQ(formula_prior_tcount(4), 15390);
    EXPECT_THROW(formula_prior_tcount(3), FormulaError);
    EXPECT_THROW(formula_prior_tcount(0), FormulaError);
}

TEST(resources, composition_identity) {
    for (std::int64_t n = 1; n <= 64; ++n) {
        ASSERT_EQ(composed_tcount(CostModel::proposed(), n), formula_proposed_tcount(n)) << n;
        ASSERT_EQ(3 * 4 * n + 2 * (4 * n - 4) + 8 * (8 * n * n - 4 * n), 64 * n * n - 12 * n - 8);
    }
    EXPECT_EQ(composed_tcount(CostModel::proposed(), 2), 3 * 8 + 2 * 4 + 8 * 24);
    EXPECT_EQ(composed_tcount(CostModel::proposed(), 1), 12 + 0 + 32);
    for (std::int64_t n : {1, 2, 4, 8, 16, 32, 64}) {
        EXPECT_EQ(composed_tcount(CostModel::prior(), n), formula_prior_tcount(n)) << n;
    }
}

TEST(resources, cost_model_blocks) {
    CostModel p = CostModel::proposed();
    CostModel q = CostModel::prior();
    EXPECT_EQ(p.adder(3), 12);
    EXPECT_EQ(p.subtractor(3), 8);
    EXPECT_EQ(p.conditional_adder(3), 20);
    EXPECT_EQ(p.multiplier(3), 60);
    EXPECT_EQ(p.divider(3), 0);
    EXPECT_EQ(q.adder(2), 42);
    EXPECT_EQ(q.subtractor(2), 42);
    EXPECT_EQ(q.multiplier(2), 28 + 14);
    EXPECT_EQ(q.divider(2), 1600);
    EXPECT_TRUE(q.divider_is_approximate());
    EXPECT_FALSE(p.divider_is_approximate());
    EXPECT_EQ(p.multiplicities(), (BlockCensus{3, 0, 2, 8, 0}));
    EXPECT_EQ(q.multiplicities(), (BlockCensus{3, 0, 4, 8, 2}));
}

TEST(resources, improvement_ratio) {
    EXPECT_NEAR(improvement_ratio(), 0.925233, 1e-6);
    EXPECT_NEAR(improvement_ratio(2), 1.0 - 224.0 / 3830.0, 1e-12);
    EXPECT_NEAR(improvement_ratio(2), 0.9415, 1e-4);
    EXPECT_NEAR(improvement_ratio(1), 0.9539, 1e-4);
    EXPECT_THROW(improvement_ratio(3), FormulaError);
}
