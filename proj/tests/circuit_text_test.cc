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

#include "qbilerp/circuit_text.h"

#include <gtest/gtest.h>

#include "qbilerp/arithmetic.h"
#include "qbilerp/bilerp.h"
#include "qbilerp/gadgets.h"
#include "test_util.h"

using namespace qbilerp;
using qbilerp::testing::operand;

namespace {

void expect_round_trip(const Circuit& c) {
    std::string text = emit_circuit_text(c);
    Circuit back = parse_circuit_text(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(emit_circuit_text(back), text);
}

}  // namespace

TEST(circuit_text, emit_small) {
    Circuit c;
    auto a = operand(c, "a", 2);
    c.append(Gate::cnot(a[0], a[1]));
    c.append(Gate::x(a[1]));
    EXPECT_EQ(emit_circuit_text(c), "qubits 2\nreg a color 0 1\nCNOT 0 1\nX 1\n");
}

TEST(circuit_text, round_trip_gadgets) {
    Circuit c;
    auto a = operand(c, "a", 3);
    emit_toffoli(c, a[0], a[1], a[2]);
    QubitId t = emit_fresh_and(c, a[0], a[2]);
    c.append(Gate::cnot(t, a[1]));
    emit_uncompute_and_release(c, a[0], a[2], t);
    expect_round_trip(c);
    expect_round_trip(expand_macros(c));
}

TEST(circuit_text, round_trip_gates_mode) {
    Circuit c(0, MagicPrep::gates);
    auto a = operand(c, "a", 3);
    emit_toffoli(c, a[0], a[1], a[2]);
    expect_round_trip(c);
    expect_round_trip(expand_macros(c, false));
}

TEST(circuit_text, round_trip_blocks_and_interpolation) {
    Circuit c;
    auto a = operand(c, "A", 3);
    auto b = operand(c, "B", 3);
    build_adder(c, a, b);
    build_subtractor(c, a, b);
    expect_round_trip(c);
    expect_round_trip(build_scale_down({ScaleMode::down, 2, 1, 4}).circuit);
    expect_round_trip(build_scale_up({ScaleMode::up, 1, 1, 2}).circuit);
}

TEST(circuit_text, comments_and_blank_lines) {
    Circuit c = parse_circuit_text("# test\nqubits 2\n\nreg a color 0 1  # operands\nCNOT 0 1\n");
    EXPECT_EQ(c.gates().size(), 1u);
    EXPECT_EQ(c.find_register("a")->width(), 2u);
}

TEST(circuit_text, parse_errors) {
    EXPECT_THROW(parse_circuit_text(""), CircuitError);
    EXPECT_THROW(parse_circuit_text("CNOT 0 1\n"), CircuitError);
    EXPECT_THROW(parse_circuit_text("qubits 2\nCNOT 0\n"), CircuitError);
    EXPECT_THROW(parse_circuit_text("qubits 2\nFOO 0\n"), CircuitError);
    EXPECT_THROW(parse_circuit_text("qubits 2\nX 7\n"), CircuitError);
    EXPECT_THROW(parse_circuit_text("qubits 2\nX -1\n"), CircuitError);
    EXPECT_THROW(parse_circuit_text("qubits 2\nreg a nonsense 0\n"), CircuitError);
    EXPECT_THROW(parse_circuit_text("qubits 2\nblock adder 1 0 9\n"), CircuitError);
    try {
        parse_circuit_text("qubits 2\nX 0\nCNOT 0\n");
        FAIL();
    } catch (const CircuitError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("arity mismatch"), std::string::npos);
    }
}
