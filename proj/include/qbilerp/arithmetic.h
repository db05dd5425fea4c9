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

#pragma once

#include <optional>
#include <vector>

#include "qbilerp/circuit.h"

namespace qbilerp {

/// A functional block placed into a circuit. Operand lists are LSB first.
struct ArithmeticBlock {
    BlockKind kind = BlockKind::adder;
    std::size_t operand_width = 0;
    std::vector<std::vector<QubitId>> inputs;
    std::vector<QubitId> output;
    GateSpan span;
};

/// b := (b + a) mod 2^n, a unchanged. Ripple-carry ladder of n-1
/// temporary ANDs; T-count 4(n-1).
ArithmeticBlock build_adder(Circuit& circuit, QubitSpan a, QubitSpan b);

/// ctrl ? b := (b + a) mod 2^n : b unchanged. Masks a with ctrl through n
/// ANDs, adds, then unmasks; T-count 8n-4.
ArithmeticBlock build_conditional_adder(Circuit& circuit, QubitId ctrl, QubitSpan a, QubitSpan b);

/// b := (b - a) mod 2^n as NOT(NOT(b) + a); T-count 4(n-1).
ArithmeticBlock build_subtractor(Circuit& circuit, QubitSpan a, QubitSpan b);

/// product := a·b over 2n bits by shift-and-add on successive bits of b,
/// least significant first. `product` must be clean zero qubits.
/// T-count 8n^2 - 4n.
ArithmeticBlock build_multiplier(Circuit& circuit, QubitSpan a, QubitSpan b, QubitSpan product);

namespace detail {

/// b := b + a over |b| bits; with `carry_out`, the carry of the top bit is
/// XORed into it, making (b, carry_out) an (n+1)-bit accumulator.
void ripple_add(Circuit& circuit, QubitSpan a, QubitSpan b, std::optional<QubitId> carry_out);

}  // namespace detail

}  // namespace qbilerp
