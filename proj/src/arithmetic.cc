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

#include <algorithm>
#include <initializer_list>
#include <set>

#include "qbilerp/gadgets.h"

namespace qbilerp {

namespace {

void require_disjoint(std::initializer_list<QubitSpan> spans, const char* what) {
    std::set<QubitId> seen;
    for (QubitSpan s : spans) {
        for (QubitId q : s) {
            if (!seen.insert(q).second) {
                throw CircuitError(std::string(what) + ": operand registers overlap at qubit " +
                                   std::to_string(q.index));
            }
        }
    }
}

void require_widths(QubitSpan a, QubitSpan b, const char* what) {
    if (a.empty()) {
        throw CircuitError(std::string(what) + ": operand width must be at least 1");
    }
    if (a.size() != b.size()) {
        throw CircuitError(std::string(what) + ": width mismatch (" + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()) + ")");
    }
}

ArithmeticBlock finish(Circuit& circuit, BlockKind kind, std::size_t width, std::size_t begin,
                       std::vector<std::vector<QubitId>> inputs, QubitSpan output) {
    ArithmeticBlock block{kind, width, std::move(inputs), {output.begin(), output.end()},
                          {begin, circuit.gates().size()}};
    circuit.add_block({kind, width, block.span});
    return block;
}

std::vector<QubitId> to_vec(QubitSpan s) { return {s.begin(), s.end()}; }

}  // namespace

namespace detail {

void ripple_add(Circuit& circuit, QubitSpan a, QubitSpan b, std::optional<QubitId> carry_out) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n) {
        throw CircuitError("ripple_add: width mismatch");
    }
    // carry[i] holds the carry into bit i; carry[0] is implicitly zero.
    const std::size_t ladder = carry_out ? n : n - 1;
    std::vector<QubitId> carry(ladder + 1);
    for (std::size_t i = 0; i < ladder; ++i) {
        if (i == 0) {
            carry[1] = emit_fresh_and(circuit, a[0], b[0]);
        } else {
            circuit.append(Gate::cnot(carry[i], a[i]));
            circuit.append(Gate::cnot(carry[i], b[i]));
            carry[i + 1] = emit_fresh_and(circuit, a[i], b[i]);
            circuit.append(Gate::cnot(carry[i], carry[i + 1]));
        }
    }
    if (carry_out) {
        circuit.append(Gate::cnot(carry[n], *carry_out));
    } else {
        circuit.append(Gate::cnot(a[n - 1], b[n - 1]));
        if (n > 1) {
            circuit.append(Gate::cnot(carry[n - 1], b[n - 1]));
        }
    }
    for (std::size_t k = ladder; k-- > 0;) {
        if (k == 0) {
            emit_uncompute_and_release(circuit, a[0], b[0], carry[1]);
            circuit.append(Gate::cnot(a[0], b[0]));
        } else {
            circuit.append(Gate::cnot(carry[k], carry[k + 1]));
            emit_uncompute_and_release(circuit, a[k], b[k], carry[k + 1]);
            circuit.append(Gate::cnot(carry[k], a[k]));
            circuit.append(Gate::cnot(a[k], b[k]));
        }
    }
}

}  // namespace detail

ArithmeticBlock build_adder(Circuit& circuit, QubitSpan a, QubitSpan b) {
    require_widths(a, b, "adder");
    require_disjoint({a, b}, "adder");
    std::size_t begin = circuit.gates().size();
    detail::ripple_add(circuit, a, b, std::nullopt);
    return finish(circuit, BlockKind::adder, a.size(), begin, {to_vec(a), to_vec(b)}, b);
}

ArithmeticBlock build_conditional_adder(Circuit& circuit, QubitId ctrl, QubitSpan a, QubitSpan b) {
    require_widths(a, b, "conditional adder");
    QubitSpan ctrl_span(&ctrl, 1);
    require_disjoint({ctrl_span, a, b}, "conditional adder");
    std::size_t begin = circuit.gates().size();
    std::vector<QubitId> mask;
    for (QubitId q : a) {
        mask.push_back(emit_fresh_and(circuit, ctrl, q));
    }
    detail::ripple_add(circuit, mask, b, std::nullopt);
    for (std::size_t j = a.size(); j-- > 0;) {
        emit_uncompute_and_release(circuit, ctrl, a[j], mask[j]);
    }
    return finish(circuit, BlockKind::conditional_adder, a.size(), begin, {{ctrl}, to_vec(a), to_vec(b)}, b);
}

ArithmeticBlock build_subtractor(Circuit& circuit, QubitSpan a, QubitSpan b) {
    require_widths(a, b, "subtractor");
    require_disjoint({a, b}, "subtractor");
    std::size_t begin = circuit.gates().size();
    for (QubitId q : b) {
        circuit.append(Gate::x(q));
    }
    detail::ripple_add(circuit, a, b, std::nullopt);
    for (QubitId q : b) {
        circuit.append(Gate::x(q));
    }
    return finish(circuit, BlockKind::subtractor, a.size(), begin, {to_vec(a), to_vec(b)}, b);
}

ArithmeticBlock build_multiplier(Circuit& circuit, QubitSpan a, QubitSpan b, QubitSpan product) {
    require_widths(a, b, "multiplier");
    const std::size_t n = a.size();
    if (product.size() != 2 * n) {
        throw CircuitError("multiplier: product register must have width 2n = " + std::to_string(2 * n));
    }
    require_disjoint({a, b, product}, "multiplier");
    for (QubitId q : product) {
        if (circuit.initial_state(q) == InitialState::data || !circuit.clean_since_allocation(q)) {
            throw CircuitError("multiplier: product qubit " + std::to_string(q.index) + " is not a clean zero qubit");
        }
    }
    std::size_t begin = circuit.gates().size();
    // Row 0 lands on an all-zero register, so it is a plain masked copy.
    for (std::size_t j = 0; j < n; ++j) {
        emit_toffoli(circuit, b[0], a[j], product[j]);
    }
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<QubitId> mask;
        for (QubitId q : a) {
            mask.push_back(emit_fresh_and(circuit, b[i], q));
        }
        detail::ripple_add(circuit, mask, product.subspan(i, n), product[i + n]);
        for (std::size_t j = n; j-- > 0;) {
            emit_uncompute_and_release(circuit, b[i], a[j], mask[j]);
        }
    }
    return finish(circuit, BlockKind::multiplier, n, begin, {to_vec(a), to_vec(b)}, product);
}

}  // namespace qbilerp
