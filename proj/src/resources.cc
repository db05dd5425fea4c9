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

#include <algorithm>
#include <string>

namespace qbilerp {

namespace {

bool is_ancilla(RegisterRole role) { return role == RegisterRole::ancilla_zero || role == RegisterRole::ancilla_magic; }

// Live ancilla qubit count after replaying events up to each gate. `extra`
// is added while gate i executes (Toffoli ancillae that exist only inside
// the expanded macro).
std::uint64_t high_water(const Circuit& circuit, bool toffoli_adds_one) {
    const auto& regs = circuit.registers();
    const auto& events = circuit.register_events();
    std::size_t cursor = 0;
    std::uint64_t live = 0;
    std::uint64_t best = 0;
    auto replay_until = [&](std::size_t gate_index) {
        while (cursor < events.size()) {
            const RegisterEvent& ev = events[cursor];
            const Register& r = regs[ev.register_index];
            std::size_t at = ev.kind == RegisterEvent::Kind::allocate ? r.allocated_at : *r.released_at;
            if (at > gate_index) {
                break;
            }
            if (is_ancilla(r.role)) {
                if (ev.kind == RegisterEvent::Kind::allocate) {
                    live += r.width();
                    best = std::max(best, live);
                } else {
                    live -= r.width();
                }
            }
            ++cursor;
        }
    };
    const auto& gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        replay_until(i);
        if (toffoli_adds_one && gates[i].kind == GateKind::Toffoli) {
            best = std::max(best, live + 1);
        }
    }
    replay_until(gates.size());
    return best;
}

void tally(ResourceReport& r, const Gate& g) {
    switch (g.kind) {
        case GateKind::X: ++r.x_count; break;
        case GateKind::H: ++r.h_count; break;
        case GateKind::S: ++r.s_count; break;
        case GateKind::T: ++r.t_count; break;
        case GateKind::Tdg: ++r.tdg_count; break;
        case GateKind::CNOT: ++r.cnot_count; break;
        case GateKind::CZ: ++r.cz_count; break;
        case GateKind::ClassicallyControlledCZ: ++r.cz_count; break;
        case GateKind::MeasureX:
            ++r.measurement_count;
            ++r.h_count;
            break;
        default:
            throw CircuitError("tally: unexpected macro gate " + std::string(to_string(g.kind)));
    }
}

std::uint64_t count_magic(const Circuit& circuit) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < circuit.qubit_count(); ++i) {
        if (circuit.initial_state(QubitId{static_cast<std::uint32_t>(i)}) == InitialState::magic_A) {
            ++k;
        }
    }
    return k;
}

}  // namespace

ResourceReport count_resources(const Circuit& circuit) {
    if (!is_primitive(circuit)) {
        return count_resources(expand_macros(circuit, circuit.magic_prep() == MagicPrep::initial_state));
    }
    ResourceReport r;
    for (const Gate& g : circuit.gates()) {
        tally(r, g);
    }
    r.magic_state_count = count_magic(circuit);
    r.qubit_count = circuit.qubit_count();
    r.ancilla_high_water = high_water(circuit, false);
    return r;
}

ResourceReport count_resources_macro(const Circuit& circuit) {
    ResourceReport r;
    const bool prepare = circuit.magic_prep() == MagicPrep::gates;
    auto add_and = [&r]() {
        // Network: 6 CNOT, T, 2 Tdg, H, S; the target's |A> is the fourth T.
        r.cnot_count += 6;
        r.t_count += 1;
        r.tdg_count += 2;
        r.h_count += 1;
        r.s_count += 1;
    };
    auto add_uncompute = [&r]() {
        r.measurement_count += 1;
        r.h_count += 1;
        r.cz_count += 1;
    };
    std::uint64_t toffolis = 0;
    for (const Gate& g : circuit.gates()) {
        switch (g.kind) {
            case GateKind::TemporaryAND:
                add_and();
                break;
            case GateKind::UncomputeAND:
                add_uncompute();
                break;
            case GateKind::Toffoli:
                ++toffolis;
                add_and();
                r.cnot_count += 1;
                add_uncompute();
                if (prepare) {
                    r.h_count += 1;
                    r.t_count += 1;
                } else {
                    r.magic_state_count += 1;
                }
                break;
            default:
                tally(r, g);
                break;
        }
    }
    r.magic_state_count += count_magic(circuit);
    r.qubit_count = circuit.qubit_count() + toffolis;
    r.ancilla_high_water = high_water(circuit, true);
    return r;
}

BlockCensus census(const Circuit& circuit) {
    BlockCensus c;
    for (const BlockRecord& b : circuit.blocks()) {
        switch (b.kind) {
            case BlockKind::adder: ++c.adders; break;
            case BlockKind::conditional_adder: ++c.conditional_adders; break;
            case BlockKind::subtractor: ++c.subtractors; break;
            case BlockKind::multiplier: ++c.multipliers; break;
            case BlockKind::divider: ++c.dividers; break;
        }
    }
    return c;
}

namespace {

void require_positive(std::int64_t n) {
    if (n < 1) {
        throw FormulaError("n must be >= 1, got " + std::to_string(n));
    }
}

int exact_log2(std::int64_t n) {
    if (!is_power_of_two(n)) {
        throw FormulaError("prior-work formula needs n a power of two (log2 " + std::to_string(n) +
                           " is not an integer)");
    }
    int k = 0;
    while ((std::int64_t{1} << k) < n) {
        ++k;
    }
    return k;
}

// sum_{i=1}^{log2 n} (n/2^i)(14(n + i - 2^(i-1)) - 14)
std::int64_t prior_sigma(std::int64_t n) {
    int k = exact_log2(n);
    std::int64_t s = 0;
    for (int i = 1; i <= k; ++i) {
        s += (n >> i) * (14 * (n + i - (std::int64_t{1} << (i - 1))) - 14);
    }
    return s;
}

}  // namespace

bool is_power_of_two(std::int64_t n) { return n >= 1 && (n & (n - 1)) == 0; }

std::int64_t CostModel::adder(std::int64_t n) const {
    require_positive(n);
    return variant == DesignVariant::proposed ? 4 * n : 28 * n - 14;
}

std::int64_t CostModel::subtractor(std::int64_t n) const {
    require_positive(n);
    return variant == DesignVariant::proposed ? 4 * n - 4 : 28 * n - 14;
}

std::int64_t CostModel::conditional_adder(std::int64_t n) const {
    require_positive(n);
    if (variant == DesignVariant::prior) {
        throw FormulaError("the prior design has no conditional adder formula");
    }
    return 8 * n - 4;
}

std::int64_t CostModel::multiplier(std::int64_t n) const {
    require_positive(n);
    return variant == DesignVariant::proposed ? 8 * n * n - 4 * n : 7 * n * n + prior_sigma(n);
}

std::int64_t CostModel::divider(std::int64_t n) const {
    require_positive(n);
    return variant == DesignVariant::proposed ? 0 : 400 * n * n;
}

BlockCensus CostModel::multiplicities() const {
    if (variant == DesignVariant::proposed) {
        return {3, 0, 2, 8, 0};
    }
    return {3, 0, 4, 8, 2};
}

std::int64_t formula_proposed_tcount(std::int64_t n) {
    require_positive(n);
    return 64 * n * n - 12 * n - 8;
}

std::int64_t formula_prior_tcount(std::int64_t n) {
    require_positive(n);
    return 856 * n * n + 196 * n - 98 + 8 * prior_sigma(n);
}

std::int64_t composed_tcount(const CostModel& model, std::int64_t n) {
    BlockCensus k = model.multiplicities();
    std::int64_t total = static_cast<std::int64_t>(k.adders) * model.adder(n) +
                         static_cast<std::int64_t>(k.subtractors) * model.subtractor(n) +
                         static_cast<std::int64_t>(k.multipliers) * model.multiplier(n);
    if (k.dividers > 0) {
        total += static_cast<std::int64_t>(k.dividers) * model.divider(n);
    }
    return total;
}

double improvement_ratio(std::optional<std::int64_t> n) {
    if (!n) {
        return 1.0 - 64.0 / 856.0;
    }
    return 1.0 - static_cast<double>(formula_proposed_tcount(*n)) / static_cast<double>(formula_prior_tcount(*n));
}

}  // namespace qbilerp
