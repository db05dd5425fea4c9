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

#include "qbilerp/circuit.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace qbilerp {

namespace {

constexpr std::array<std::string_view, 8> kRoleNames = {
    "position_y", "position_x", "color", "constant", "ancilla_zero", "ancilla_magic", "garbage", "output",
};

constexpr std::array<std::string_view, 12> kGateNames = {
    "X",    "H",   "S",  "T",           "Tdg",           "CNOT", "CZ", "TemporaryAND", "UncomputeAND",
    "Toffoli", "MeasureX", "ClassicallyControlledCZ",
};

constexpr std::array<std::string_view, 5> kBlockNames = {
    "adder", "conditional_adder", "subtractor", "multiplier", "divider",
};

bool is_data_role(RegisterRole role) {
    return role == RegisterRole::position_y || role == RegisterRole::position_x || role == RegisterRole::color;
}

bool is_ancilla_role(RegisterRole role) {
    return role == RegisterRole::ancilla_zero || role == RegisterRole::ancilla_magic;
}

std::string describe(const Gate& g) {
    std::ostringstream out;
    out << to_string(g.kind);
    for (QubitId q : g.qubits()) {
        out << ' ' << q.index;
    }
    return out.str();
}

}  // namespace

std::string_view to_string(RegisterRole role) { return kRoleNames[static_cast<std::size_t>(role)]; }

std::optional<RegisterRole> parse_register_role(std::string_view text) {
    for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
        if (kRoleNames[i] == text) {
            return static_cast<RegisterRole>(i);
        }
    }
    return std::nullopt;
}

std::string_view to_string(GateKind kind) { return kGateNames[static_cast<std::size_t>(kind)]; }

std::optional<GateKind> parse_gate_kind(std::string_view text) {
    for (std::size_t i = 0; i < kGateNames.size(); ++i) {
        if (kGateNames[i] == text) {
            return static_cast<GateKind>(i);
        }
    }
    return std::nullopt;
}

std::string_view to_string(BlockKind kind) { return kBlockNames[static_cast<std::size_t>(kind)]; }

std::optional<BlockKind> parse_block_kind(std::string_view text) {
    for (std::size_t i = 0; i < kBlockNames.size(); ++i) {
        if (kBlockNames[i] == text) {
            return static_cast<BlockKind>(i);
        }
    }
    return std::nullopt;
}

std::size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::S:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::MeasureX:
            return 1;
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::ClassicallyControlledCZ:
            return 2;
        case GateKind::TemporaryAND:
        case GateKind::UncomputeAND:
        case GateKind::Toffoli:
            return 3;
    }
    return 0;
}

bool is_macro(GateKind kind) {
    return kind == GateKind::TemporaryAND || kind == GateKind::UncomputeAND || kind == GateKind::Toffoli;
}

bool Gate::operator==(const Gate& other) const {
    if (kind != other.kind || cbit != other.cbit) {
        return false;
    }
    return std::equal(qubits().begin(), qubits().end(), other.qubits().begin());
}

std::vector<QubitId> Register::slice(std::size_t lo, std::size_t hi) const {
    if (lo > hi || hi > qubits.size()) {
        throw CircuitError("register slice out of range: " + name);
    }
    return {qubits.begin() + static_cast<std::ptrdiff_t>(lo), qubits.begin() + static_cast<std::ptrdiff_t>(hi)};
}

Circuit::Circuit(std::size_t qubit_count, MagicPrep prep)
    : prep_(prep),
      initial_states_(qubit_count, InitialState::zero),
      last_use_(qubit_count),
      ever_owned_(qubit_count, false),
      owner_(qubit_count),
      open_and_(qubit_count) {}

QubitId Circuit::add_qubit(InitialState init) {
    if (qubit_limit_ && initial_states_.size() >= *qubit_limit_) {
        throw CircuitError("ancilla pool exhausted: qubit limit " + std::to_string(*qubit_limit_));
    }
    initial_states_.push_back(init);
    last_use_.emplace_back();
    ever_owned_.push_back(false);
    owner_.emplace_back();
    open_and_.emplace_back();
    return QubitId{static_cast<std::uint32_t>(initial_states_.size() - 1)};
}

std::vector<QubitId> Circuit::take_qubits(std::size_t width, RegisterRole role) {
    std::vector<QubitId> out;
    out.reserve(width);
    bool fresh_only = is_data_role(role) || (role == RegisterRole::ancilla_magic && prep_ == MagicPrep::initial_state);
    if (!fresh_only) {
        std::sort(free_pool_.begin(), free_pool_.end());
        while (out.size() < width && !free_pool_.empty()) {
            out.push_back(free_pool_.front());
            free_pool_.erase(free_pool_.begin());
        }
    }
    for (std::size_t i = 0; i < initial_states_.size() && out.size() < width; ++i) {
        if (!ever_owned_[i] && !last_use_[i].has_value()) {
            QubitId q{static_cast<std::uint32_t>(i)};
            if (std::find(out.begin(), out.end(), q) == out.end()) {
                out.push_back(q);
            }
        }
    }
    while (out.size() < width) {
        out.push_back(add_qubit());
    }
    return out;
}

Register Circuit::alloc_register(const std::string& name, std::size_t width, RegisterRole role) {
    if (width == 0) {
        throw CircuitError("register width must be at least 1: " + name);
    }
    if (find_register(name) != nullptr) {
        throw CircuitError("duplicate register name: " + name);
    }
    return restore_register(name, take_qubits(width, role), role);
}

Register Circuit::alloc_ancilla(std::size_t width, RegisterRole role) {
    std::string name;
    do {
        name = (role == RegisterRole::ancilla_magic ? "magic" : "anc") + std::to_string(auto_name_counter_++);
    } while (find_register(name) != nullptr);
    return alloc_register(name, width, role);
}

Register Circuit::restore_register(const std::string& name, std::vector<QubitId> qubits, RegisterRole role) {
    if (qubits.empty()) {
        throw CircuitError("register width must be at least 1: " + name);
    }
    if (find_register(name) != nullptr) {
        throw CircuitError("duplicate register name: " + name);
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        QubitId q = qubits[i];
        if (q.index >= qubit_count()) {
            throw CircuitError("register qubit out of range: " + name);
        }
        if (std::find(qubits.begin(), qubits.begin() + static_cast<std::ptrdiff_t>(i), q) !=
            qubits.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw CircuitError("register qubits not distinct: " + name);
        }
        if (owner_[q.index].has_value()) {
            throw CircuitError("qubit " + std::to_string(q.index) + " already belongs to live register " +
                               registers_[*owner_[q.index]].name);
        }
    }
    std::size_t index = registers_.size();
    for (QubitId q : qubits) {
        if (!ever_owned_[q.index] && !last_use_[q.index].has_value()) {
            if (is_data_role(role)) {
                initial_states_[q.index] = InitialState::data;
            } else if (role == RegisterRole::ancilla_magic && prep_ == MagicPrep::initial_state) {
                initial_states_[q.index] = InitialState::magic_A;
            }
        }
        ever_owned_[q.index] = true;
        owner_[q.index] = index;
        std::erase(free_pool_, q);
    }
    registers_.push_back(Register{name, std::move(qubits), role, gates_.size(), std::nullopt});
    events_.push_back({RegisterEvent::Kind::allocate, index});
    return registers_.back();
}

void Circuit::release_ancilla(const std::string& name) {
    auto it = std::find_if(registers_.begin(), registers_.end(), [&](const Register& r) { return r.name == name; });
    if (it == registers_.end()) {
        throw CircuitError("unknown register: " + name);
    }
    if (!is_ancilla_role(it->role)) {
        throw CircuitError("cannot release non-ancilla register " + name + " (" + std::string(to_string(it->role)) + ")");
    }
    if (!it->live()) {
        throw CircuitError("register already released: " + name);
    }
    for (QubitId q : it->qubits) {
        if (open_and_[q.index].has_value()) {
            throw CircuitError("releasing qubit " + std::to_string(q.index) + " that still holds a logical-AND value");
        }
    }
    it->released_at = gates_.size();
    for (QubitId q : it->qubits) {
        owner_[q.index].reset();
        free_pool_.push_back(q);
    }
    events_.push_back({RegisterEvent::Kind::release, static_cast<std::size_t>(it - registers_.begin())});
}

const Register* Circuit::find_register(std::string_view name) const {
    for (const Register& r : registers_) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

const Register* Circuit::owner(QubitId q) const {
    const auto& o = owner_.at(q.index);
    return o ? &registers_[*o] : nullptr;
}

bool Circuit::clean_since_allocation(QubitId q) const {
    const auto& use = last_use_.at(q.index);
    if (!use) {
        return true;
    }
    const Register* reg = owner(q);
    return reg != nullptr && *use < reg->allocated_at;
}

std::optional<std::size_t> Circuit::open_and(QubitId target) const { return open_and_.at(target.index); }

void Circuit::reserve_classical_bits(std::uint32_t count) {
    if (count > next_cbit_) {
        next_cbit_ = count;
    }
}

void Circuit::check_gate(const Gate& gate) const {
    QubitSpan qs = gate.qubits();
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (qs[i].index >= qubit_count()) {
            throw CircuitError("operand out of range in " + describe(gate) + " (qubit count " +
                               std::to_string(qubit_count()) + ")");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (qs[i] == qs[j]) {
                throw CircuitError("duplicate operands in " + describe(gate));
            }
        }
        if (ever_owned_[qs[i].index] && !owner_[qs[i].index].has_value()) {
            throw CircuitError("operand " + std::to_string(qs[i].index) + " of " + describe(gate) +
                               " belongs to no live register");
        }
    }
    bool needs_cbit = gate.kind == GateKind::MeasureX || gate.kind == GateKind::ClassicallyControlledCZ;
    if (needs_cbit != gate.cbit.has_value()) {
        throw CircuitError("classical bit presence mismatch in " + describe(gate));
    }
    if (gate.kind == GateKind::MeasureX) {
        std::uint32_t b = gate.cbit->index;
        if (b < produced_cbits_.size() && produced_cbits_[b]) {
            throw CircuitError("classical bit " + std::to_string(b) + " produced twice");
        }
    }
    if (gate.kind == GateKind::ClassicallyControlledCZ) {
        std::uint32_t b = gate.cbit->index;
        if (b >= produced_cbits_.size() || !produced_cbits_[b]) {
            throw CircuitError("classical bit " + std::to_string(b) + " used before it is measured");
        }
    }
    // A magic ancilla's first use must be as a logical-AND target, either the
    // macro or the leading CNOT of its expanded network.
    for (std::size_t i = 0; i < qs.size(); ++i) {
        QubitId q = qs[i];
        if (initial_states_[q.index] == InitialState::magic_A && !last_use_[q.index].has_value()) {
            bool is_and_target = (gate.kind == GateKind::TemporaryAND && i == 2) || (gate.kind == GateKind::CNOT && i == 1);
            if (!is_and_target) {
                throw CircuitError("magic ancilla " + std::to_string(q.index) + " first consumed by " + describe(gate) +
                                   " instead of a TemporaryAND target");
            }
        }
    }
    if (gate.kind == GateKind::TemporaryAND && prep_ == MagicPrep::initial_state) {
        QubitId t = gate.target();
        if (initial_states_[t.index] != InitialState::magic_A || last_use_[t.index].has_value()) {
            throw CircuitError("TemporaryAND target " + std::to_string(t.index) + " is not a fresh magic_A qubit");
        }
    }
}

void Circuit::append(const Gate& gate) {
    check_gate(gate);
    std::size_t index = gates_.size();
    gates_.push_back(gate);
    for (QubitId q : gate.qubits()) {
        last_use_[q.index] = index;
    }
    if (gate.kind == GateKind::MeasureX) {
        std::uint32_t b = gate.cbit->index;
        if (produced_cbits_.size() <= b) {
            produced_cbits_.resize(b + 1, false);
        }
        produced_cbits_[b] = true;
        reserve_classical_bits(b + 1);
    } else if (gate.kind == GateKind::TemporaryAND) {
        open_and_[gate.target().index] = index;
    } else if (gate.kind == GateKind::UncomputeAND) {
        open_and_[gate.target().index].reset();
    }
}

void Circuit::validate() const {
    // Replay construction into a scratch circuit; every check runs again.
    Circuit replay(qubit_count(), prep_);
    for (std::size_t i = 0; i < qubit_count(); ++i) {
        replay.initial_states_[i] = initial_states_[i];
    }
    std::size_t next_event = 0;
    auto apply_events = [&](std::size_t until_gate) {
        while (next_event < events_.size()) {
            const RegisterEvent& ev = events_[next_event];
            const Register& reg = registers_[ev.register_index];
            std::size_t at = ev.kind == RegisterEvent::Kind::allocate ? reg.allocated_at : *reg.released_at;
            if (at > until_gate) {
                break;
            }
            if (ev.kind == RegisterEvent::Kind::allocate) {
                std::vector<InitialState> saved;
                for (QubitId q : reg.qubits) {
                    saved.push_back(replay.initial_states_.at(q.index));
                }
                replay.restore_register(reg.name, reg.qubits, reg.role);
                for (std::size_t k = 0; k < reg.qubits.size(); ++k) {
                    replay.initial_states_[reg.qubits[k].index] = saved[k];
                }
            } else {
                replay.release_ancilla(reg.name);
            }
            ++next_event;
        }
    };
    for (std::size_t g = 0; g < gates_.size(); ++g) {
        apply_events(g);
        replay.append(gates_[g]);
    }
    apply_events(gates_.size());
    for (const BlockRecord& b : blocks_) {
        if (b.span.begin > b.span.end || b.span.end > gates_.size()) {
            throw CircuitError("block span outside gate list");
        }
    }
}

bool Circuit::operator==(const Circuit& other) const {
    return prep_ == other.prep_ && initial_states_ == other.initial_states_ && gates_ == other.gates_ &&
           registers_ == other.registers_ && events_ == other.events_ && blocks_ == other.blocks_ &&
           next_cbit_ == other.next_cbit_;
}

namespace {

void emit_and_network(Circuit& out, QubitId a, QubitId b, QubitId t) {
    out.append(Gate::cnot(a, t));
    out.append(Gate::cnot(b, t));
    out.append(Gate::cnot(t, a));
    out.append(Gate::cnot(t, b));
    out.append(Gate::tdg(a));
    out.append(Gate::tdg(b));
    out.append(Gate::t(t));
    out.append(Gate::cnot(t, a));
    out.append(Gate::cnot(t, b));
    out.append(Gate::h(t));
    out.append(Gate::s(t));
}

void emit_uncompute_network(Circuit& out, QubitId a, QubitId b, QubitId t) {
    ClassicalBit m = out.new_classical_bit();
    out.append(Gate::measure_x(t, m));
    out.append(Gate::classically_controlled_cz(a, b, m));
}

}  // namespace

bool is_primitive(const Circuit& circuit) {
    return std::none_of(circuit.gates().begin(), circuit.gates().end(), [](const Gate& g) { return is_macro(g.kind); });
}

Circuit expand_macros(const Circuit& circuit, bool strict) {
    if (strict && circuit.magic_prep() == MagicPrep::initial_state) {
        for (const Gate& g : circuit.gates()) {
            if (g.kind == GateKind::TemporaryAND && circuit.initial_state(g.target()) != InitialState::magic_A) {
                throw CircuitError("TemporaryAND target " + std::to_string(g.target().index) +
                                   " is not a magic_A qubit");
            }
        }
    }
    Circuit out(circuit.qubit_count(), circuit.magic_prep());
    for (std::size_t i = 0; i < circuit.qubit_count(); ++i) {
        out.set_initial_state(QubitId{static_cast<std::uint32_t>(i)}, circuit.initial_state(QubitId{static_cast<std::uint32_t>(i)}));
    }
    out.reserve_classical_bits(circuit.classical_bit_count());

    const auto& regs = circuit.registers();
    const auto& events = circuit.register_events();
    std::size_t next_event = 0;
    auto apply_events = [&](std::size_t until_gate) {
        while (next_event < events.size()) {
            const RegisterEvent& ev = events[next_event];
            const Register& reg = regs[ev.register_index];
            std::size_t at = ev.kind == RegisterEvent::Kind::allocate ? reg.allocated_at : *reg.released_at;
            if (at > until_gate) {
                break;
            }
            if (ev.kind == RegisterEvent::Kind::allocate) {
                std::vector<InitialState> saved;
                for (QubitId q : reg.qubits) {
                    saved.push_back(out.initial_state(q));
                }
                out.restore_register(reg.name, reg.qubits, reg.role);
                for (std::size_t k = 0; k < reg.qubits.size(); ++k) {
                    out.set_initial_state(reg.qubits[k], saved[k]);
                }
            } else {
                out.release_ancilla(reg.name);
            }
            ++next_event;
        }
    };

    std::vector<std::size_t> index_map(circuit.gates().size() + 1, 0);
    std::size_t toffoli_counter = 0;
    for (std::size_t g = 0; g < circuit.gates().size(); ++g) {
        apply_events(g);
        index_map[g] = out.gates().size();
        const Gate& gate = circuit.gates()[g];
        auto [a, b, t] = gate.operands;
        switch (gate.kind) {
            case GateKind::TemporaryAND:
                emit_and_network(out, a, b, t);
                break;
            case GateKind::UncomputeAND:
                emit_uncompute_network(out, a, b, t);
                break;
            case GateKind::Toffoli: {
                std::string name;
                do {
                    name = "toffoli_anc" + std::to_string(toffoli_counter++);
                } while (out.find_register(name) != nullptr || circuit.find_register(name) != nullptr);
                bool prepare = circuit.magic_prep() == MagicPrep::gates;
                QubitId anc = out.add_qubit(prepare ? InitialState::zero : InitialState::magic_A);
                out.restore_register(name, {anc}, RegisterRole::ancilla_magic);
                if (prepare) {
                    out.append(Gate::h(anc));
                    out.append(Gate::t(anc));
                }
                emit_and_network(out, a, b, anc);
                out.append(Gate::cnot(anc, t));
                emit_uncompute_network(out, a, b, anc);
                out.release_ancilla(name);
                break;
            }
            default:
                out.append(gate);
                break;
        }
    }
    apply_events(circuit.gates().size());
    index_map[circuit.gates().size()] = out.gates().size();
    for (const BlockRecord& blk : circuit.blocks()) {
        out.add_block({blk.kind, blk.operand_width, {index_map[blk.span.begin], index_map[blk.span.end]}});
    }
    return out;
}

}  // namespace qbilerp
