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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qbilerp {

/// Raised for malformed circuits, gates, or register bookkeeping.
class CircuitError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct QubitId {
    std::uint32_t index = 0;

    constexpr QubitId() = default;
    constexpr explicit QubitId(std::uint32_t i) : index(i) {}
    friend constexpr auto operator<=>(QubitId, QubitId) = default;
};

/// Identifier of a classical bit produced by a MeasureX gate.
struct ClassicalBit {
    std::uint32_t index = 0;

    constexpr ClassicalBit() = default;
    constexpr explicit ClassicalBit(std::uint32_t i) : index(i) {}
    friend constexpr auto operator<=>(ClassicalBit, ClassicalBit) = default;
};

using QubitSpan = std::span<const QubitId>;

enum class RegisterRole {
    position_y,
    position_x,
    color,
    constant,
    ancilla_zero,
    ancilla_magic,
    garbage,
    output,
};

std::string_view to_string(RegisterRole role);
std::optional<RegisterRole> parse_register_role(std::string_view text);

/// Named, ordered group of qubits. Position 0 is the least-significant bit.
struct Register {
    std::string name;
    std::vector<QubitId> qubits;
    RegisterRole role = RegisterRole::ancilla_zero;
    /// Gate index at which the register came into existence.
    std::size_t allocated_at = 0;
    /// Gate index at which the register was released, if it was.
    std::optional<std::size_t> released_at;

    std::size_t width() const { return qubits.size(); }
    QubitId operator[](std::size_t i) const { return qubits.at(i); }
    QubitSpan bits() const { return qubits; }
    /// Qubits [lo, hi) as a plain list.
    std::vector<QubitId> slice(std::size_t lo, std::size_t hi) const;
    bool live() const { return !released_at.has_value(); }

    bool operator==(const Register&) const = default;
};

enum class GateKind {
    X,
    H,
    S,
    T,
    Tdg,
    CNOT,
    CZ,
    TemporaryAND,
    UncomputeAND,
    Toffoli,
    MeasureX,
    ClassicallyControlledCZ,
};

std::string_view to_string(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view text);
std::size_t gate_arity(GateKind kind);
bool is_macro(GateKind kind);

/// One operation. For CNOT the operands are (control, target); for the
/// three-qubit kinds they are (control, control, target).
struct Gate {
    GateKind kind = GateKind::X;
    std::array<QubitId, 3> operands{};
    /// Produced bit for MeasureX, condition bit for ClassicallyControlledCZ.
    std::optional<ClassicalBit> cbit;

    std::size_t arity() const { return gate_arity(kind); }
    QubitSpan qubits() const { return QubitSpan(operands.data(), arity()); }
    QubitId target() const { return operands[arity() - 1]; }

    static Gate x(QubitId q) { return one(GateKind::X, q); }
    static Gate h(QubitId q) { return one(GateKind::H, q); }
    static Gate s(QubitId q) { return one(GateKind::S, q); }
    static Gate t(QubitId q) { return one(GateKind::T, q); }
    static Gate tdg(QubitId q) { return one(GateKind::Tdg, q); }
    static Gate cnot(QubitId c, QubitId t) { return two(GateKind::CNOT, c, t); }
    static Gate cz(QubitId a, QubitId b) { return two(GateKind::CZ, a, b); }
    static Gate temporary_and(QubitId a, QubitId b, QubitId t) { return three(GateKind::TemporaryAND, a, b, t); }
    static Gate uncompute_and(QubitId a, QubitId b, QubitId t) { return three(GateKind::UncomputeAND, a, b, t); }
    static Gate toffoli(QubitId a, QubitId b, QubitId t) { return three(GateKind::Toffoli, a, b, t); }
    static Gate measure_x(QubitId q, ClassicalBit bit) {
        Gate g = one(GateKind::MeasureX, q);
        g.cbit = bit;
        return g;
    }
    static Gate classically_controlled_cz(QubitId a, QubitId b, ClassicalBit bit) {
        Gate g = two(GateKind::ClassicallyControlledCZ, a, b);
        g.cbit = bit;
        return g;
    }

    bool operator==(const Gate& other) const;

   private:
    static Gate one(GateKind k, QubitId a) { return Gate{k, {a, QubitId{}, QubitId{}}, std::nullopt}; }
    static Gate two(GateKind k, QubitId a, QubitId b) { return Gate{k, {a, b, QubitId{}}, std::nullopt}; }
    static Gate three(GateKind k, QubitId a, QubitId b, QubitId c) { return Gate{k, {a, b, c}, std::nullopt}; }
};

enum class InitialState { zero, magic_A, data };

/// How |A> = (|0> + e^{i pi/4}|1>)/sqrt(2) ancillae come into being.
enum class MagicPrep {
    /// |A> is an initial state of a fresh qubit (default, strict).
    initial_state,
    /// |A> is prepared in-circuit with H then T on a zero qubit.
    gates,
};

enum class BlockKind { adder, conditional_adder, subtractor, multiplier, divider };

std::string_view to_string(BlockKind kind);
std::optional<BlockKind> parse_block_kind(std::string_view text);

/// Half-open range of gate indices.
struct GateSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool operator==(const GateSpan&) const = default;
};

/// Metadata for one functional block placed in a circuit.
struct BlockRecord {
    BlockKind kind = BlockKind::adder;
    std::size_t operand_width = 0;
    GateSpan span;
    bool operator==(const BlockRecord&) const = default;
};

/// Allocation or release of a register, in construction order.
struct RegisterEvent {
    enum class Kind { allocate, release };
    Kind kind = Kind::allocate;
    std::size_t register_index = 0;
    bool operator==(const RegisterEvent&) const = default;
};

class Circuit {
   public:
    explicit Circuit(std::size_t qubit_count = 0, MagicPrep prep = MagicPrep::initial_state);

    std::size_t qubit_count() const { return initial_states_.size(); }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<Register>& registers() const { return registers_; }
    const std::vector<BlockRecord>& blocks() const { return blocks_; }
    const std::vector<RegisterEvent>& register_events() const { return events_; }
    MagicPrep magic_prep() const { return prep_; }
    InitialState initial_state(QubitId q) const { return initial_states_.at(q.index); }
    std::uint32_t classical_bit_count() const { return next_cbit_; }

    /// Caps the total number of qubits; allocation past the cap throws.
    void set_qubit_limit(std::optional<std::size_t> limit) { qubit_limit_ = limit; }

    /// Allocates a register. Ancilla-zero requests reuse released qubits
    /// first; magic ancillae always take never-used qubits unless the
    /// circuit prepares |A> with gates.
    Register alloc_register(const std::string& name, std::size_t width, RegisterRole role);
    /// Allocation with a generated unique name.
    Register alloc_ancilla(std::size_t width, RegisterRole role);
    /// Returns the qubits of a live ancilla register to the free pool. The
    /// caller guarantees they are back in |0>.
    void release_ancilla(const std::string& name);

    const Register* find_register(std::string_view name) const;
    /// Live register owning q, if any.
    const Register* owner(QubitId q) const;

    void append(const Gate& gate);
    ClassicalBit new_classical_bit() { return ClassicalBit{next_cbit_++}; }
    void add_block(const BlockRecord& block) { blocks_.push_back(block); }

    /// True when q was never an operand of any gate so far.
    bool untouched(QubitId q) const { return !last_use_.at(q.index).has_value(); }
    /// True when q has not been touched since its owning register was allocated.
    bool clean_since_allocation(QubitId q) const;

    /// Grows the qubit pool without assigning registers.
    QubitId add_qubit(InitialState init = InitialState::zero);

    /// Index of the TemporaryAND that currently holds target's value, if any.
    std::optional<std::size_t> open_and(QubitId target) const;

    /// Verifies every invariant listed for circuits (operand ranges, magic
    /// ancilla consumption, measurement ordering, register liveness).
    /// Throws CircuitError describing the first violation.
    void validate() const;

    bool operator==(const Circuit& other) const;

    // Reconstruction hooks for the text parser.
    /// Re-creates a register over explicit qubits at the current position.
    Register restore_register(const std::string& name, std::vector<QubitId> qubits, RegisterRole role);
    void set_initial_state(QubitId q, InitialState s) { initial_states_.at(q.index) = s; }
    void set_magic_prep(MagicPrep prep) { prep_ = prep; }
    void reserve_classical_bits(std::uint32_t count);

   private:
    void check_gate(const Gate& gate) const;
    std::vector<QubitId> take_qubits(std::size_t width, RegisterRole role);

    MagicPrep prep_;
    std::vector<InitialState> initial_states_;
    std::vector<std::optional<std::size_t>> last_use_;
    std::vector<bool> ever_owned_;
    std::vector<std::optional<std::size_t>> owner_;  // index into registers_
    std::vector<std::optional<std::size_t>> open_and_;
    std::vector<QubitId> free_pool_;
    std::vector<Gate> gates_;
    std::vector<Register> registers_;
    std::vector<RegisterEvent> events_;
    std::vector<BlockRecord> blocks_;
    std::vector<bool> produced_cbits_;
    std::uint32_t next_cbit_ = 0;
    std::size_t auto_name_counter_ = 0;
    std::optional<std::size_t> qubit_limit_;
};

/// Replaces every TemporaryAND, UncomputeAND, and Toffoli with its
/// Clifford+T network. Each Toffoli receives a fresh magic ancilla appended
/// to the qubit pool. In strict mode every TemporaryAND target must be an
/// unused magic_A qubit.
Circuit expand_macros(const Circuit& circuit, bool strict = true);

bool is_primitive(const Circuit& circuit);

}  // namespace qbilerp
