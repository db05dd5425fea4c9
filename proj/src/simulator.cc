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

#include "qbilerp/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

namespace qbilerp {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
const Amplitude kEighthTurn = std::polar(1.0, std::numbers::pi / 4.0);
constexpr double kBranchEpsilon = 1e-12;

std::uint64_t bit(QubitId q) { return std::uint64_t{1} << q.index; }

const Circuit& primitive_view(const Circuit& circuit, std::optional<Circuit>& storage) {
    if (is_primitive(circuit)) {
        return circuit;
    }
    storage = expand_macros(circuit, circuit.magic_prep() == MagicPrep::initial_state);
    return *storage;
}

StateVector initial_statevector(const Circuit& expanded, const ClassicalState& input) {
    if (input.size() > expanded.qubit_count()) {
        throw SimulationError("input has " + std::to_string(input.size()) + " bits but circuit has " +
                              std::to_string(expanded.qubit_count()) + " qubits");
    }
    ClassicalState full = input.resized(expanded.qubit_count());
    StateVector sv = StateVector::basis(full);
    for (std::size_t i = 0; i < expanded.qubit_count(); ++i) {
        QubitId q{static_cast<std::uint32_t>(i)};
        if (expanded.initial_state(q) == InitialState::magic_A) {
            if (full.get(q)) {
                throw SimulationError("input bit for magic ancilla " + std::to_string(i) + " must be 0");
            }
            sv.prepare_magic(q);
        }
    }
    return sv;
}

void check_cap(const Circuit& expanded, const SimOptions& options) {
    if (expanded.qubit_count() > options.max_qubits) {
        throw SimulationError("statevector qubit cap exceeded: circuit needs " +
                              std::to_string(expanded.qubit_count()) + " qubits, cap is " +
                              std::to_string(options.max_qubits));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// ClassicalState

ClassicalState ClassicalState::from_bitstring(std::string_view text) {
    ClassicalState s(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw SimulationError("bitstring may only contain '0' and '1'");
        }
        s.bits_[i] = text[i] == '1' ? 1 : 0;
    }
    return s;
}

std::string ClassicalState::to_bitstring() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

std::uint64_t ClassicalState::read(QubitSpan qubits) const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (get(qubits[i])) {
            v |= std::uint64_t{1} << i;
        }
    }
    return v;
}

void ClassicalState::write(QubitSpan qubits, std::uint64_t value) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        set(qubits[i], i < 64 && ((value >> i) & 1U));
    }
}

ClassicalState ClassicalState::resized(std::size_t n) const {
    ClassicalState s(n);
    std::copy_n(bits_.begin(), std::min(n, bits_.size()), s.bits_.begin());
    return s;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::size_t qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count > 30) {
        throw SimulationError("statevector too large: " + std::to_string(qubit_count) + " qubits");
    }
    amps_.assign(std::size_t{1} << qubit_count, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(const ClassicalState& bits) {
    StateVector sv(bits.size());
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits.get(QubitId{static_cast<std::uint32_t>(i)})) {
            index |= std::uint64_t{1} << i;
        }
    }
    sv.amps_[0] = 0.0;
    sv.amps_[index] = 1.0;
    return sv;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const Amplitude& a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void StateVector::apply_cz(QubitId a, QubitId b) {
    std::uint64_t mask = bit(a) | bit(b);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply(const Gate& gate) {
    const std::uint64_t dim = amps_.size();
    QubitId q0 = gate.operands[0];
    std::uint64_t b0 = bit(q0);
    switch (gate.kind) {
        case GateKind::X:
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (!(i & b0)) {
                    std::swap(amps_[i], amps_[i | b0]);
                }
            }
            break;
        case GateKind::H:
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (!(i & b0)) {
                    Amplitude a = amps_[i];
                    Amplitude c = amps_[i | b0];
                    amps_[i] = (a + c) * kInvSqrt2;
                    amps_[i | b0] = (a - c) * kInvSqrt2;
                }
            }
            break;
        case GateKind::S:
        case GateKind::T:
        case GateKind::Tdg: {
            Amplitude phase = gate.kind == GateKind::S   ? Amplitude{0.0, 1.0}
                              : gate.kind == GateKind::T ? kEighthTurn
                                                         : std::conj(kEighthTurn);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & b0) {
                    amps_[i] *= phase;
                }
            }
            break;
        }
        case GateKind::CNOT: {
            std::uint64_t bt = bit(gate.operands[1]);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & b0) && !(i & bt)) {
                    std::swap(amps_[i], amps_[i | bt]);
                }
            }
            break;
        }
        case GateKind::CZ:
            apply_cz(gate.operands[0], gate.operands[1]);
            break;
        default:
            throw SimulationError("StateVector::apply: not a unitary primitive: " + std::string(to_string(gate.kind)));
    }
}

void StateVector::prepare_magic(QubitId q) {
    std::uint64_t b = bit(q);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & b)) {
            if (std::abs(amps_[i | b]) > 0.0) {
                throw SimulationError("prepare_magic: qubit " + std::to_string(q.index) + " is not |0>");
            }
            Amplitude a = amps_[i];
            amps_[i] = a * kInvSqrt2;
            amps_[i | b] = a * kInvSqrt2 * kEighthTurn;
        }
    }
}

double StateVector::x_outcome_probability(QubitId q, int outcome) const {
    std::uint64_t b = bit(q);
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & b)) {
            Amplitude proj = outcome == 0 ? (amps_[i] + amps_[i | b]) : (amps_[i] - amps_[i | b]);
            p += std::norm(proj * kInvSqrt2);
        }
    }
    return p;
}

void StateVector::project_x(QubitId q, int outcome, bool renormalize) {
    std::uint64_t b = bit(q);
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & b)) {
            Amplitude proj = (outcome == 0 ? (amps_[i] + amps_[i | b]) : (amps_[i] - amps_[i | b])) * kInvSqrt2;
            amps_[i] = proj;
            amps_[i | b] = 0.0;
            p += std::norm(proj);
        }
    }
    if (renormalize) {
        if (p < kBranchEpsilon) {
            throw SimulationError("projection onto a zero-probability outcome");
        }
        double scale = 1.0 / std::sqrt(p);
        for (Amplitude& a : amps_) {
            a *= scale;
        }
    }
}

std::size_t default_statevector_cap() {
    if (const char* env = std::getenv("QBILERP_SV_CAP")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 30) {
            return v;
        }
    }
    return 16;
}

// ---------------------------------------------------------------------------
// Statevector execution

namespace {

struct Branch {
    StateVector state;
    std::vector<std::uint8_t> cbits;
    std::vector<MeasurementRecord> record;
    double probability = 1.0;
    std::size_t next_gate = 0;
};

}  // namespace

std::vector<SimOutcome> run_statevector(const Circuit& circuit, const ClassicalState& input, BranchPolicy policy,
                                        const SimOptions& options) {
    std::optional<Circuit> storage;
    const Circuit& expanded = primitive_view(circuit, storage);
    check_cap(expanded, options);

    std::mt19937_64 rng(policy.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::vector<SimOutcome> outcomes;
    std::vector<Branch> stack;
    stack.push_back(Branch{initial_statevector(expanded, input),
                           std::vector<std::uint8_t>(expanded.classical_bit_count(), 0), {}, 1.0, 0});
    const auto& gates = expanded.gates();
    while (!stack.empty()) {
        Branch br = std::move(stack.back());
        stack.pop_back();
        bool forked = false;
        for (; br.next_gate < gates.size(); ++br.next_gate) {
            const Gate& g = gates[br.next_gate];
            if (g.kind == GateKind::MeasureX) {
                double p0 = br.state.x_outcome_probability(g.operands[0], 0);
                double p1 = br.state.x_outcome_probability(g.operands[0], 1);
                double total = p0 + p1;
                p0 /= total;
                p1 /= total;
                std::vector<int> chosen;
                if (policy.mode == BranchMode::enumerate_all) {
                    if (p0 > kBranchEpsilon) chosen.push_back(0);
                    if (p1 > kBranchEpsilon) chosen.push_back(1);
                } else {
                    chosen.push_back(uniform(rng) < p0 ? 0 : 1);
                }
                if (stack.size() + outcomes.size() + chosen.size() > options.max_branches) {
                    throw SimulationError("branch limit exceeded (" + std::to_string(options.max_branches) + ")");
                }
                // Push in reverse so outcome 0 is explored first.
                for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
                    Branch next = (std::next(it) == chosen.rend()) ? std::move(br) : br;
                    int outcome = *it;
                    double p = outcome == 0 ? p0 : p1;
                    next.state.project_x(g.operands[0], outcome, true);
                    next.cbits[g.cbit->index] = static_cast<std::uint8_t>(outcome);
                    next.record.push_back({*g.cbit, outcome, p});
                    next.probability *= p;
                    ++next.next_gate;
                    stack.push_back(std::move(next));
                }
                forked = true;
                break;
            }
            if (g.kind == GateKind::ClassicallyControlledCZ) {
                if (br.cbits[g.cbit->index]) {
                    br.state.apply_cz(g.operands[0], g.operands[1]);
                }
                continue;
            }
            br.state.apply(g);
        }
        if (forked) {
            continue;
        }
        double drift = std::abs(br.state.norm() - 1.0);
        if (drift > options.norm_tolerance) {
            throw SimulationError("norm drift " + std::to_string(drift) + " exceeds tolerance");
        }
        outcomes.push_back(SimOutcome{std::move(br.state), std::move(br.record), br.probability, policy});
    }
    return outcomes;
}

// ---------------------------------------------------------------------------
// Permutation execution

ClassicalState run_permutation(const Circuit& circuit, const ClassicalState& input, bool verify) {
    if (input.size() != circuit.qubit_count()) {
        throw SimulationError("input has " + std::to_string(input.size()) + " bits but circuit has " +
                              std::to_string(circuit.qubit_count()) + " qubits");
    }
    ClassicalState s = input;
    if (verify) {
        for (std::size_t i = 0; i < circuit.qubit_count(); ++i) {
            QubitId q{static_cast<std::uint32_t>(i)};
            if (circuit.initial_state(q) == InitialState::magic_A && s.get(q)) {
                throw SimulationError("input bit for magic ancilla " + std::to_string(i) + " must be 0");
            }
        }
    }
    const auto& gates = circuit.gates();
    for (std::size_t idx = 0; idx < gates.size(); ++idx) {
        const Gate& g = gates[idx];
        auto [a, b, t] = g.operands;
        switch (g.kind) {
            case GateKind::X:
                s.flip(a);
                break;
            case GateKind::CNOT:
                if (s.get(a)) s.flip(b);
                break;
            case GateKind::Toffoli:
                if (s.get(a) && s.get(b)) s.flip(t);
                break;
            case GateKind::TemporaryAND:
                if (verify && s.get(t)) {
                    throw SimulationError("gate " + std::to_string(idx) + ": TemporaryAND target not in |0>/|A>");
                }
                s.set(t, s.get(a) && s.get(b));
                break;
            case GateKind::UncomputeAND:
                if (verify && s.get(t) != (s.get(a) && s.get(b))) {
                    throw SimulationError("gate " + std::to_string(idx) + ": UncomputeAND target does not hold a·b");
                }
                s.set(t, false);
                break;
            default:
                throw SimulationError("gate " + std::to_string(idx) + ": " + std::string(to_string(g.kind)) +
                                      " is not a permutation-level gate");
        }
    }
    return s;
}

std::optional<ClassicalState> basis_readout(const StateVector& state, double tolerance) {
    const auto& amps = state.amplitudes();
    std::uint64_t best = 0;
    for (std::uint64_t i = 1; i < amps.size(); ++i) {
        if (std::norm(amps[i]) > std::norm(amps[best])) {
            best = i;
        }
    }
    if (std::abs(std::abs(amps[best]) - 1.0) > tolerance) {
        return std::nullopt;
    }
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i != best && std::abs(amps[i]) > tolerance) {
            return std::nullopt;
        }
    }
    ClassicalState out(state.qubit_count());
    for (std::size_t k = 0; k < state.qubit_count(); ++k) {
        out.set(QubitId{static_cast<std::uint32_t>(k)}, (best >> k) & 1U);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Equivalence

IsometryReference IsometryReference::from_permutation(std::vector<QubitId> qubits,
                                                      const std::function<std::uint64_t(std::uint64_t)>& map) {
    std::size_t dim = std::size_t{1} << qubits.size();
    IsometryReference ref{qubits, qubits, std::vector<std::vector<Amplitude>>(dim, std::vector<Amplitude>(dim))};
    for (std::size_t i = 0; i < dim; ++i) {
        std::uint64_t j = map(i);
        if (j >= dim) {
            throw SimulationError("permutation maps outside its domain");
        }
        ref.columns[i][j] = 1.0;
    }
    return ref;
}

namespace {

// Runs the primitive circuit with every measurement outcome forced by
// `outcomes` (bit k for the k-th MeasureX), without renormalizing.
StateVector run_forced(const Circuit& expanded, StateVector sv, std::uint64_t outcomes) {
    std::vector<std::uint8_t> cbits(expanded.classical_bit_count(), 0);
    std::size_t k = 0;
    for (const Gate& g : expanded.gates()) {
        if (g.kind == GateKind::MeasureX) {
            int outcome = static_cast<int>((outcomes >> k) & 1U);
            ++k;
            sv.project_x(g.operands[0], outcome, false);
            cbits[g.cbit->index] = static_cast<std::uint8_t>(outcome);
        } else if (g.kind == GateKind::ClassicallyControlledCZ) {
            if (cbits[g.cbit->index]) {
                sv.apply_cz(g.operands[0], g.operands[1]);
            }
        } else {
            sv.apply(g);
        }
    }
    return sv;
}

}  // namespace

EquivalenceVerdict assert_equivalence(const Circuit& circuit, const IsometryReference& reference, double tolerance,
                                      const SimOptions& options) {
    std::optional<Circuit> storage;
    const Circuit& expanded = primitive_view(circuit, storage);
    check_cap(expanded, options);
    const std::size_t in_dim = std::size_t{1} << reference.inputs.size();
    const std::size_t out_dim = std::size_t{1} << reference.outputs.size();
    if (reference.columns.size() != in_dim ||
        std::any_of(reference.columns.begin(), reference.columns.end(),
                    [&](const auto& col) { return col.size() != out_dim; })) {
        throw SimulationError("reference dimension mismatch");
    }
    for (QubitId q : reference.inputs) {
        if (q.index >= circuit.qubit_count()) {
            throw SimulationError("reference input qubit out of range");
        }
    }
    for (QubitId q : reference.outputs) {
        if (q.index >= circuit.qubit_count()) {
            throw SimulationError("reference output qubit out of range");
        }
    }
    std::size_t measurements = static_cast<std::size_t>(
        std::count_if(expanded.gates().begin(), expanded.gates().end(),
                      [](const Gate& g) { return g.kind == GateKind::MeasureX; }));
    if (measurements > 20 || (std::size_t{1} << measurements) > options.max_branches) {
        throw SimulationError("too many measurement branches to enumerate: " + std::to_string(measurements) +
                              " measurements");
    }

    // Reference entry with the largest magnitude fixes the phase alignment.
    std::size_t pivot_in = 0;
    std::size_t pivot_out = 0;
    for (std::size_t i = 0; i < in_dim; ++i) {
        for (std::size_t o = 0; o < out_dim; ++o) {
            if (std::abs(reference.columns[i][o]) > std::abs(reference.columns[pivot_in][pivot_out]) + 1e-12) {
                pivot_in = i;
                pivot_out = o;
            }
        }
    }

    std::uint64_t output_mask = 0;
    for (QubitId q : reference.outputs) {
        output_mask |= bit(q);
    }

    EquivalenceVerdict verdict{true, 0.0, 0, ""};
    for (std::uint64_t seq = 0; seq < (std::uint64_t{1} << measurements); ++seq) {
        std::vector<std::vector<Amplitude>> kraus(in_dim, std::vector<Amplitude>(out_dim));
        double leak = 0.0;
        double weight = 0.0;
        for (std::size_t i = 0; i < in_dim; ++i) {
            ClassicalState in(expanded.qubit_count());
            for (std::size_t k = 0; k < reference.inputs.size(); ++k) {
                in.set(reference.inputs[k], (i >> k) & 1U);
            }
            StateVector sv = run_forced(expanded, initial_statevector(expanded, in), seq);
            const auto& amps = sv.amplitudes();
            for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
                if (amps[idx] == Amplitude{0.0, 0.0}) {
                    continue;
                }
                weight += std::norm(amps[idx]);
                if (idx & ~output_mask) {
                    leak = std::max(leak, std::abs(amps[idx]));
                    continue;
                }
                std::size_t o = 0;
                for (std::size_t k = 0; k < reference.outputs.size(); ++k) {
                    if (idx & bit(reference.outputs[k])) {
                        o |= std::size_t{1} << k;
                    }
                }
                kraus[i][o] += amps[idx];
            }
        }
        weight /= static_cast<double>(in_dim);
        if (weight < kBranchEpsilon) {
            continue;
        }
        ++verdict.branches_checked;
        double scale = 1.0 / std::sqrt(weight);
        Amplitude pivot = kraus[pivot_in][pivot_out] * scale;
        Amplitude ref_pivot = reference.columns[pivot_in][pivot_out];
        Amplitude phase = std::abs(pivot) > 1e-12 ? (ref_pivot / pivot) : Amplitude{1.0, 0.0};
        phase /= std::abs(phase);
        double dev = leak * scale;
        for (std::size_t i = 0; i < in_dim; ++i) {
            for (std::size_t o = 0; o < out_dim; ++o) {
                dev = std::max(dev, std::abs(kraus[i][o] * scale * phase - reference.columns[i][o]));
            }
        }
        if (dev > verdict.max_deviation) {
            verdict.max_deviation = dev;
        }
        if (dev > tolerance && verdict.pass) {
            verdict.pass = false;
            std::ostringstream msg;
            msg << "branch " << seq << " deviates by " << dev;
            verdict.detail = msg.str();
        }
    }
    if (verdict.branches_checked == 0) {
        verdict.pass = false;
        verdict.detail = "no branch with nonzero probability";
    }
    return verdict;
}

EquivalenceVerdict assert_equivalence(const Circuit& circuit, const PermutationReference& reference) {
    if (reference.qubits.size() > 24) {
        throw SimulationError("permutation reference too wide for exhaustive check");
    }
    EquivalenceVerdict verdict{true, 0.0, 0, ""};
    const std::uint64_t dim = std::uint64_t{1} << reference.qubits.size();
    for (std::uint64_t i = 0; i < dim; ++i) {
        ClassicalState in(circuit.qubit_count());
        in.write(reference.qubits, i);
        ClassicalState out = run_permutation(circuit, in, true);
        std::uint64_t expected = reference.map(i);
        ClassicalState want(circuit.qubit_count());
        want.write(reference.qubits, expected);
        ++verdict.branches_checked;
        if (out != want) {
            verdict.pass = false;
            verdict.max_deviation = 1.0;
            verdict.detail = "input " + std::to_string(i) + ": got " + out.to_bitstring() + ", expected " +
                             want.to_bitstring();
            return verdict;
        }
    }
    return verdict;
}

}  // namespace qbilerp
