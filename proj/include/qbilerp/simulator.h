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

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbilerp/circuit.h"

namespace qbilerp {

class SimulationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using Amplitude = std::complex<double>;

/// One bit per qubit.
class ClassicalState {
   public:
    ClassicalState() = default;
    explicit ClassicalState(std::size_t qubit_count) : bits_(qubit_count, 0) {}

    /// Character i of `text` is qubit i.
    static ClassicalState from_bitstring(std::string_view text);
    std::string to_bitstring() const;

    std::size_t size() const { return bits_.size(); }
    bool get(QubitId q) const { return bits_.at(q.index) != 0; }
    void set(QubitId q, bool value) { bits_.at(q.index) = value ? 1 : 0; }
    void flip(QubitId q) { bits_.at(q.index) ^= 1; }

    /// Little-endian value of the listed qubits.
    std::uint64_t read(QubitSpan qubits) const;
    void write(QubitSpan qubits, std::uint64_t value);

    /// Copy truncated or zero-extended to `n` qubits.
    ClassicalState resized(std::size_t n) const;

    bool operator==(const ClassicalState&) const = default;

   private:
    std::vector<std::uint8_t> bits_;
};

/// Dense amplitude vector; qubit k is bit k of the basis index.
class StateVector {
   public:
    explicit StateVector(std::size_t qubit_count);
    static StateVector basis(const ClassicalState& bits);

    std::size_t qubit_count() const { return qubit_count_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    std::vector<Amplitude>& amplitudes() { return amps_; }
    double norm() const;

    /// Unitary primitives only (X, H, S, T, Tdg, CNOT, CZ).
    void apply(const Gate& gate);
    void apply_cz(QubitId a, QubitId b);
    /// Replaces qubit q's |0> component with |A>; q must currently be |0>.
    void prepare_magic(QubitId q);

    /// Probability of X-basis outcome (0 for |+>, 1 for |->).
    double x_outcome_probability(QubitId q, int outcome) const;
    /// Projects q onto the X-basis outcome and resets it to |0>. With
    /// `renormalize` the result has unit norm.
    void project_x(QubitId q, int outcome, bool renormalize);

   private:
    std::size_t qubit_count_;
    std::vector<Amplitude> amps_;
};

enum class BranchMode { enumerate_all, sample };

struct BranchPolicy {
    BranchMode mode = BranchMode::enumerate_all;
    std::uint64_t seed = 0;

    static BranchPolicy enumerate_all() { return {BranchMode::enumerate_all, 0}; }
    static BranchPolicy sample(std::uint64_t seed) { return {BranchMode::sample, seed}; }
};

struct MeasurementRecord {
    ClassicalBit bit;
    int outcome = 0;
    double probability = 0.0;
};

struct SimOutcome {
    StateVector state;
    std::vector<MeasurementRecord> record;
    double branch_probability = 1.0;
    BranchPolicy policy;
};

struct SimOptions {
    std::size_t max_qubits = 16;
    std::size_t max_branches = 4096;
    double norm_tolerance = 1e-9;
};

/// Statevector qubit cap from QBILERP_SV_CAP, or 16.
std::size_t default_statevector_cap();

/// Expands macros and runs the primitive circuit from the basis state
/// `input` (magic_A qubits start in |A>; their input bits must be 0).
std::vector<SimOutcome> run_statevector(const Circuit& circuit, const ClassicalState& input, BranchPolicy policy,
                                        const SimOptions& options = {});

/// Basis-permutation semantics of X, CNOT, Toffoli, TemporaryAND, and
/// UncomputeAND. With `verify`, AND targets must start at 0 and
/// uncomputation must find exactly a·b in its target.
ClassicalState run_permutation(const Circuit& circuit, const ClassicalState& input, bool verify = true);

/// The basis state the vector holds up to global phase, if it is one.
std::optional<ClassicalState> basis_readout(const StateVector& state, double tolerance = 1e-10);

/// Linear map from basis states of `inputs` to states of `outputs`;
/// columns[i][o] is the amplitude of output basis o for input basis i.
/// Every qubit not listed as an output must end in |0>.
struct IsometryReference {
    std::vector<QubitId> inputs;
    std::vector<QubitId> outputs;
    std::vector<std::vector<Amplitude>> columns;

    static IsometryReference from_permutation(std::vector<QubitId> qubits,
                                              const std::function<std::uint64_t(std::uint64_t)>& map);
};

/// Basis map over `qubits`; every other qubit starts and must end at 0.
struct PermutationReference {
    std::vector<QubitId> qubits;
    std::function<std::uint64_t(std::uint64_t)> map;
};

struct EquivalenceVerdict {
    bool pass = false;
    double max_deviation = 0.0;
    std::size_t branches_checked = 0;
    std::string detail;
};

/// Checks every measurement-outcome branch of the expanded circuit against
/// the reference. Each branch's map is normalized and aligned to the
/// reference by a single global phase before comparison.
EquivalenceVerdict assert_equivalence(const Circuit& circuit, const IsometryReference& reference, double tolerance,
                                      const SimOptions& options = {});

/// Exhaustive permutation-level comparison over all inputs of `qubits`.
EquivalenceVerdict assert_equivalence(const Circuit& circuit, const PermutationReference& reference);

}  // namespace qbilerp
