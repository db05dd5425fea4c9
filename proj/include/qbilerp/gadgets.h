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

#include "qbilerp/circuit.h"

namespace qbilerp {

enum class GadgetKind { logical_and, uncompute, toffoli };

struct GadgetHandle {
    QubitId control_a;
    QubitId control_b;
    QubitId target;
    GadgetKind kind = GadgetKind::logical_and;
};

/// Appends a TemporaryAND writing a·b into `target`. Under the default
/// MagicPrep::initial_state the target must be an unused magic_A qubit;
/// under MagicPrep::gates it must be a clean zero qubit and is prepared
/// with H, T first.
GadgetHandle emit_temporary_and(Circuit& circuit, QubitId a, QubitId b, QubitId target);

/// Appends the measurement-based uncomputation of a matching, still open
/// TemporaryAND on (a, b, target). Adds no T gates.
GadgetHandle emit_uncompute_and(Circuit& circuit, QubitId a, QubitId b, QubitId target);

/// z ^= a·b as AND into a fresh magic ancilla, CNOT onto z, then
/// uncompute and release. T-count 4.
GadgetHandle emit_toffoli(Circuit& circuit, QubitId a, QubitId b, QubitId z);

/// Allocates a single-qubit ancilla ready to serve as an AND target.
QubitId alloc_and_target(Circuit& circuit);

/// Combines alloc_and_target and emit_temporary_and.
QubitId emit_fresh_and(Circuit& circuit, QubitId a, QubitId b);

/// Uncomputes an AND produced by emit_fresh_and and releases its ancilla.
void emit_uncompute_and_release(Circuit& circuit, QubitId a, QubitId b, QubitId target);

}  // namespace qbilerp
