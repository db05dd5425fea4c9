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

#include "qbilerp/gadgets.h"

namespace qbilerp {

GadgetHandle emit_temporary_and(Circuit& circuit, QubitId a, QubitId b, QubitId target) {
    if (circuit.magic_prep() == MagicPrep::gates) {
        if (target.index >= circuit.qubit_count() || !circuit.clean_since_allocation(target)) {
            throw CircuitError("AND target " + std::to_string(target.index) + " is not a clean ancilla");
        }
        circuit.append(Gate::h(target));
        circuit.append(Gate::t(target));
    }
    circuit.append(Gate::temporary_and(a, b, target));
    return {a, b, target, GadgetKind::logical_and};
}

GadgetHandle emit_uncompute_and(Circuit& circuit, QubitId a, QubitId b, QubitId target) {
    if (target.index >= circuit.qubit_count()) {
        throw CircuitError("uncompute target out of range");
    }
    auto open = circuit.open_and(target);
    bool matches = false;
    if (open) {
        const Gate& g = circuit.gates()[*open];
        matches = (g.operands[0] == a && g.operands[1] == b) || (g.operands[0] == b && g.operands[1] == a);
    }
    if (!matches) {
        throw CircuitError("no matching open TemporaryAND for uncompute on target " + std::to_string(target.index));
    }
    circuit.append(Gate::uncompute_and(a, b, target));
    return {a, b, target, GadgetKind::uncompute};
}

QubitId alloc_and_target(Circuit& circuit) { return circuit.alloc_ancilla(1, RegisterRole::ancilla_magic)[0]; }

QubitId emit_fresh_and(Circuit& circuit, QubitId a, QubitId b) {
    QubitId t = alloc_and_target(circuit);
    emit_temporary_and(circuit, a, b, t);
    return t;
}

void emit_uncompute_and_release(Circuit& circuit, QubitId a, QubitId b, QubitId target) {
    emit_uncompute_and(circuit, a, b, target);
    const Register* reg = circuit.owner(target);
    if (reg == nullptr) {
        throw CircuitError("AND target has no owning register");
    }
    circuit.release_ancilla(reg->name);
}

GadgetHandle emit_toffoli(Circuit& circuit, QubitId a, QubitId b, QubitId z) {
    if (a == z || b == z || a == b) {
        throw CircuitError("Toffoli operands must be distinct");
    }
    QubitId anc = emit_fresh_and(circuit, a, b);
    circuit.append(Gate::cnot(anc, z));
    emit_uncompute_and_release(circuit, a, b, anc);
    return {a, b, z, GadgetKind::toffoli};
}

}  // namespace qbilerp
