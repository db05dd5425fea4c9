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

#include <filesystem>
#include <string>
#include <string_view>

#include "qbilerp/circuit.h"

namespace qbilerp {

/// Line-oriented circuit format:
///
///     qubits <N>
///     magic gates                       (only when |A> is prepared by gates)
///     cbits <K>                         (only when K exceeds the measured bits)
///     reg <name> <role> <idx...>        (at the point of allocation)
///     free <name>                       (at the point of release)
///     <KIND> <idx...> [@<cbit>]
///     block <kind> <width> <begin> <end>
///
/// `#` starts a comment. Emission is canonical: parse(emit(c)) == c.
std::string emit_circuit_text(const Circuit& circuit);
Circuit parse_circuit_text(std::string_view text);

Circuit load_circuit(const std::filesystem::path& path);
void save_circuit(const Circuit& circuit, const std::filesystem::path& path);

}  // namespace qbilerp
