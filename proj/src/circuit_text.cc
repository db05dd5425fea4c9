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

#include "qbilerp/circuit_text.h"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace qbilerp {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            words.push_back(line.substr(start, i - start));
        }
    }
    return words;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw CircuitError("line " + std::to_string(line_no) + ": " + what);
}

std::uint64_t parse_uint(std::string_view word, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc{} || ptr != word.data() + word.size()) {
        fail(line_no, "expected a non-negative integer, got '" + std::string(word) + "'");
    }
    return v;
}

void emit_gate(std::ostream& out, const Gate& g) {
    out << to_string(g.kind);
    for (QubitId q : g.qubits()) {
        out << ' ' << q.index;
    }
    if (g.cbit) {
        out << " @" << g.cbit->index;
    }
    out << '\n';
}

}  // namespace

std::string emit_circuit_text(const Circuit& circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.qubit_count() << '\n';
    if (circuit.magic_prep() == MagicPrep::gates) {
        out << "magic gates\n";
    }
    std::uint32_t measured = 0;
    for (const Gate& g : circuit.gates()) {
        if (g.kind == GateKind::MeasureX) {
            measured = std::max(measured, g.cbit->index + 1);
        }
    }
    if (circuit.classical_bit_count() > measured) {
        out << "cbits " << circuit.classical_bit_count() << '\n';
    }
    const auto& regs = circuit.registers();
    const auto& events = circuit.register_events();
    std::size_t next_event = 0;
    auto flush_events = [&](std::size_t until_gate) {
        while (next_event < events.size()) {
            const RegisterEvent& ev = events[next_event];
            const Register& reg = regs[ev.register_index];
            std::size_t at = ev.kind == RegisterEvent::Kind::allocate ? reg.allocated_at : *reg.released_at;
            if (at > until_gate) {
                break;
            }
            if (ev.kind == RegisterEvent::Kind::allocate) {
                out << "reg " << reg.name << ' ' << to_string(reg.role);
                for (QubitId q : reg.qubits) {
                    out << ' ' << q.index;
                }
                out << '\n';
            } else {
                out << "free " << reg.name << '\n';
            }
            ++next_event;
        }
    };
    for (std::size_t g = 0; g < circuit.gates().size(); ++g) {
        flush_events(g);
        emit_gate(out, circuit.gates()[g]);
    }
    flush_events(circuit.gates().size());
    for (const BlockRecord& b : circuit.blocks()) {
        out << "block " << to_string(b.kind) << ' ' << b.operand_width << ' ' << b.span.begin << ' ' << b.span.end
            << '\n';
    }
    return out.str();
}

Circuit parse_circuit_text(std::string_view text) {
    std::optional<Circuit> circuit;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::uint32_t declared_cbits = 0;
    std::vector<BlockRecord> blocks;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto words = split_words(line);
        if (words.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        std::string_view head = words[0];
        if (!circuit) {
            if (head != "qubits" || words.size() != 2) {
                fail(line_no, "expected header 'qubits <N>'");
            }
            circuit.emplace(parse_uint(words[1], line_no));
            continue;
        }
        try {
            if (head == "qubits") {
                fail(line_no, "duplicate 'qubits' header");
            } else if (head == "magic") {
                if (words.size() != 2 || words[1] != "gates" || !circuit->gates().empty()) {
                    fail(line_no, "expected 'magic gates' before any gate");
                }
                circuit->set_magic_prep(MagicPrep::gates);
            } else if (head == "cbits") {
                if (words.size() != 2) {
                    fail(line_no, "expected 'cbits <K>'");
                }
                declared_cbits = static_cast<std::uint32_t>(parse_uint(words[1], line_no));
            } else if (head == "reg") {
                if (words.size() < 4) {
                    fail(line_no, "expected 'reg <name> <role> <idx...>'");
                }
                auto role = parse_register_role(words[2]);
                if (!role) {
                    fail(line_no, "unknown register role '" + std::string(words[2]) + "'");
                }
                std::vector<QubitId> qubits;
                for (std::size_t i = 3; i < words.size(); ++i) {
                    qubits.emplace_back(static_cast<std::uint32_t>(parse_uint(words[i], line_no)));
                }
                circuit->restore_register(std::string(words[1]), std::move(qubits), *role);
            } else if (head == "free") {
                if (words.size() != 2) {
                    fail(line_no, "expected 'free <name>'");
                }
                circuit->release_ancilla(std::string(words[1]));
            } else if (head == "block") {
                if (words.size() != 5) {
                    fail(line_no, "expected 'block <kind> <width> <begin> <end>'");
                }
                auto kind = parse_block_kind(words[1]);
                if (!kind) {
                    fail(line_no, "unknown block kind '" + std::string(words[1]) + "'");
                }
                blocks.push_back({*kind, parse_uint(words[2], line_no),
                                  {parse_uint(words[3], line_no), parse_uint(words[4], line_no)}});
            } else {
                auto kind = parse_gate_kind(head);
                if (!kind) {
                    fail(line_no, "unknown gate '" + std::string(head) + "'");
                }
                Gate gate;
                gate.kind = *kind;
                std::size_t n_operands = words.size() - 1;
                if (n_operands > 0 && words.back().starts_with('@')) {
                    gate.cbit = ClassicalBit{static_cast<std::uint32_t>(parse_uint(words.back().substr(1), line_no))};
                    --n_operands;
                }
                if (n_operands != gate_arity(*kind)) {
                    fail(line_no, "arity mismatch for " + std::string(head) + ": expected " +
                                      std::to_string(gate_arity(*kind)) + " operands");
                }
                for (std::size_t i = 0; i < n_operands; ++i) {
                    gate.operands[i] = QubitId{static_cast<std::uint32_t>(parse_uint(words[i + 1], line_no))};
                }
                circuit->append(gate);
            }
        } catch (const CircuitError& e) {
            std::string msg = e.what();
            if (msg.starts_with("line ")) {
                throw;
            }
            fail(line_no, msg);
        }
        if (end == text.size()) {
            break;
        }
    }
    if (!circuit) {
        throw CircuitError("empty circuit text: missing 'qubits <N>' header");
    }
    circuit->reserve_classical_bits(declared_cbits);
    for (const BlockRecord& b : blocks) {
        if (b.span.begin > b.span.end || b.span.end > circuit->gates().size()) {
            throw CircuitError("block span outside gate list");
        }
        circuit->add_block(b);
    }
    return std::move(*circuit);
}

Circuit load_circuit(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw CircuitError("cannot open circuit file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit_text(buf.str());
}

void save_circuit(const Circuit& circuit, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw CircuitError("cannot write circuit file: " + path.string());
    }
    out << emit_circuit_text(circuit);
}

}  // namespace qbilerp
