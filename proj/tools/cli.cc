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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbilerp/arithmetic.h"
#include "qbilerp/bilerp.h"
#include "qbilerp/circuit_text.h"
#include "qbilerp/gadgets.h"
#include "qbilerp/neqr.h"
#include "qbilerp/resources.h"
#include "qbilerp/simulator.h"

namespace qbilerp::cli {

namespace {

using json = nlohmann::ordered_json;

/// Raised when a check the user asked for does not hold (exit code 2).
class VerificationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class Table {
   public:
    explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& out) const {
        std::vector<std::size_t> width;
        for (const auto& row : rows_) {
            width.resize(std::max(width.size(), row.size()), 0);
            for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
        }
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            for (std::size_t i = 0; i < rows_[r].size(); ++i) {
                if (i) out << "  ";
                if (i == 0) {
                    out << std::left << std::setw(static_cast<int>(width[i])) << rows_[r][i];
                } else {
                    out << std::right << std::setw(static_cast<int>(width[i])) << rows_[r][i];
                }
            }
            out << '\n';
            if (r == 0) {
                std::size_t total = 0;
                for (std::size_t w : width) total += w;
                out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
            }
        }
    }

   private:
    std::vector<std::vector<std::string>> rows_;
};

std::string percent(double ratio) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << ratio * 100.0 << '%';
    return s.str();
}

json to_json(const ResourceReport& r) {
    return json{{"t_type", r.t_type()},
                {"t_count", r.t_count},
                {"tdg_count", r.tdg_count},
                {"magic_state_count", r.magic_state_count},
                {"cnot_count", r.cnot_count},
                {"h_count", r.h_count},
                {"s_count", r.s_count},
                {"x_count", r.x_count},
                {"cz_count", r.cz_count},
                {"measurement_count", r.measurement_count},
                {"qubit_count", r.qubit_count},
                {"ancilla_high_water", r.ancilla_high_water}};
}

json to_json(const BlockCensus& c) {
    return json{{"adders", c.adders},
                {"conditional_adders", c.conditional_adders},
                {"subtractors", c.subtractors},
                {"multipliers", c.multipliers},
                {"dividers", c.dividers}};
}

void print_report(std::ostream& out, const ResourceReport& r) {
    Table t({"resource", "count"});
    t.add({"T-type (T + Tdg + |A>)", std::to_string(r.t_type())});
    t.add({"  T", std::to_string(r.t_count)});
    t.add({"  Tdg", std::to_string(r.tdg_count)});
    t.add({"  |A> states", std::to_string(r.magic_state_count)});
    t.add({"CNOT", std::to_string(r.cnot_count)});
    t.add({"H", std::to_string(r.h_count)});
    t.add({"S", std::to_string(r.s_count)});
    t.add({"X", std::to_string(r.x_count)});
    t.add({"CZ", std::to_string(r.cz_count)});
    t.add({"measurements", std::to_string(r.measurement_count)});
    t.add({"qubits", std::to_string(r.qubit_count)});
    t.add({"ancilla high water", std::to_string(r.ancilla_high_water)});
    t.print(out);
}

void print_census(std::ostream& out, const BlockCensus& c) {
    Table t({"block", "count"});
    t.add({"adder", std::to_string(c.adders)});
    t.add({"conditional adder", std::to_string(c.conditional_adders)});
    t.add({"subtractor", std::to_string(c.subtractors)});
    t.add({"multiplier", std::to_string(c.multipliers)});
    t.add({"divider", std::to_string(c.dividers)});
    t.print(out);
}

void write_json(const std::string& path, const json& doc) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    f << doc.dump(2) << '\n';
}

MagicPrep parse_prep(const std::string& s) {
    if (s == "initial_state") return MagicPrep::initial_state;
    if (s == "gates") return MagicPrep::gates;
    throw std::invalid_argument("unknown magic preparation: " + s);
}

// ---------------------------------------------------------------------------
// build

struct BuildOptions {
    std::string kind;
    int n = 4;
    std::string mode = "down";
    int m = 2;
    int q = 4;
    std::string prep = "initial_state";
    std::string out;
    std::string json_path;
};

Circuit build_circuit(const BuildOptions& o, json& meta) {
    Circuit c(0, parse_prep(o.prep));
    auto n = static_cast<std::size_t>(o.n);
    if (o.kind == "bilerp") {
        auto mode = parse_scale_mode(o.mode);
        if (!mode) throw std::invalid_argument("--mode must be down or up");
        InterpolationSpec spec{*mode, o.m, o.n, o.q};
        meta["spec"] = {{"mode", o.mode}, {"m", o.m}, {"n", o.n}, {"q", o.q}, {"border", "clamp"}};
        return build_interpolation(spec).circuit;
    }
    if (o.n < 1) throw std::invalid_argument("--n must be >= 1");
    meta["n"] = o.n;
    if (o.kind == "and" || o.kind == "uncompute" || o.kind == "toffoli") {
        auto a = c.alloc_register("a", 1, RegisterRole::color);
        auto b = c.alloc_register("b", 1, RegisterRole::color);
        if (o.kind == "toffoli") {
            auto z = c.alloc_register("z", 1, RegisterRole::color);
            c.append(Gate::toffoli(a[0], b[0], z[0]));
        } else {
            QubitId t = alloc_and_target(c);
            emit_temporary_and(c, a[0], b[0], t);
            if (o.kind == "uncompute") emit_uncompute_and(c, a[0], b[0], t);
        }
        return c;
    }
    auto A = c.alloc_register("A", n, RegisterRole::color);
    auto B = c.alloc_register("B", n, RegisterRole::color);
    if (o.kind == "adder") {
        build_adder(c, A.bits(), B.bits());
    } else if (o.kind == "subtractor") {
        build_subtractor(c, A.bits(), B.bits());
    } else if (o.kind == "conditional_adder") {
        auto ctrl = c.alloc_register("ctrl", 1, RegisterRole::color);
        build_conditional_adder(c, ctrl[0], A.bits(), B.bits());
    } else if (o.kind == "multiplier") {
        auto P = c.alloc_register("P", 2 * n, RegisterRole::output);
        build_multiplier(c, A.bits(), B.bits(), P.bits());
    } else {
        throw std::invalid_argument("unknown circuit kind: " + o.kind);
    }
    return c;
}

int cmd_build(const BuildOptions& o, std::ostream& out) {
    json meta = {{"kind", o.kind}};
    Circuit c = build_circuit(o, meta);
    if (o.out.empty() || o.out == "-") {
        out << emit_circuit_text(c);
    } else {
        save_circuit(c, o.out);
        out << "wrote " << o.out << " (" << c.qubit_count() << " qubits, " << c.gates().size() << " gates)\n";
        print_census(out, census(c));
    }
    meta["qubits"] = c.qubit_count();
    meta["gates"] = c.gates().size();
    meta["census"] = to_json(census(c));
    write_json(o.json_path, meta);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// count

int cmd_count(const std::string& path, bool macro, const std::string& json_path, std::ostream& out) {
    Circuit c = load_circuit(path);
    ResourceReport r = macro ? count_resources_macro(c) : count_resources(c);
    print_report(out, r);
    BlockCensus k = census(c);
    if (!c.blocks().empty()) {
        out << '\n';
        print_census(out, k);
    }
    write_json(json_path, json{{"circuit", path}, {"resources", to_json(r)}, {"census", to_json(k)}});
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

std::vector<std::int64_t> parse_n_range(const std::string& text) {
    std::vector<std::int64_t> ns;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        std::int64_t lo = std::stoll(text.substr(0, dots));
        std::int64_t hi = std::stoll(text.substr(dots + 2));
        if (lo < 1 || hi < lo) throw std::invalid_argument("bad --n-range " + text);
        for (std::int64_t n = lo; n <= hi; ++n) ns.push_back(n);
        return ns;
    }
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        std::int64_t n = std::stoll(item);
        if (n < 1) throw std::invalid_argument("bad --n-range " + text);
        ns.push_back(n);
    }
    if (ns.empty()) throw std::invalid_argument("empty --n-range");
    return ns;
}

int cmd_compare(const std::string& range, bool measured, int m_extra, int q, const std::string& json_path,
                std::ostream& out) {
    std::vector<std::int64_t> ns = parse_n_range(range);
    std::vector<std::string> header = {"n", "proposed", "prior", "improvement"};
    if (measured) {
        header.push_back("measured down");
        header.push_back("measured up");
    }
    Table t(header);
    json rows = json::array();
    for (std::int64_t n : ns) {
        std::int64_t proposed = formula_proposed_tcount(n);
        json row = {{"n", n}, {"proposed", proposed}};
        std::vector<std::string> cells = {std::to_string(n), std::to_string(proposed)};
        if (is_power_of_two(n)) {
            std::int64_t prior = formula_prior_tcount(n);
            row["prior"] = prior;
            row["improvement"] = improvement_ratio(n);
            cells.push_back(std::to_string(prior));
            cells.push_back(percent(improvement_ratio(n)));
        } else {
            row["prior"] = nullptr;
            row["improvement"] = nullptr;
            cells.push_back("n/a");
            cells.push_back("n/a");
        }
        if (measured) {
            for (ScaleMode mode : {ScaleMode::down, ScaleMode::up}) {
                InterpolationSpec spec{mode, static_cast<int>(n) + m_extra, static_cast<int>(n), q};
                std::uint64_t tt = count_resources_macro(build_interpolation(spec).circuit).t_type();
                row[std::string("measured_") + std::string(to_string(mode))] = tt;
                cells.push_back(std::to_string(tt));
            }
        }
        rows.push_back(row);
        t.add(cells);
    }
    t.print(out);
    out << "asymptotic improvement (1 - 64/856): " << percent(improvement_ratio()) << '\n';
    out << "prior divider cost 400n^2 is approximate\n";
    write_json(json_path, json{{"rows", rows},
                               {"asymptotic_improvement", improvement_ratio()},
                               {"prior_divider_approximate", true}});
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const std::string& path, const std::string& input_bits, const std::string& backend,
                 std::optional<std::uint64_t> seed, const std::string& json_path, std::ostream& out) {
    Circuit c = load_circuit(path);
    ClassicalState input =
        input_bits.empty() ? ClassicalState(c.qubit_count()) : ClassicalState::from_bitstring(input_bits);
    if (input.size() != c.qubit_count()) {
        throw std::invalid_argument("--input has " + std::to_string(input.size()) + " bits, circuit has " +
                                    std::to_string(c.qubit_count()) + " qubits");
    }
    json doc = {{"circuit", path}, {"input", input.to_bitstring()}, {"backend", backend}};
    if (backend == "permutation") {
        ClassicalState s = run_permutation(c, input, true);
        doc["output"] = s.to_bitstring();
        out << "output " << s.to_bitstring() << '\n';
        write_json(json_path, doc);
        return kExitOk;
    }
    if (backend != "statevector") {
        throw std::invalid_argument("--backend must be permutation or statevector");
    }
    BranchPolicy policy = seed ? BranchPolicy::sample(*seed) : BranchPolicy::enumerate_all();
    SimOptions opts;
    opts.max_qubits = default_statevector_cap();
    auto outcomes = run_statevector(c, input, policy, opts);
    doc["policy"] = seed ? json{{"mode", "sample"}, {"seed", *seed}} : json{{"mode", "enumerate_all"}};
    json branches = json::array();
    std::optional<std::string> agreed;
    bool agree = true;
    Table t({"branch", "probability", "outcomes", "data"});
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const SimOutcome& o = outcomes[i];
        json rec = json::array();
        std::string bits;
        for (const MeasurementRecord& m : o.record) {
            rec.push_back({{"bit", m.bit.index}, {"outcome", m.outcome}, {"probability", m.probability}});
            bits.push_back(m.outcome ? '1' : '0');
        }
        auto readout = basis_readout(o.state);
        std::string data = readout ? readout->resized(c.qubit_count()).to_bitstring() : "superposition";
        if (!agreed) agreed = data;
        agree = agree && readout && data == *agreed;
        json amps = json::array();
        const auto& a = o.state.amplitudes();
        for (std::size_t idx = 0; idx < a.size() && amps.size() < 64; ++idx) {
            if (std::abs(a[idx]) > 1e-12) {
                std::string label(o.state.qubit_count(), '0');
                for (std::size_t k = 0; k < label.size(); ++k) label[k] = (idx >> k) & 1U ? '1' : '0';
                amps.push_back({{"basis", label}, {"re", a[idx].real()}, {"im", a[idx].imag()}});
            }
        }
        branches.push_back(
            {{"probability", o.branch_probability}, {"record", rec}, {"data", data}, {"amplitudes", amps}});
        std::ostringstream p;
        p << std::setprecision(6) << o.branch_probability;
        t.add({std::to_string(i), p.str(), bits.empty() ? "-" : bits, data});
    }
    doc["branches"] = branches;
    doc["branches_agree"] = agree;
    t.print(out);
    out << "branches agree on a basis state: " << (agree ? "yes" : "no") << '\n';
    write_json(json_path, doc);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// interpolate

struct InterpolateOptions {
    std::string in;
    std::string out;
    std::string mode = "down";
    int n = 1;
    std::string backend = "oracle";
    std::uint32_t sub_y = 0;
    std::uint32_t sub_x = 0;
    std::string json_path;
};

int cmd_interpolate(const InterpolateOptions& o, std::ostream& out) {
    auto started = std::chrono::steady_clock::now();
    NEQRImage image = load_pgm(o.in);
    auto mode = parse_scale_mode(o.mode);
    if (!mode) throw std::invalid_argument("--mode must be down or up");
    InterpolationSpec spec{*mode, image.m(), o.n, image.q()};
    spec.validate();
    if (o.backend != "oracle" && o.backend != "permutation_sim" && o.backend != "both") {
        throw std::invalid_argument("--backend must be oracle, permutation_sim, or both");
    }

    json doc = {{"spec", {{"mode", o.mode}, {"m", spec.m}, {"n", spec.n}, {"q", spec.q}, {"border", "clamp"}}},
                {"subpixel", {o.sub_y, o.sub_x}},
                {"backend", o.backend}};
    std::optional<NEQRImage> by_oracle;
    std::optional<NEQRImage> by_sim;
    if (o.backend != "permutation_sim") {
        by_oracle = interpolate_image(image, spec, Backend::oracle, o.sub_y, o.sub_x);
    }
    if (o.backend != "oracle") {
        by_sim = interpolate_image(image, spec, Backend::permutation_sim, o.sub_y, o.sub_x);
    }
    const NEQRImage& result = by_sim ? *by_sim : *by_oracle;

    InterpolationCircuit ic = build_interpolation(spec);
    ResourceReport r = count_resources_macro(ic.circuit);
    std::int64_t formula = formula_proposed_tcount(spec.n);
    doc["census"] = to_json(census(ic.circuit));
    doc["resources"] = to_json(r);
    doc["formula"] = {{"proposed", formula},
                      {"prior", is_power_of_two(spec.n) ? json(formula_prior_tcount(spec.n)) : json(nullptr)},
                      {"measured_within_proposed", static_cast<std::int64_t>(r.t_type()) <= formula}};
    doc["improvement"] = {{"asymptotic", improvement_ratio()},
                          {"evaluated", is_power_of_two(spec.n) ? json(improvement_ratio(spec.n)) : json(nullptr)}};

    std::optional<std::string> mismatch;
    if (by_oracle && by_sim) {
        for (std::size_t y = 0; y < result.side() && !mismatch; ++y) {
            for (std::size_t x = 0; x < result.side(); ++x) {
                if (by_oracle->at(y, x) != by_sim->at(y, x)) {
                    mismatch = "pixel (" + std::to_string(y) + "," + std::to_string(x) + "): oracle " +
                               std::to_string(by_oracle->at(y, x)) + ", circuit " + std::to_string(by_sim->at(y, x));
                    break;
                }
            }
        }
        doc["backend_agreement"] = !mismatch.has_value();
        if (mismatch) doc["first_mismatch"] = *mismatch;
    } else {
        doc["backend_agreement"] = nullptr;
    }
    if (!o.out.empty()) save_pgm(result, o.out);
    doc["timing_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    out << image.side() << "x" << image.side() << " -> " << result.side() << "x" << result.side() << " (" << o.mode
        << ", n=" << spec.n << ", backend " << o.backend << ")\n";
    print_census(out, census(ic.circuit));
    out << "T-type per pixel circuit: " << r.t_type() << " (proposed formula " << formula << ")\n";
    if (by_oracle && by_sim) {
        out << "backend agreement: " << (mismatch ? "no" : "yes") << '\n';
    }
    write_json(o.json_path, doc);
    if (mismatch) {
        throw VerificationError("backends disagree at " + *mismatch);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clifford+T bilinear interpolation circuits for NEQR images", "qbilerp"};
    app.require_subcommand(1);

    BuildOptions build;
    auto* b = app.add_subcommand("build", "Write a circuit in text form");
    b->add_option("kind", build.kind, "and | uncompute | toffoli | adder | subtractor | conditional_adder | "
                                      "multiplier | bilerp")
        ->required();
    b->add_option("--n", build.n, "Operand width, or scale exponent for bilerp");
    b->add_option("--mode", build.mode, "down | up (bilerp)");
    b->add_option("--m", build.m, "Position width (bilerp)");
    b->add_option("--q", build.q, "Color width (bilerp)");
    b->add_option("--magic-prep", build.prep, "initial_state | gates");
    b->add_option("-o,--out", build.out, "Output path (default standard output)");
    b->add_option("--json", build.json_path, "Write a JSON summary here");

    std::string count_path;
    std::string count_json;
    bool count_macro = false;
    auto* c = app.add_subcommand("count", "Resource report for a circuit file");
    c->add_option("circuit", count_path)->required();
    c->add_flag("--macro", count_macro, "Use fixed per-macro contributions instead of expanding");
    c->add_option("--json", count_json);

    std::string range = "1,2,4,8";
    bool measured = false;
    int extra_m = 0;
    int cmp_q = 4;
    std::string cmp_json;
    auto* k = app.add_subcommand("compare", "Proposed versus prior T-count formulas");
    k->add_option("--n-range", range, "Comma list or lo..hi");
    k->add_flag("--measured", measured, "Also build the interpolation circuits and count them");
    k->add_option("--q", cmp_q, "Color width for --measured");
    k->add_option("--m-extra", extra_m, "Use m = n + m_extra for --measured");
    k->add_option("--json", cmp_json);

    std::string sim_path;
    std::string sim_input;
    std::string sim_backend = "statevector";
    std::optional<std::uint64_t> sim_seed;
    std::string sim_json;
    auto* s = app.add_subcommand("simulate", "Run a circuit on a basis input");
    s->add_option("circuit", sim_path)->required();
    s->add_option("--input", sim_input, "Bitstring, character i is qubit i");
    s->add_option("--backend", sim_backend, "statevector | permutation");
    s->add_option("--seed", sim_seed, "Sample measurement outcomes with this seed");
    s->add_option("--json", sim_json);

    InterpolateOptions interp;
    auto* ip = app.add_subcommand("interpolate", "Scale a PGM image");
    ip->add_option("input", interp.in)->required();
    ip->add_option("-o,--out", interp.out, "Output PGM");
    ip->add_option("--mode", interp.mode, "down | up");
    ip->add_option("--n", interp.n, "Scale exponent");
    ip->add_option("--backend", interp.backend, "oracle | permutation_sim | both");
    ip->add_option("--subpixel-y", interp.sub_y, "Representative row inside each block (down)");
    ip->add_option("--subpixel-x", interp.sub_x, "Representative column inside each block (down)");
    ip->add_option("--json", interp.json_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (b->parsed()) return cmd_build(build, out);
        if (c->parsed()) return cmd_count(count_path, count_macro, count_json, out);
        if (k->parsed()) return cmd_compare(range, measured, extra_m, cmp_q, cmp_json, out);
        if (s->parsed()) return cmd_simulate(sim_path, sim_input, sim_backend, sim_seed, sim_json, out);
        if (ip->parsed()) return cmd_interpolate(interp, out);
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << '\n';
        return kExitVerification;
    } catch (const SimulationError& e) {
        err << "simulation failed: " << e.what() << '\n';
        return kExitVerification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qbilerp::cli
