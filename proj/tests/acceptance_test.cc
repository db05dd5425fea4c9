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

// Acceptance suite. Prints one PASS/FAIL line per criterion. With an
// argument, runs only that criterion (1-9).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "qbilerp/arithmetic.h"
#include "qbilerp/bilerp.h"
#include "qbilerp/gadgets.h"
#include "qbilerp/oracle.h"
#include "qbilerp/resources.h"
#include "qbilerp/simulator.h"

using namespace qbilerp;

namespace {

// Tolerances and limits.
constexpr double kAmplitudeTol = 1e-10;
constexpr double kRatioTol = 1e-5;
constexpr double kPaperRatio = 0.92523;
constexpr std::size_t kSvWidth = 12;
constexpr int kRandomTuples = 1000;

struct Result {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Result()> run;
};

std::vector<QubitId> operand(Circuit& c, const std::string& name, std::size_t w) {
    return c.alloc_register(name, w, RegisterRole::color).qubits;
}

std::vector<QubitId> cat(std::vector<QubitId> a, const std::vector<QubitId>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool statevector_agrees(const Circuit& c, const ClassicalState& in, const ClassicalState& want) {
    for (const SimOutcome& o : run_statevector(c, in, BranchPolicy::enumerate_all())) {
        auto r = basis_readout(o.state, kAmplitudeTol);
        if (!r || r->resized(c.qubit_count()) != want) return false;
    }
    return true;
}

bool zero_outside(const ClassicalState& s, const std::vector<QubitId>& keep) {
    std::vector<bool> kept(s.size(), false);
    for (QubitId q : keep) kept[q.index] = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!kept[i] && s.get(QubitId{static_cast<std::uint32_t>(i)})) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

Result gadget_tcounts() {
    Result r;
    Circuit and_c;
    auto d = operand(and_c, "d", 2);
    QubitId t = alloc_and_target(and_c);
    emit_temporary_and(and_c, d[0], d[1], t);
    std::uint64_t t_and = count_resources(expand_macros(and_c)).t_type();

    Circuit both = and_c;
    emit_uncompute_and(both, d[0], d[1], t);
    std::uint64_t t_unc = count_resources(expand_macros(both)).t_type() - t_and;

    Circuit tof;
    auto e = operand(tof, "e", 3);
    tof.append(Gate::toffoli(e[0], e[1], e[2]));
    std::uint64_t t_tof = count_resources(expand_macros(tof)).t_type();

    std::ostringstream s;
    s << "AND " << t_and << ", uncompute " << t_unc << ", Toffoli " << t_tof;
    r.detail = s.str();
    r.check(t_and == 4 && t_unc == 0 && t_tof == 4, s.str());
    return r;
}

Result toffoli_semantics() {
    Result r;
    Circuit c;
    auto d = operand(c, "d", 3);
    emit_toffoli(c, d[0], d[1], d[2]);
    auto ref = IsometryReference::from_permutation(d, [](std::uint64_t v) { return (v & 3) == 3 ? v ^ 4 : v; });
    EquivalenceVerdict v = assert_equivalence(c, ref, kAmplitudeTol);
    std::ostringstream s;
    s << v.branches_checked << " branches, max deviation " << v.max_deviation;
    r.detail = s.str();
    r.check(v.pass && v.branches_checked == 2, s.str() + " " + v.detail);
    return r;
}

Result arithmetic_exhaustive() {
    Result r;
    std::size_t sv_checked = 0;
    auto small = [](const Circuit& c) { return expand_macros(c).qubit_count() <= kSvWidth; };
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int kind = 0; kind < 2; ++kind) {
            Circuit c;
            auto a = operand(c, "A", n);
            auto b = operand(c, "B", n);
            kind == 0 ? build_adder(c, a, b) : build_subtractor(c, a, b);
            bool sv = n <= 3 && small(c);
            for (std::uint64_t x = 0; x < (1u << n); ++x) {
                for (std::uint64_t y = 0; y < (1u << n); ++y) {
                    ClassicalState in(c.qubit_count());
                    in.write(a, x);
                    in.write(b, y);
                    ClassicalState out = run_permutation(c, in);
                    std::uint64_t want = kind == 0 ? oracle::mod_add(y, x, static_cast<int>(n))
                                                   : oracle::mod_sub(y, x, static_cast<int>(n));
                    r.check(out.read(b) == want && out.read(a) == x,
                            (kind ? "subtractor" : "adder") + std::string(" n=") + std::to_string(n));
                    if (sv) {
                        r.check(statevector_agrees(c, in, out), "statevector disagrees, n=" + std::to_string(n));
                        ++sv_checked;
                    }
                }
            }
        }
    }
    for (std::size_t n = 1; n <= 3; ++n) {
        Circuit c;
        auto a = operand(c, "A", n);
        auto b = operand(c, "B", n);
        QubitId k = operand(c, "k", 1)[0];
        build_conditional_adder(c, k, a, b);
        bool sv = small(c);
        for (std::uint64_t v = 0; v < (2u << (2 * n)); ++v) {
            std::uint64_t x = v & ((1u << n) - 1), y = (v >> n) & ((1u << n) - 1), ctrl = v >> (2 * n);
            ClassicalState in(c.qubit_count());
            in.write(a, x);
            in.write(b, y);
            in.set(k, ctrl);
            ClassicalState out = run_permutation(c, in);
            r.check(out.read(b) == (ctrl ? oracle::mod_add(y, x, static_cast<int>(n)) : y) && out.read(a) == x,
                    "conditional adder n=" + std::to_string(n));
            if (sv) {
                r.check(statevector_agrees(c, in, out), "conditional adder statevector n=" + std::to_string(n));
                ++sv_checked;
            }
        }
    }
    for (std::size_t n = 1; n <= 3; ++n) {
        Circuit c;
        auto a = operand(c, "A", n);
        auto b = operand(c, "B", n);
        auto p = c.alloc_register("P", 2 * n, RegisterRole::output).qubits;
        build_multiplier(c, a, b, p);
        bool sv = small(c);
        for (std::uint64_t x = 0; x < (1u << n); ++x) {
            for (std::uint64_t y = 0; y < (1u << n); ++y) {
                ClassicalState in(c.qubit_count());
                in.write(a, x);
                in.write(b, y);
                ClassicalState out = run_permutation(c, in);
                r.check(out.read(p) == oracle::mod_mul(x, y, static_cast<int>(n)), "multiplier n=" + std::to_string(n));
                if (sv) {
                    r.check(statevector_agrees(c, in, out), "multiplier statevector n=" + std::to_string(n));
                    ++sv_checked;
                }
            }
        }
    }
    if (r.pass) r.detail = "all pairs match; " + std::to_string(sv_checked) + " inputs cross-checked by statevector";
    return r;
}

Result block_bounds() {
    Result r;
    std::ostringstream s;
    for (std::int64_t n : {1, 2, 4, 8}) {
        auto w = static_cast<std::size_t>(n);
        Circuit add, sub, mul;
        {
            auto a = operand(add, "A", w), b = operand(add, "B", w);
            build_adder(add, a, b);
        }
        {
            auto a = operand(sub, "A", w), b = operand(sub, "B", w);
            build_subtractor(sub, a, b);
        }
        {
            auto a = operand(mul, "A", w), b = operand(mul, "B", w);
            build_multiplier(mul, a, b, mul.alloc_register("P", 2 * w, RegisterRole::output).qubits);
        }
        auto ta = static_cast<std::int64_t>(count_resources(add).t_type());
        auto ts = static_cast<std::int64_t>(count_resources(sub).t_type());
        auto tm = static_cast<std::int64_t>(count_resources(mul).t_type());
        s << "n=" << n << ": " << ta << "/" << 4 * n << " " << ts << "/" << 4 * n - 4 << " " << tm << "/"
          << 8 * n * n - 4 * n << "; ";
        r.check(ta <= 4 * n && ts <= 4 * n - 4 && tm <= 8 * n * n - 4 * n, "bound exceeded at n=" + std::to_string(n));
    }
    if (r.pass) r.detail = s.str();
    return r;
}

Result census_tables() {
    Result r;
    for (ScaleMode mode : {ScaleMode::down, ScaleMode::up}) {
        for (int n : {1, 2, 4}) {
            BlockCensus k = census(build_interpolation({mode, 4, n, 4}).circuit);
            r.check(k == BlockCensus{3, 0, 2, 8, 0},
                    std::string(to_string(mode)) + " n=" + std::to_string(n) + " census differs");
        }
    }
    if (r.pass) r.detail = "{adders 3, subtractors 2, multipliers 8, dividers 0} for both modes";
    return r;
}

Result formulas() {
    Result r;
    for (std::int64_t n = 1; n <= 64; ++n) {
        r.check(composed_tcount(CostModel::proposed(), n) == 64 * n * n - 12 * n - 8,
                "composition differs at n=" + std::to_string(n));
    }
    r.check(formula_prior_tcount(2) == 3830, "prior(2) != 3830");
    double ratio = improvement_ratio();
    r.check(std::abs(ratio - kPaperRatio) <= kRatioTol, "asymptotic ratio " + std::to_string(ratio));
    if (r.pass) {
        std::ostringstream s;
        s << "composition exact for n in [1,64]; prior(2) = 3830; asymptotic " << std::fixed << std::setprecision(6)
          << ratio;
        r.detail = s.str();
    }
    return r;
}

Result whole_circuit_tcount() {
    Result r;
    std::ostringstream s;
    for (int n : {1, 2, 4}) {
        std::int64_t bound = formula_proposed_tcount(n);
        for (ScaleMode mode : {ScaleMode::down, ScaleMode::up}) {
            for (int q : {1, 4}) {
                auto t = static_cast<std::int64_t>(
                    count_resources_macro(build_interpolation({mode, n, n, q}).circuit).t_type());
                s << to_string(mode) << " n=" << n << " q=" << q << ": " << t << " vs " << bound << "; ";
                r.check(t <= bound, "");
            }
        }
    }
    r.detail = s.str();
    return r;
}

Result end_to_end() {
    Result r;
    std::mt19937 rng(20261014);
    std::size_t checked = 0;
    for (ScaleMode mode : {ScaleMode::down, ScaleMode::up}) {
        InterpolationCircuit ic = build_interpolation({mode, 2, 1, 4});
        std::uint64_t pos_range = mode == ScaleMode::down ? 4 : 8;
        auto check = [&](std::uint64_t py, std::uint64_t px, PixelNeighborhood neigh) {
            auto got = simulate_pixel(ic, {py, px, neigh}).color;
            auto want = oracle::bilerp_color(neigh, static_cast<std::uint32_t>(py & 1), static_cast<std::uint32_t>(px & 1), 1);
            r.check(got == want, std::string(to_string(mode)) + " tuple mismatch");
            ++checked;
        };
        std::uniform_int_distribution<std::uint32_t> color(0, 15);
        for (int i = 0; i < kRandomTuples; ++i) {
            check(rng() % pos_range, rng() % pos_range, {color(rng), color(rng), color(rng), color(rng)});
        }
        // Exhaustive weight grid, each weight pair over a sweep of colors.
        for (std::uint64_t wy = 0; wy < 2; ++wy) {
            for (std::uint64_t wx = 0; wx < 2; ++wx) {
                for (std::uint32_t c = 0; c < 16; ++c) {
                    check(wy, wx, {c, 15 - c, (c * 7) % 16, (c * 5 + 3) % 16});
                }
            }
        }
    }
    std::size_t images = 0;
    for (const char* name : {"constant9_4x4.pgm", "ramp_4x4.pgm", "checker_4x4.pgm"}) {
        for (const char* mode : {"down", "up"}) {
            std::string path = (std::filesystem::path(QBILERP_FIXTURE_DIR) / name).string();
            std::ostringstream out, err;
            int code = cli::run({"interpolate", path, "--mode", mode, "--n", "1", "--backend", "both"}, out, err);
            r.check(code == cli::kExitOk && out.str().find("backend agreement: yes") != std::string::npos,
                    std::string(name) + " " + mode + ": " + err.str());
            ++images;
        }
    }
    if (r.pass) r.detail = std::to_string(checked) + " tuples and " + std::to_string(images) + " image runs agree";
    return r;
}

Result invariants() {
    Result r;
    // Constant-image fixed point.
    for (ScaleMode mode : {ScaleMode::down, ScaleMode::up}) {
        for (int n : {1, 2}) {
            InterpolationSpec spec{mode, 2, n, 4};
            for (std::uint32_t v : {0u, 9u, 15u}) {
                NEQRImage img = NEQRImage::filled(2, 4, v);
                NEQRImage out = interpolate_image(img, spec, Backend::permutation_sim);
                int m_out = mode == ScaleMode::down ? 2 - n : 2 + n;
                r.check(out == NEQRImage::filled(m_out, 4, v), "constant image not preserved");
            }
        }
    }
    // Subtractor undoes adder; carry ancillae restored.
    for (std::size_t n = 1; n <= 4; ++n) {
        Circuit c;
        auto a = operand(c, "A", n);
        auto b = operand(c, "B", n);
        build_adder(c, a, b);
        build_subtractor(c, a, b);
        EquivalenceVerdict v = assert_equivalence(c, PermutationReference{cat(a, b), [](std::uint64_t x) { return x; }});
        r.check(v.pass, "subtractor does not invert adder at n=" + std::to_string(n));
    }
    // Ancilla restoration inside the interpolation circuit: every qubit not
    // in an input, output, or garbage register ends at zero.
    InterpolationCircuit ic = build_scale_down({ScaleMode::down, 2, 1, 4});
    std::vector<QubitId> keep = cat(ic.layout.y, ic.layout.x);
    for (const auto& reg : ic.layout.colors) keep = cat(keep, reg);
    keep = cat(keep, ic.layout.accumulator);
    for (const auto& name : ic.layout.garbage) keep = cat(keep, ic.circuit.find_register(name)->qubits);
    std::mt19937 rng(1);
    for (int i = 0; i < 64; ++i) {
        PixelInput in{rng() % 4, rng() % 4,
                      {static_cast<std::uint32_t>(rng() % 16), static_cast<std::uint32_t>(rng() % 16),
                       static_cast<std::uint32_t>(rng() % 16), static_cast<std::uint32_t>(rng() % 16)}};
        ClassicalState out = run_permutation(ic.circuit, load_pixel_input(ic, in));
        r.check(zero_outside(out, keep), "ancilla left dirty");
    }
    // Branch agreement on gadgets and small blocks.
    {
        Circuit c;
        auto a = operand(c, "A", 2);
        auto b = operand(c, "B", 2);
        build_adder(c, a, b);
        emit_toffoli(c, a[0], b[1], a[1]);
        build_conditional_adder(c, b[0], a, std::vector<QubitId>{b[1], operand(c, "z", 1)[0]});
        for (std::uint64_t v = 0; v < 32; ++v) {
            ClassicalState in(c.qubit_count());
            in.write(cat(cat(a, b), {c.find_register("z")->qubits[0]}), v);
            r.check(statevector_agrees(c, in, run_permutation(c, in)), "branches disagree");
        }
    }
    if (r.pass) r.detail = "fixed point, inversion, ancilla restoration, branch agreement";
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all = {
        {1, "gadget T-counts", 1.0, gadget_tcounts},
        {2, "Toffoli gadget equals ideal Toffoli", 1.0, toffoli_semantics},
        {3, "arithmetic exhaustive correctness", 60.0, arithmetic_exhaustive},
        {4, "block T-count bounds", 10.0, block_bounds},
        {5, "block census", 1.0, census_tables},
        {6, "closed-form T-count formulas", 1.0, formulas},
        {7, "whole-circuit T-count within 64n^2-12n-8", 10.0, whole_circuit_tcount},
        {8, "end-to-end oracle equivalence", 120.0, end_to_end},
        {9, "invariant suite", 60.0, invariants},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (const Criterion& c : all) {
        if (only && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Result res;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) {
            res.pass = false;
            res.detail += " (over time limit)";
        }
        std::printf("criterion %d %s  %-44s %8.3f s / %5.0f s  %s\n", c.id, res.pass ? "PASS" : "FAIL", c.title, secs,
                    c.limit_seconds, res.detail.c_str());
        failures += res.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
