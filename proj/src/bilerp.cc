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

#include "qbilerp/bilerp.h"

#include <algorithm>

#include "qbilerp/arithmetic.h"
#include "qbilerp/oracle.h"

namespace qbilerp {

std::string_view to_string(ScaleMode mode) { return mode == ScaleMode::down ? "down" : "up"; }

std::optional<ScaleMode> parse_scale_mode(std::string_view text) {
    if (text == "down") return ScaleMode::down;
    if (text == "up") return ScaleMode::up;
    return std::nullopt;
}

std::string_view to_string(Backend backend) { return backend == Backend::oracle ? "oracle" : "permutation_sim"; }

void InterpolationSpec::validate() const {
    if (n < 1) {
        throw InterpolationError("scale exponent n must be >= 1, got " + std::to_string(n));
    }
    if (q < 1) {
        throw InterpolationError("color width q must be >= 1, got " + std::to_string(q));
    }
    if (m < 1) {
        throw InterpolationError("position width m must be >= 1, got " + std::to_string(m));
    }
    if (mode == ScaleMode::down && n > m) {
        throw InterpolationError("scale-down needs n <= m (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
    }
    if (q > 16 || m + n > 24) {
        throw InterpolationError("spec too large for 64-bit per-pixel bookkeeping");
    }
}

namespace {

std::vector<QubitId> concat(const std::vector<QubitId>& lo, const std::vector<QubitId>& hi) {
    std::vector<QubitId> out = lo;
    out.insert(out.end(), hi.begin(), hi.end());
    return out;
}

std::vector<QubitId> head(const std::vector<QubitId>& v, std::size_t k) {
    return std::vector<QubitId>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(k, v.size())));
}

const std::array<const char*, 4> kNeighborSuffix = {"yx", "y1x", "yx1", "y1x1"};

// Steps 1-5 given the qubits whose values are the n-bit weights.
void build_arithmetic(Circuit& c, InterpolationLayout& L, const std::vector<QubitId>& weight_y,
                      const std::vector<QubitId>& weight_x) {
    const auto n = static_cast<std::size_t>(L.spec.n);
    const auto q = static_cast<std::size_t>(L.spec.q);

    // Step 1: copy the weights into n+1 bit registers.
    L.w_y = c.alloc_register("w_y", n + 1, RegisterRole::garbage).qubits;
    L.w_x = c.alloc_register("w_x", n + 1, RegisterRole::garbage).qubits;
    for (std::size_t i = 0; i < n; ++i) {
        c.append(Gate::cnot(weight_y[i], L.w_y[i]));
        c.append(Gate::cnot(weight_x[i], L.w_x[i]));
    }

    // Step 2: complements 2^n - w, each against its own loaded constant.
    L.comp_y = c.alloc_register("comp_y", n + 1, RegisterRole::constant).qubits;
    L.comp_x = c.alloc_register("comp_x", n + 1, RegisterRole::constant).qubits;
    c.append(Gate::x(L.comp_y[n]));
    c.append(Gate::x(L.comp_x[n]));
    build_subtractor(c, L.w_y, L.comp_y);
    build_subtractor(c, L.w_x, L.comp_x);

    // Step 3: pairwise weight products.
    const std::array<std::pair<const std::vector<QubitId>*, const std::vector<QubitId>*>, 4> factors = {{
        {&L.comp_y, &L.comp_x},
        {&L.w_y, &L.comp_x},
        {&L.comp_y, &L.w_x},
        {&L.w_y, &L.w_x},
    }};
    for (std::size_t k = 0; k < 4; ++k) {
        L.weight_products[k] =
            c.alloc_register(std::string("P_") + kNeighborSuffix[k], 2 * (n + 1), RegisterRole::garbage).qubits;
        build_multiplier(c, *factors[k].first, *factors[k].second, L.weight_products[k]);
    }

    // Step 4: weight product times color. A weight product is at most 2^(2n),
    // so its low 2n+1 bits suffice; both operands are zero-padded to W bits.
    const std::size_t W = std::max(2 * n + 1, q);
    L.color_operand_width = W;
    const std::size_t product_bits = std::min(W, 2 * (n + 1));
    std::vector<QubitId> pad_w;
    std::vector<QubitId> pad_c;
    if (W > product_bits) {
        pad_w = c.alloc_register("pad_w", W - product_bits, RegisterRole::constant).qubits;
    }
    if (W > q) {
        pad_c = c.alloc_register("pad_c", W - q, RegisterRole::constant).qubits;
    }
    for (std::size_t k = 0; k < 4; ++k) {
        std::string name = k == 0 ? "acc" : std::string("CP_") + kNeighborSuffix[k];
        RegisterRole role = k == 0 ? RegisterRole::output : RegisterRole::garbage;
        L.color_products[k] = c.alloc_register(name, 2 * W, role).qubits;
        std::vector<QubitId> a = concat(head(L.weight_products[k], product_bits), pad_w);
        std::vector<QubitId> b = concat(L.colors[k], pad_c);
        build_multiplier(c, a, b, L.color_products[k]);
    }
    L.accumulator = L.color_products[0];

    // Step 5: sum the four terms on q+2n bits; drop the low 2n bits.
    const std::size_t sum_bits = q + 2 * n;
    std::vector<QubitId> acc_low = head(L.accumulator, sum_bits);
    for (std::size_t k = 1; k < 4; ++k) {
        build_adder(c, head(L.color_products[k], sum_bits), acc_low);
    }
    L.c_out.assign(L.accumulator.begin() + static_cast<std::ptrdiff_t>(2 * n),
                   L.accumulator.begin() + static_cast<std::ptrdiff_t>(2 * n + q));

    L.garbage = {"w_y", "w_x", "comp_y", "comp_x"};
    for (std::size_t k = 0; k < 4; ++k) L.garbage.push_back(std::string("P_") + kNeighborSuffix[k]);
    for (std::size_t k = 1; k < 4; ++k) L.garbage.push_back(std::string("CP_") + kNeighborSuffix[k]);
}

InterpolationCircuit start(const InterpolationSpec& spec) {
    spec.validate();
    InterpolationCircuit ic;
    ic.layout.spec = spec;
    const auto m = static_cast<std::size_t>(spec.m);
    const auto q = static_cast<std::size_t>(spec.q);
    ic.layout.y = ic.circuit.alloc_register("Y", m, RegisterRole::position_y).qubits;
    ic.layout.x = ic.circuit.alloc_register("X", m, RegisterRole::position_x).qubits;
    if (spec.mode == ScaleMode::up) {
        ic.layout.sub_y = ic.circuit.alloc_register("Ysub", spec.n, RegisterRole::position_y).qubits;
        ic.layout.sub_x = ic.circuit.alloc_register("Xsub", spec.n, RegisterRole::position_x).qubits;
    }
    for (std::size_t k = 0; k < 4; ++k) {
        ic.layout.colors[k] =
            ic.circuit.alloc_register(std::string("C_") + kNeighborSuffix[k], q, RegisterRole::color).qubits;
    }
    return ic;
}

}  // namespace

InterpolationCircuit build_scale_down(const InterpolationSpec& spec) {
    if (spec.mode != ScaleMode::down) {
        throw InterpolationError("build_scale_down needs mode down");
    }
    InterpolationCircuit ic = start(spec);
    auto& L = ic.layout;
    const auto n = static_cast<std::size_t>(spec.n);
    L.ybar.assign(L.y.begin() + static_cast<std::ptrdiff_t>(n), L.y.end());
    L.xbar.assign(L.x.begin() + static_cast<std::ptrdiff_t>(n), L.x.end());
    build_arithmetic(ic.circuit, L, head(L.y, n), head(L.x, n));
    ic.circuit.validate();
    return ic;
}

InterpolationCircuit build_scale_up(const InterpolationSpec& spec) {
    if (spec.mode != ScaleMode::up) {
        throw InterpolationError("build_scale_up needs mode up");
    }
    InterpolationCircuit ic = start(spec);
    auto& L = ic.layout;
    L.ybar = concat(L.sub_y, L.y);
    L.xbar = concat(L.sub_x, L.x);
    build_arithmetic(ic.circuit, L, L.sub_y, L.sub_x);
    ic.circuit.validate();
    return ic;
}

InterpolationCircuit build_interpolation(const InterpolationSpec& spec) {
    return spec.mode == ScaleMode::down ? build_scale_down(spec) : build_scale_up(spec);
}

ClassicalState load_pixel_input(const InterpolationCircuit& ic, const PixelInput& input) {
    const InterpolationLayout& L = ic.layout;
    const int n = L.spec.n;
    const int m = L.spec.m;
    ClassicalState s(ic.circuit.qubit_count());
    if (L.spec.mode == ScaleMode::down) {
        if (input.position_y >> m || input.position_x >> m) {
            throw InterpolationError("source position out of range");
        }
        s.write(L.y, input.position_y);
        s.write(L.x, input.position_x);
    } else {
        if (input.position_y >> (m + n) || input.position_x >> (m + n)) {
            throw InterpolationError("output position out of range");
        }
        s.write(L.ybar, input.position_y);
        s.write(L.xbar, input.position_x);
    }
    const std::array<std::uint32_t, 4> colors = {input.neighborhood.c_yx, input.neighborhood.c_y1x,
                                                 input.neighborhood.c_yx1, input.neighborhood.c_y1x1};
    for (std::size_t k = 0; k < 4; ++k) {
        if (colors[k] >> L.spec.q) {
            throw InterpolationError("neighbor color exceeds q bits");
        }
        s.write(L.colors[k], colors[k]);
    }
    return s;
}

PixelOutput read_pixel_output(const InterpolationLayout& layout, const ClassicalState& state) {
    return {static_cast<std::uint32_t>(state.read(layout.c_out)), state.read(layout.ybar), state.read(layout.xbar)};
}

PixelOutput simulate_pixel(const InterpolationCircuit& ic, const PixelInput& input) {
    return read_pixel_output(ic.layout, run_permutation(ic.circuit, load_pixel_input(ic, input), true));
}

NEQRImage interpolate_image(const NEQRImage& image, const InterpolationSpec& spec, Backend backend,
                            std::uint32_t subpixel_y, std::uint32_t subpixel_x) {
    spec.validate();
    if (image.m() != spec.m || image.q() != spec.q) {
        throw InterpolationError("image is " + std::to_string(image.side()) + "x" + std::to_string(image.side()) +
                                 " with q=" + std::to_string(image.q()) + ", spec expects m=" +
                                 std::to_string(spec.m) + " q=" + std::to_string(spec.q));
    }
    const std::uint32_t block = std::uint32_t{1} << spec.n;
    if (subpixel_y >= block || subpixel_x >= block) {
        throw InterpolationError("subpixel offset must be below 2^n");
    }
    if (backend == Backend::oracle) {
        return spec.mode == ScaleMode::down ? oracle::scale_down(image, spec.n, subpixel_y, subpixel_x)
                                            : oracle::scale_up(image, spec.n);
    }
    InterpolationCircuit ic = build_interpolation(spec);
    if (spec.mode == ScaleMode::down) {
        const int m_out = spec.m - spec.n;
        NEQRImage out = NEQRImage::filled(m_out, spec.q, 0);
        for (std::size_t yb = 0; yb < out.side(); ++yb) {
            for (std::size_t xb = 0; xb < out.side(); ++xb) {
                std::uint64_t y = yb * block + subpixel_y;
                std::uint64_t x = xb * block + subpixel_x;
                PixelOutput px = simulate_pixel(ic, {y, x, neighborhood(image, y, x)});
                if (px.ybar != yb || px.xbar != xb) {
                    throw InterpolationError("output position register disagrees with pixel index");
                }
                out.set(yb, xb, px.color);
            }
        }
        return out;
    }
    NEQRImage out = NEQRImage::filled(spec.m + spec.n, spec.q, 0);
    for (std::size_t y = 0; y < out.side(); ++y) {
        for (std::size_t x = 0; x < out.side(); ++x) {
            PixelOutput px = simulate_pixel(ic, {y, x, neighborhood(image, y >> spec.n, x >> spec.n)});
            if (px.ybar != y || px.xbar != x) {
                throw InterpolationError("output position register disagrees with pixel index");
            }
            out.set(y, x, px.color);
        }
    }
    return out;
}

}  // namespace qbilerp
