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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbilerp/circuit.h"
#include "qbilerp/neqr.h"
#include "qbilerp/simulator.h"

namespace qbilerp {

class InterpolationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class ScaleMode { down, up };

std::string_view to_string(ScaleMode mode);
std::optional<ScaleMode> parse_scale_mode(std::string_view text);

struct InterpolationSpec {
    ScaleMode mode = ScaleMode::down;
    int m = 1;
    int n = 1;
    int q = 1;

    /// Throws InterpolationError unless 1 <= n, q >= 1, and n <= m for down.
    void validate() const;
};

/// Where everything lives in a generated interpolation circuit. All lists
/// are LSB first. Neighbor-indexed arrays use the order
/// (y,x), (y+1,x), (y,x+1), (y+1,x+1).
struct InterpolationLayout {
    InterpolationSpec spec;
    std::vector<QubitId> y;
    std::vector<QubitId> x;
    /// Sub-position bits below Y and X (scale-up only).
    std::vector<QubitId> sub_y;
    std::vector<QubitId> sub_x;
    /// Output positions; aliases of existing qubits.
    std::vector<QubitId> ybar;
    std::vector<QubitId> xbar;
    std::array<std::vector<QubitId>, 4> colors;
    /// n+1 bit registers holding the weights and their complements 2^n - w.
    std::vector<QubitId> w_y;
    std::vector<QubitId> w_x;
    std::vector<QubitId> comp_y;
    std::vector<QubitId> comp_x;
    std::array<std::vector<QubitId>, 4> weight_products;
    std::array<std::vector<QubitId>, 4> color_products;
    /// The (y,x) color product; the other terms are added into it.
    std::vector<QubitId> accumulator;
    std::vector<QubitId> c_out;
    /// Names of registers left in data-dependent states.
    std::vector<std::string> garbage;

    /// Width of the operands of the color multipliers.
    std::size_t color_operand_width = 0;
};

struct InterpolationCircuit {
    Circuit circuit;
    InterpolationLayout layout;
};

InterpolationCircuit build_scale_down(const InterpolationSpec& spec);
InterpolationCircuit build_scale_up(const InterpolationSpec& spec);
/// Dispatches on spec.mode.
InterpolationCircuit build_interpolation(const InterpolationSpec& spec);

/// One per-pixel evaluation. For scale-down `position_y` is the m-bit
/// source position Y, whose low n bits are the weight. For scale-up it is
/// the (m+n)-bit output position: its high m bits load Y and its low n bits
/// are the sub-position.
struct PixelInput {
    std::uint64_t position_y = 0;
    std::uint64_t position_x = 0;
    PixelNeighborhood neighborhood;
};

ClassicalState load_pixel_input(const InterpolationCircuit& ic, const PixelInput& input);

struct PixelOutput {
    std::uint32_t color = 0;
    std::uint64_t ybar = 0;
    std::uint64_t xbar = 0;
};

PixelOutput read_pixel_output(const InterpolationLayout& layout, const ClassicalState& state);

/// Runs one pixel through the circuit at permutation level.
PixelOutput simulate_pixel(const InterpolationCircuit& ic, const PixelInput& input);

enum class Backend { oracle, permutation_sim };

std::string_view to_string(Backend backend);

/// Interpolates a whole image one output pixel at a time. `subpixel`
/// selects the source pixel inside each 2^n block for scale-down.
NEQRImage interpolate_image(const NEQRImage& image, const InterpolationSpec& spec, Backend backend,
                            std::uint32_t subpixel_y = 0, std::uint32_t subpixel_x = 0);

}  // namespace qbilerp
