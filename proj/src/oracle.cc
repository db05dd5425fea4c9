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

#include "qbilerp/oracle.h"

#include <string>

namespace qbilerp::oracle {

namespace {

void check_operand(std::uint64_t v, int n) {
    if (n < 1 || n > 31) {
        throw OracleError("bit width out of range: " + std::to_string(n));
    }
    if (v >> n) {
        throw OracleError("operand " + std::to_string(v) + " does not fit in " + std::to_string(n) + " bits");
    }
}

}  // namespace

std::uint32_t bilerp_color(const PixelNeighborhood& neigh, std::uint32_t w_y, std::uint32_t w_x, int n) {
    if (n < 1 || n > 15) {
        throw OracleError("scale exponent out of range: " + std::to_string(n));
    }
    std::uint64_t s = std::uint64_t{1} << n;
    if (w_y >= s || w_x >= s) {
        throw OracleError("weight out of range [0, 2^n)");
    }
    std::uint64_t sum = (s - w_y) * (s - w_x) * neigh.c_yx + std::uint64_t{w_y} * (s - w_x) * neigh.c_y1x +
                        (s - w_y) * std::uint64_t{w_x} * neigh.c_yx1 +
                        std::uint64_t{w_y} * std::uint64_t{w_x} * neigh.c_y1x1;
    return static_cast<std::uint32_t>(sum >> (2 * n));
}

NEQRImage scale_down(const NEQRImage& image, int n, std::uint32_t sub_y, std::uint32_t sub_x) {
    if (n < 1 || n > image.m()) {
        throw OracleError("scale-down exponent must satisfy 1 <= n <= m");
    }
    std::uint32_t s = std::uint32_t{1} << n;
    if (sub_y >= s || sub_x >= s) {
        throw OracleError("sub-pixel offset out of range [0, 2^n)");
    }
    int out_m = image.m() - n;
    NEQRImage out = NEQRImage::filled(out_m, image.q(), 0);
    for (std::size_t yb = 0; yb < out.side(); ++yb) {
        for (std::size_t xb = 0; xb < out.side(); ++xb) {
            std::size_t y = yb * s + sub_y;
            std::size_t x = xb * s + sub_x;
            out.set(yb, xb, bilerp_color(neighborhood(image, y, x), sub_y, sub_x, n));
        }
    }
    return out;
}

NEQRImage scale_up(const NEQRImage& image, int n) {
    if (n < 1 || image.m() + n > 15) {
        throw OracleError("scale-up exponent out of range");
    }
    std::uint32_t mask = (std::uint32_t{1} << n) - 1;
    NEQRImage out = NEQRImage::filled(image.m() + n, image.q(), 0);
    for (std::size_t y = 0; y < out.side(); ++y) {
        for (std::size_t x = 0; x < out.side(); ++x) {
            auto neigh = neighborhood(image, y >> n, x >> n);
            out.set(y, x, bilerp_color(neigh, static_cast<std::uint32_t>(y) & mask, static_cast<std::uint32_t>(x) & mask, n));
        }
    }
    return out;
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, int n) {
    check_operand(a, n);
    check_operand(b, n);
    return (a + b) & ((std::uint64_t{1} << n) - 1);
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, int n) {
    check_operand(a, n);
    check_operand(b, n);
    return (a - b) & ((std::uint64_t{1} << n) - 1);
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, int n) {
    check_operand(a, n);
    check_operand(b, n);
    return a * b;
}

}  // namespace qbilerp::oracle
