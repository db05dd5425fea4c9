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

#include <cstdint>
#include <stdexcept>

#include "qbilerp/neqr.h"

// Classical reference arithmetic. Everything here is plain integer code and
// is the ground truth the circuits are checked against.
namespace qbilerp::oracle {

class OracleError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct FixedPointWeights {
    std::uint32_t w_y = 0;
    std::uint32_t w_x = 0;
    int n = 1;

    std::uint32_t scale() const { return std::uint32_t{1} << n; }
    std::uint32_t complement_y() const { return scale() - w_y; }
    std::uint32_t complement_x() const { return scale() - w_x; }
};

/// floor(sum of the four weighted colors / 2^(2n)), weights w in [0, 2^n).
std::uint32_t bilerp_color(const PixelNeighborhood& neigh, std::uint32_t w_y, std::uint32_t w_x, int n);

/// Output pixel (yb, xb) is the interpolated color of source pixel
/// (yb*2^n + sub_y, xb*2^n + sub_x) with that pixel's low bits as weights.
NEQRImage scale_down(const NEQRImage& image, int n, std::uint32_t sub_y = 0, std::uint32_t sub_x = 0);

/// Output pixel (Y, X) interpolates around source (Y >> n, X >> n) with
/// the low n bits of Y and X as weights.
NEQRImage scale_up(const NEQRImage& image, int n);

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, int n);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, int n);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, int n);

}  // namespace qbilerp::oracle
