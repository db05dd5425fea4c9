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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qbilerp {

class ImageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Square 2^m x 2^m grayscale image with q-bit pixels, row-major.
class NEQRImage {
   public:
    NEQRImage(int m, int q, std::vector<std::uint32_t> pixels);
    static NEQRImage filled(int m, int q, std::uint32_t value);

    int m() const { return m_; }
    int q() const { return q_; }
    std::size_t side() const { return std::size_t{1} << m_; }
    std::uint32_t max_value() const { return (std::uint32_t{1} << q_) - 1; }
    const std::vector<std::uint32_t>& pixels() const { return pixels_; }

    std::uint32_t at(std::size_t y, std::size_t x) const;
    void set(std::size_t y, std::size_t x, std::uint32_t value);

    bool operator==(const NEQRImage&) const = default;

   private:
    int m_;
    int q_;
    std::vector<std::uint32_t> pixels_;
};

/// Colors of the 2x2 block anchored at (y, x).
struct PixelNeighborhood {
    std::uint32_t c_yx = 0;
    std::uint32_t c_y1x = 0;
    std::uint32_t c_yx1 = 0;
    std::uint32_t c_y1x1 = 0;
    bool operator==(const PixelNeighborhood&) const = default;
};

/// Fields of a basis index |Y>|X>|C>; Y occupies the most significant bits.
struct PixelFields {
    std::uint64_t y = 0;
    std::uint64_t x = 0;
    std::uint64_t c = 0;
    bool operator==(const PixelFields&) const = default;
};

std::uint64_t encode_pixel_basis_index(const NEQRImage& image, std::size_t y, std::size_t x);
PixelFields decode_pixel_basis_index(std::uint64_t index, int m, int q);

/// Neighbors past the last row or column replicate the edge.
PixelNeighborhood neighborhood(const NEQRImage& image, std::size_t y, std::size_t x);

/// Plain-text PGM ("P2"). The side must be a power of two and maxval
/// 2^q - 1 with 1 <= q <= 16.
NEQRImage parse_pgm(std::string_view text);
std::string format_pgm(const NEQRImage& image);
NEQRImage load_pgm(const std::filesystem::path& path);
void save_pgm(const NEQRImage& image, const std::filesystem::path& path);

}  // namespace qbilerp
