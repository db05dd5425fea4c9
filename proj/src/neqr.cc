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

#include "qbilerp/neqr.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qbilerp {

NEQRImage::NEQRImage(int m, int q, std::vector<std::uint32_t> pixels) : m_(m), q_(q), pixels_(std::move(pixels)) {
    if (m < 0 || m > 15) {
        throw ImageError("position width m out of range: " + std::to_string(m));
    }
    if (q < 1 || q > 16) {
        throw ImageError("color width q must be in [1, 16], got " + std::to_string(q));
    }
    if (pixels_.size() != side() * side()) {
        throw ImageError("pixel array length " + std::to_string(pixels_.size()) + " does not match 2^(2m) = " +
                         std::to_string(side() * side()));
    }
    for (std::uint32_t p : pixels_) {
        if (p > max_value()) {
            throw ImageError("pixel value " + std::to_string(p) + " exceeds 2^q - 1 = " + std::to_string(max_value()));
        }
    }
}

NEQRImage NEQRImage::filled(int m, int q, std::uint32_t value) {
    std::size_t side = std::size_t{1} << m;
    return NEQRImage(m, q, std::vector<std::uint32_t>(side * side, value));
}

std::uint32_t NEQRImage::at(std::size_t y, std::size_t x) const {
    if (y >= side() || x >= side()) {
        throw ImageError("coordinate (" + std::to_string(y) + ", " + std::to_string(x) + ") out of range");
    }
    return pixels_[y * side() + x];
}

void NEQRImage::set(std::size_t y, std::size_t x, std::uint32_t value) {
    if (y >= side() || x >= side()) {
        throw ImageError("coordinate (" + std::to_string(y) + ", " + std::to_string(x) + ") out of range");
    }
    if (value > max_value()) {
        throw ImageError("pixel value " + std::to_string(value) + " exceeds 2^q - 1");
    }
    pixels_[y * side() + x] = value;
}

std::uint64_t encode_pixel_basis_index(const NEQRImage& image, std::size_t y, std::size_t x) {
    std::uint64_t c = image.at(y, x);
    auto m = static_cast<unsigned>(image.m());
    auto q = static_cast<unsigned>(image.q());
    return (std::uint64_t{y} << (m + q)) | (std::uint64_t{x} << q) | c;
}

PixelFields decode_pixel_basis_index(std::uint64_t index, int m, int q) {
    auto um = static_cast<unsigned>(m);
    auto uq = static_cast<unsigned>(q);
    std::uint64_t cmask = (std::uint64_t{1} << uq) - 1;
    std::uint64_t pmask = (std::uint64_t{1} << um) - 1;
    return {(index >> (um + uq)) & pmask, (index >> uq) & pmask, index & cmask};
}

PixelNeighborhood neighborhood(const NEQRImage& image, std::size_t y, std::size_t x) {
    std::size_t last = image.side() - 1;
    std::size_t y1 = std::min(y + 1, last);
    std::size_t x1 = std::min(x + 1, last);
    return {image.at(y, x), image.at(y1, x), image.at(y, x1), image.at(y1, x1)};
}

namespace {

// Splits PGM text into whitespace-separated tokens, dropping '#' comments.
std::vector<std::string> pgm_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    bool comment = false;
    for (char ch : text) {
        if (comment) {
            if (ch == '\n' || ch == '\r') {
                comment = false;
            }
            continue;
        }
        if (ch == '#') {
            comment = true;
        }
        if (ch == '#' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            if (!cur.empty()) {
                tokens.push_back(std::move(cur));
                cur.clear();
            }
            continue;
        }
        cur.push_back(ch);
    }
    if (!cur.empty()) {
        tokens.push_back(std::move(cur));
    }
    return tokens;
}

std::uint64_t pgm_number(const std::string& tok, const char* field) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ImageError(std::string("malformed PGM ") + field + ": '" + tok + "'");
    }
    return v;
}

}  // namespace

NEQRImage parse_pgm(std::string_view text) {
    auto tokens = pgm_tokens(text);
    if (tokens.size() < 4 || tokens[0] != "P2") {
        throw ImageError("malformed PGM header: expected 'P2 <width> <height> <maxval>'");
    }
    std::uint64_t width = pgm_number(tokens[1], "width");
    std::uint64_t height = pgm_number(tokens[2], "height");
    std::uint64_t maxval = pgm_number(tokens[3], "maxval");
    if (width != height) {
        throw ImageError("PGM image is not square: " + std::to_string(width) + "x" + std::to_string(height));
    }
    if (width == 0 || !std::has_single_bit(width)) {
        throw ImageError("PGM side " + std::to_string(width) + " is not a power of two");
    }
    if (maxval == 0 || maxval > 65535 || !std::has_single_bit(maxval + 1)) {
        throw ImageError("PGM maxval " + std::to_string(maxval) + " is not 2^q - 1 for 1 <= q <= 16");
    }
    int m = std::countr_zero(width);
    int q = std::countr_zero(maxval + 1);
    std::size_t count = width * height;
    if (tokens.size() != 4 + count) {
        throw ImageError("PGM sample count " + std::to_string(tokens.size() - 4) + " does not match " +
                         std::to_string(count));
    }
    std::vector<std::uint32_t> pixels;
    pixels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t v = pgm_number(tokens[4 + i], "sample");
        if (v > maxval) {
            throw ImageError("PGM sample " + std::to_string(v) + " exceeds maxval");
        }
        pixels.push_back(static_cast<std::uint32_t>(v));
    }
    return NEQRImage(m, q, std::move(pixels));
}

std::string format_pgm(const NEQRImage& image) {
    std::ostringstream out;
    out << "P2\n" << image.side() << ' ' << image.side() << '\n' << image.max_value() << '\n';
    for (std::size_t y = 0; y < image.side(); ++y) {
        for (std::size_t x = 0; x < image.side(); ++x) {
            if (x > 0) {
                out << ' ';
            }
            out << image.at(y, x);
        }
        out << '\n';
    }
    return out.str();
}

NEQRImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ImageError("cannot open image: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pgm(buf.str());
}

void save_pgm(const NEQRImage& image, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ImageError("cannot write image: " + path.string());
    }
    out << format_pgm(image);
}

}  // namespace qbilerp
