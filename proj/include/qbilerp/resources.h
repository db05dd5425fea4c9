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
#include <optional>
#include <stdexcept>

#include "qbilerp/circuit.h"

namespace qbilerp {

class FormulaError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Gate tallies over the primitive gate list.
///
/// A magic_A initial state stands for one T applied to |+>, so each one is
/// counted in magic_state_count and contributes to t_type(). Under
/// MagicPrep::gates the preparing T appears in t_count instead; either way a
/// temporary AND costs 4.
struct ResourceReport {
    std::uint64_t t_count = 0;
    std::uint64_t tdg_count = 0;
    std::uint64_t magic_state_count = 0;
    std::uint64_t cnot_count = 0;
    std::uint64_t h_count = 0;
    std::uint64_t s_count = 0;
    std::uint64_t x_count = 0;
    std::uint64_t cz_count = 0;
    std::uint64_t measurement_count = 0;
    std::uint64_t qubit_count = 0;
    std::uint64_t ancilla_high_water = 0;

    std::uint64_t t_type() const { return t_count + tdg_count + magic_state_count; }
    bool operator==(const ResourceReport&) const = default;
};

/// Expands macros if needed and tallies the primitive gates. An X-basis
/// measurement counts as one measurement and one H (the basis change).
ResourceReport count_resources(const Circuit& circuit);

/// Same totals computed from fixed per-macro contributions, without
/// building the expanded circuit.
ResourceReport count_resources_macro(const Circuit& circuit);

enum class DesignVariant { proposed, prior };

struct BlockCensus {
    std::uint64_t adders = 0;
    std::uint64_t conditional_adders = 0;
    std::uint64_t subtractors = 0;
    std::uint64_t multipliers = 0;
    std::uint64_t dividers = 0;
    bool operator==(const BlockCensus&) const = default;
};

BlockCensus census(const Circuit& circuit);

/// Closed-form block T-counts and block multiplicities for one design.
struct CostModel {
    DesignVariant variant = DesignVariant::proposed;

    static CostModel proposed() { return {DesignVariant::proposed}; }
    static CostModel prior() { return {DesignVariant::prior}; }

    std::int64_t adder(std::int64_t n) const;
    std::int64_t subtractor(std::int64_t n) const;
    std::int64_t conditional_adder(std::int64_t n) const;
    std::int64_t multiplier(std::int64_t n) const;
    /// Stored as exactly 400 n^2; the published value is approximate.
    std::int64_t divider(std::int64_t n) const;
    bool divider_is_approximate() const { return variant == DesignVariant::prior; }

    /// Interpolation-circuit block counts.
    BlockCensus multiplicities() const;
};

/// 64n^2 - 12n - 8.
std::int64_t formula_proposed_tcount(std::int64_t n);
/// 856n^2 + 196n - 98 + 8 * sum_{i=1}^{log2 n} (n/2^i)(14(n + i - 2^(i-1)) - 14).
/// n must be a power of two.
std::int64_t formula_prior_tcount(std::int64_t n);
bool is_power_of_two(std::int64_t n);

/// Sum of block T-count times multiplicity.
std::int64_t composed_tcount(const CostModel& model, std::int64_t n);

/// 1 - proposed/prior at n, or 1 - 64/856 when n is absent.
double improvement_ratio(std::optional<std::int64_t> n = std::nullopt);

}  // namespace qbilerp
