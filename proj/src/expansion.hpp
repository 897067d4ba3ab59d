#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bitalgebra.hpp"

namespace belief {

// 2^P cells must stay enumerable at desk scale.
inline constexpr int kMaxTotalBits = 24;

enum class VarKind { ContinuousEcdf, ContinuousKnownRange, Binary };

struct VariableSpec {
    std::string name;
    VarKind kind = VarKind::ContinuousEcdf;
    int depth = 1;
    // Known-range rescale endpoints.
    double lo = -1.0;
    double hi = 1.0;
    // Level mapped to +1 for binary variables; the other observed level maps
    // to -1. negative_level may be left empty and inferred from the data.
    std::string positive_level;
    std::string negative_level;
};

struct ExpansionConfig {
    std::vector<VariableSpec> vars;

    int total_bits() const;
    void validate() const;
};

// Midrank ECDF rescale onto (-1, 1): u_i = (2 r_i - n - 1) / n with r_i the
// midrank of x_i. Ties share the average of their rank range.
std::vector<double> ecdf_rescale(std::span<const double> x);

// Greedy dyadic expansion of u in [-1, 1] into `depth` signs. The remainder
// after D signs is at most 2^-D in absolute value; the tie rule r = 0 -> -1
// yields the repeating-ones representation of dyadic rationals.
void binary_expand(double u, int depth, std::span<int> out_signs);

// Same expansion packed as a cell fragment: bit d-1 set iff sign d is -1.
std::uint32_t binary_expand_bits(double u, int depth);

struct BitLabel {
    int var = 0;    // 0-based variable index
    int depth = 0;  // 1-based depth within the variable
    std::string variable_name;
};

// Packed panel of expanded observations. Global bit index counts variables in
// input order with depths ascending; the LSB is the first bit of the first
// variable. Bit k of cell[i] is set iff the sign of bit k in row i is -1.
struct BitPanel {
    std::int64_t n = 0;
    int P = 0;
    std::vector<std::uint32_t> cell;
    std::vector<BitLabel> columns;

    int sign(std::int64_t row, int k) const {
        return (cell[static_cast<std::size_t>(row)] >> k) & 1u ? -1 : 1;
    }
};

struct RawColumn {
    std::string name;
    std::vector<std::string> values;
};

// Frozen expansion state: for ECDF variables the sorted training sample, so
// that new data can be mapped through the training empirical CDF; for binary
// variables the resolved negative level.
struct FittedExpansion {
    ExpansionConfig config;
    std::vector<std::vector<double>> sorted_train;  // per variable; empty unless ECDF
};

struct ApplyResult {
    BitPanel panel;
    std::int64_t clamped = 0;  // known-range values clamped into [lo, hi]
};

FittedExpansion fit_expansion(std::span<const RawColumn> cols, ExpansionConfig cfg);
ApplyResult apply_expansion(const FittedExpansion& fitted, std::span<const RawColumn> cols);

// fit + apply on the same data.
BitPanel build_panel(std::span<const RawColumn> cols, const ExpansionConfig& cfg);

// Map a response column with a declared positive level to +/-1.
std::vector<int> encode_response(const RawColumn& col, const std::string& positive_level,
                                 std::string* negative_level_out = nullptr);

// "A_{j,d}" labels per global bit, 1-based variable index.
std::vector<std::string> bit_labels(const ExpansionConfig& cfg);

}  // namespace belief
