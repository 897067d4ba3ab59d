#pragma once

#include <span>
#include <string>
#include <vector>

#include "bitalgebra.hpp"
#include "estimator.hpp"

namespace belief {

struct SlopeTest {
    Mask mask = 0;
    std::string label;
    double estimate = 0.0;
    double se = 0.0;
    double z = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    bool significant = false;
    bool testable = true;  // false when the variance is degenerate
};

struct SlopeTestResult {
    double alpha = 0.0;
    double adjusted_alpha = 0.0;  // alpha / 2^P (Bonferroni)
    double z_critical = 0.0;
    double per_slope_se = 0.0;
    std::vector<SlopeTest> tests;
};

// Per-slope z-tests with Bonferroni correction over all 2^P slopes, intervals
// at the adjusted level. Requires a table with no empty cell.
SlopeTestResult significant_slopes(const BeliefFit& fit, const CellTable& table, double alpha,
                                   std::span<const std::string> bit_labels);

struct CondIndepStatement {
    Subgroup subgroup;               // span of the nonzero masks, constant excluded
    std::vector<Mask> generators;    // minimal generators
    std::vector<std::string> generator_labels;
    int k = 0;                       // generator count (rank)
    std::string text;                // "B _||_ G_A | <...>"
};

CondIndepStatement independence_report(std::span<const Mask> nonzero_masks, int P,
                                       std::span<const std::string> bit_labels);

struct PrecisionCheck {
    std::vector<Mask> j_masks;          // masks containing the queried bit
    std::vector<bool> slope_zero;       // per J entry
    std::vector<bool> precision_zero;   // per J entry
    bool equivalent = false;
};

// Checks the slope/precision-matrix equivalence for the bit at index
// `bit_index`: zero slopes on J_i versus zero first-column entries of the
// inverse covariance of (B, A^x without the constant).
PrecisionCheck precision_zero_check(const CellTable& table, int bit_index, double tol = 1e-8);

}  // namespace belief
