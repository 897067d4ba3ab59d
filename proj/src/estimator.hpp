#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "expansion.hpp"

namespace belief {

// Per-cell observation counts and response sums: the sufficient statistics
// for every estimator. Counts are doubles so that exactly enumerated
// population tables (fractional weights) fit the same code paths.
struct CellTable {
    int P = 0;
    std::vector<double> counts;  // size 2^P
    std::vector<double> sums;    // sum of +/-1 responses per cell

    double n() const;
    std::size_t num_cells() const { return std::size_t{1} << P; }
    std::vector<std::uint32_t> empty_cells() const;
    // Cell means s_t / n_t, with `fill` substituted in empty cells.
    std::vector<double> means_or(double fill) const;
};

CellTable aggregate(const BitPanel& panel, std::span<const int> response);
CellTable merge(const CellTable& a, const CellTable& b);

enum class EstimatorKind { Lse, MoorePenrose, Ridge };

std::string to_string(EstimatorKind k);
EstimatorKind estimator_kind_from_string(const std::string& s);

struct BeliefFit {
    int P = 0;
    EstimatorKind kind = EstimatorKind::Lse;
    double lambda = 0.0;
    std::vector<double> beta;  // indexed by mask
    std::vector<std::uint32_t> empty_cells;

    // Fitted cell expectations H beta, indexed by cell.
    std::vector<double> cell_expectations() const;
};

// Least squares fit; requires every cell occupied. beta = 2^-P wht(means),
// which equals the normal-equations solution.
BeliefFit fit_lse(const CellTable& table);

// Moore-Penrose fit: empty cells contribute mean 0, so their predicted
// probability is exactly 1/2.
BeliefFit fit_mp(const CellTable& table);

// Ridge fit: beta = 2^-P wht(w) with w_t = s_t / (n_t + lambda 2^-P).
BeliefFit fit_ridge(const CellTable& table, double lambda);

struct Prediction {
    double expectation;  // in [-1, 1]
    double prob_plus;    // (1 + expectation) / 2
};

Prediction predict(const BeliefFit& fit, std::uint32_t cell);

struct CovarianceResult {
    // Optional full 2^P x 2^P matrix, row-major; empty when not requested.
    std::vector<double> matrix;
    double per_slope_variance = 0.0;  // tr(D) / (2^2P n); every diagonal entry
    std::vector<std::uint32_t> degenerate_cells;  // |m_t| = 1, D entry forced to 0
};

// Plug-in asymptotic covariance of the slope estimate. Requires all cells
// occupied; computed through WHT passes without materializing H.
CovarianceResult covariance(const BeliefFit& fit, const CellTable& table,
                            bool full_matrix = false);

struct BoundsReport {
    double slack_cell_inf;    // 1 - ||H beta||_inf
    double slack_design_inf;  // 1 - max over occupied cells of |(H beta)_t|
    double slack_l2;          // 1 - ||beta||_2
    bool ok(double tol = 1e-9) const;
};

BoundsReport check_bounds(const BeliefFit& fit, const CellTable& table);

struct SeparationReport {
    bool separated = false;
    double beta_norm = 0.0;
    // Cells whose fitted expectation is +1: the indicator event f with
    // B = f(A) on the sample.
    std::vector<std::uint32_t> event_cells;
};

SeparationReport detect_separation(const BeliefFit& fit, double tol = 1e-8);

// Degeneracy ladder: 1 = all cells occupied, no deterministic cell;
// 2 = occupied but some |m_t| = 1; 3 = some cell empty. Case 4 (population
// cell of probability zero) is indistinguishable from case 3 in data and is
// noted as such.
struct DegeneracyReport {
    int degeneracy_case = 1;
    std::vector<std::uint32_t> separated_cells;
    std::vector<std::uint32_t> empty_cells;
    std::string note;
};

DegeneracyReport classify_degeneracy(const CellTable& table);

}  // namespace belief
