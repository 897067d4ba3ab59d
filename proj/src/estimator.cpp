#include "estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bitalgebra.hpp"
#include "errors.hpp"

namespace belief {

double CellTable::n() const {
    return std::accumulate(counts.begin(), counts.end(), 0.0);
}

std::vector<std::uint32_t> CellTable::empty_cells() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t t = 0; t < counts.size(); ++t) {
        if (counts[t] == 0.0) out.push_back(t);
    }
    return out;
}

std::vector<double> CellTable::means_or(double fill) const {
    std::vector<double> m(counts.size());
    for (std::size_t t = 0; t < counts.size(); ++t) {
        m[t] = counts[t] > 0.0 ? sums[t] / counts[t] : fill;
    }
    return m;
}

CellTable aggregate(const BitPanel& panel, std::span<const int> response) {
    if (static_cast<std::int64_t>(response.size()) != panel.n) {
        throw DataError("aggregate: response length " + std::to_string(response.size()) +
                        " does not match panel rows " + std::to_string(panel.n));
    }
    CellTable table;
    table.P = panel.P;
    table.counts.assign(std::size_t{1} << panel.P, 0.0);
    table.sums.assign(std::size_t{1} << panel.P, 0.0);
    for (std::size_t i = 0; i < response.size(); ++i) {
        if (response[i] != 1 && response[i] != -1) {
            throw DataError("aggregate: response values must be +/-1");
        }
        table.counts[panel.cell[i]] += 1.0;
        table.sums[panel.cell[i]] += response[i];
    }
    return table;
}

CellTable merge(const CellTable& a, const CellTable& b) {
    if (a.P != b.P) throw DataError("merge: mismatched bit widths");
    CellTable out = a;
    for (std::size_t t = 0; t < out.counts.size(); ++t) {
        out.counts[t] += b.counts[t];
        out.sums[t] += b.sums[t];
    }
    return out;
}

std::string to_string(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::Lse: return "lse";
        case EstimatorKind::MoorePenrose: return "mp";
        case EstimatorKind::Ridge: return "ridge";
    }
    return "?";
}

EstimatorKind estimator_kind_from_string(const std::string& s) {
    if (s == "lse") return EstimatorKind::Lse;
    if (s == "mp" || s == "moore-penrose") return EstimatorKind::MoorePenrose;
    if (s == "ridge") return EstimatorKind::Ridge;
    throw ConfigError("unknown estimator kind '" + s + "'");
}

std::vector<double> BeliefFit::cell_expectations() const {
    return wht(beta);
}

namespace {

BeliefFit make_fit(const CellTable& table, EstimatorKind kind, std::vector<double> cell_values) {
    BeliefFit fit;
    fit.P = table.P;
    fit.kind = kind;
    fit.empty_cells = table.empty_cells();
    wht_inplace(cell_values);
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << table.P);
    for (double& v : cell_values) v *= scale;
    fit.beta = std::move(cell_values);
    return fit;
}

}  // namespace

BeliefFit fit_lse(const CellTable& table) {
    if (table.n() == 0.0) throw DataError("fit_lse: empty table");
    const auto empty = table.empty_cells();
    if (!empty.empty()) {
        std::string cells;
        for (auto t : empty) {
            if (!cells.empty()) cells += ", ";
            cells += std::to_string(t);
        }
        throw DegeneracyError("singular design: empty cells {" + cells + "}; use fit_mp");
    }
    return make_fit(table, EstimatorKind::Lse, table.means_or(0.0));
}

BeliefFit fit_mp(const CellTable& table) {
    if (table.n() == 0.0) throw DataError("fit_mp: empty table");
    return make_fit(table, EstimatorKind::MoorePenrose, table.means_or(0.0));
}

BeliefFit fit_ridge(const CellTable& table, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("fit_ridge: lambda must be > 0");
    if (table.n() == 0.0) throw DataError("fit_ridge: empty table");
    const double shrink = lambda / static_cast<double>(std::size_t{1} << table.P);
    std::vector<double> w(table.counts.size());
    for (std::size_t t = 0; t < w.size(); ++t) {
        w[t] = table.sums[t] / (table.counts[t] + shrink);
    }
    auto fit = make_fit(table, EstimatorKind::Ridge, std::move(w));
    fit.lambda = lambda;
    return fit;
}

Prediction predict(const BeliefFit& fit, std::uint32_t cell) {
    if (cell >= (std::uint32_t{1} << fit.P)) {
        throw ConfigError("predict: cell index out of range");
    }
    double e = 0.0;
    for (std::size_t m = 0; m < fit.beta.size(); ++m) {
        e += fit.beta[m] * hadamard_entry(cell, static_cast<Mask>(m));
    }
    return {e, (1.0 + e) / 2.0};
}

CovarianceResult covariance(const BeliefFit& fit, const CellTable& table, bool full_matrix) {
    const std::size_t cells = table.num_cells();
    if (!table.empty_cells().empty()) {
        throw DegeneracyError("covariance: table has empty cells");
    }
    const double n = table.n();
    const auto fitted = fit.cell_expectations();

    CovarianceResult result;
    std::vector<double> d(cells);
    for (std::uint32_t t = 0; t < cells; ++t) {
        const double one_minus = 1.0 - fitted[t] * fitted[t];
        if (one_minus <= 1e-12) {
            // Deterministic cell: degenerate normal limit, variance 0.
            d[t] = 0.0;
            result.degenerate_cells.push_back(t);
        } else {
            d[t] = one_minus / (table.counts[t] / n);
        }
    }
    const double cells_sq = static_cast<double>(cells) * static_cast<double>(cells);
    result.per_slope_variance = std::accumulate(d.begin(), d.end(), 0.0) / (cells_sq * n);

    if (full_matrix) {
        result.matrix.resize(cells * cells);
        std::vector<double> col(cells);
        for (std::uint32_t j = 0; j < cells; ++j) {
            for (std::uint32_t t = 0; t < cells; ++t) {
                col[t] = d[t] * hadamard_entry(t, j);
            }
            wht_inplace(col);
            for (std::uint32_t i = 0; i < cells; ++i) {
                result.matrix[static_cast<std::size_t>(i) * cells + j] = col[i] / (cells_sq * n);
            }
        }
    }
    return result;
}

bool BoundsReport::ok(double tol) const {
    return slack_cell_inf >= -tol && slack_design_inf >= -tol && slack_l2 >= -tol;
}

BoundsReport check_bounds(const BeliefFit& fit, const CellTable& table) {
    const auto fitted = fit.cell_expectations();
    double max_cell = 0.0;
    double max_design = 0.0;
    for (std::uint32_t t = 0; t < fitted.size(); ++t) {
        max_cell = std::max(max_cell, std::abs(fitted[t]));
        if (table.counts[t] > 0.0) max_design = std::max(max_design, std::abs(fitted[t]));
    }
    double l2 = 0.0;
    for (double b : fit.beta) l2 += b * b;
    return {1.0 - max_cell, 1.0 - max_design, 1.0 - std::sqrt(l2)};
}

SeparationReport detect_separation(const BeliefFit& fit, double tol) {
    SeparationReport report;
    double l2 = 0.0;
    for (double b : fit.beta) l2 += b * b;
    report.beta_norm = std::sqrt(l2);
    report.separated = report.beta_norm >= 1.0 - tol;
    if (report.separated) {
        const auto fitted = fit.cell_expectations();
        for (std::uint32_t t = 0; t < fitted.size(); ++t) {
            if (fitted[t] > 0.0) report.event_cells.push_back(t);
        }
    }
    return report;
}

DegeneracyReport classify_degeneracy(const CellTable& table) {
    DegeneracyReport report;
    report.empty_cells = table.empty_cells();
    for (std::uint32_t t = 0; t < table.counts.size(); ++t) {
        if (table.counts[t] > 0.0 && std::abs(table.sums[t]) == table.counts[t]) {
            report.separated_cells.push_back(t);
        }
    }
    if (!report.empty_cells.empty()) {
        report.degeneracy_case = 3;
        report.note =
            "empty cells observed; indistinguishable from case 4 (zero-probability cells), "
            "which cannot be detected from data alone";
    } else if (!report.separated_cells.empty()) {
        report.degeneracy_case = 2;
        report.note = "deterministic cells present; slope covariance is a degenerate normal";
    } else {
        report.degeneracy_case = 1;
    }
    return report;
}

}  // namespace belief
