#include "inference.hpp"

#include <cmath>

#include "errors.hpp"
#include "numeric.hpp"

namespace belief {

SlopeTestResult significant_slopes(const BeliefFit& fit, const CellTable& table, double alpha,
                                   std::span<const std::string> bit_labels) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    const auto cov = covariance(fit, table, /*full_matrix=*/false);

    SlopeTestResult result;
    result.alpha = alpha;
    const double num_slopes = static_cast<double>(fit.beta.size());
    result.adjusted_alpha = alpha / num_slopes;
    result.z_critical = norm_quantile(1.0 - result.adjusted_alpha / 2.0);
    result.per_slope_se = std::sqrt(cov.per_slope_variance);

    const bool testable = result.per_slope_se > 0.0;
    for (std::size_t m = 0; m < fit.beta.size(); ++m) {
        SlopeTest t;
        t.mask = static_cast<Mask>(m);
        t.label = mask_label(t.mask, bit_labels);
        t.estimate = fit.beta[m];
        t.se = result.per_slope_se;
        t.testable = testable;
        if (testable) {
            t.z = t.estimate / t.se;
            t.ci_lo = t.estimate - result.z_critical * t.se;
            t.ci_hi = t.estimate + result.z_critical * t.se;
            t.significant = t.ci_lo > 0.0 || t.ci_hi < 0.0;
        }
        result.tests.push_back(std::move(t));
    }
    return result;
}

CondIndepStatement independence_report(std::span<const Mask> nonzero_masks, int P,
                                       std::span<const std::string> bit_labels) {
    std::vector<Mask> generators;
    for (Mask m : nonzero_masks) {
        if (m >= (Mask{1} << P)) throw ConfigError("mask out of range");
        if (m != 0) generators.push_back(m);  // the constant carries no information
    }
    CondIndepStatement statement;
    statement.subgroup = Subgroup::span(generators);
    statement.generators = statement.subgroup.minimal_generators();
    statement.k = statement.subgroup.rank();
    std::string inside;
    for (Mask g : statement.generators) {
        if (!inside.empty()) inside += ", ";
        const auto label = mask_label(g, bit_labels);
        statement.generator_labels.push_back(label);
        inside += label;
    }
    if (inside.empty()) inside = "1";
    statement.text = "B _||_ G_A | <" + inside + ">";
    return statement;
}

PrecisionCheck precision_zero_check(const CellTable& table, int bit_index, double tol) {
    const std::size_t cells = table.num_cells();
    if (bit_index < 0 || bit_index >= table.P) throw ConfigError("bit index out of range");
    if (!table.empty_cells().empty()) {
        throw DegeneracyError("precision_zero_check: table has empty cells");
    }
    const double n = table.n();

    // Second moments from the sufficient statistics:
    //   E[A_m A_m'] = q[m xor m'] with q = wht(counts)/n, and E[B A_m] = r[m]
    //   with r = wht(sums)/n.
    std::vector<double> q(table.counts);
    std::vector<double> r(table.sums);
    wht_inplace(q);
    wht_inplace(r);
    for (double& v : q) v /= n;
    for (double& v : r) v /= n;

    // C = (B, A^x masks 1..2^P-1); covariance of C.
    const int k = static_cast<int>(cells);  // 1 + (2^P - 1)
    std::vector<double> cov(static_cast<std::size_t>(k) * k);
    const auto idx = [k](int i, int j) { return static_cast<std::size_t>(i) * k + j; };
    cov[idx(0, 0)] = 1.0 - r[0] * r[0];
    for (int j = 1; j < k; ++j) {
        const double c = r[j] - r[0] * q[j];
        cov[idx(0, j)] = c;
        cov[idx(j, 0)] = c;
    }
    for (int i = 1; i < k; ++i) {
        for (int j = 1; j < k; ++j) {
            cov[idx(i, j)] = q[static_cast<Mask>(i) ^ static_cast<Mask>(j)] - q[i] * q[j];
        }
    }
    auto inv = invert_matrix(std::move(cov), k);
    if (inv.empty()) throw DegeneracyError("precision_zero_check: singular sample covariance");

    const auto fit = fit_lse(table);

    PrecisionCheck check;
    check.equivalent = true;
    for (Mask m = 1; m < cells; ++m) {
        if (!(m & (Mask{1} << bit_index))) continue;
        check.j_masks.push_back(m);
        const bool sz = std::abs(fit.beta[m]) < tol;
        const bool pz = std::abs(inv[idx(static_cast<int>(m), 0)]) < tol;
        check.slope_zero.push_back(sz);
        check.precision_zero.push_back(pz);
        if (sz != pz) check.equivalent = false;
    }
    return check;
}

}  // namespace belief
