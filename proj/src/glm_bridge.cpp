#include "glm_bridge.hpp"

#include <cmath>

#include "errors.hpp"
#include "expansion.hpp"
#include "numeric.hpp"

namespace belief {

const Link& Link::logit() {
    static const Link link{
        "logit",
        [](double y) { return std::log((1.0 + y) / (1.0 - y)); },  // 2 atanh(y)
        [](double x) { return std::tanh(x / 2.0); },
        [](double x) {
            const double t = std::tanh(x / 2.0);
            return (1.0 - t * t) / 2.0;
        },
    };
    return link;
}

const Link& Link::probit() {
    static const Link link{
        "probit",
        [](double y) { return norm_quantile((y + 1.0) / 2.0); },
        [](double x) { return 2.0 * norm_cdf(x) - 1.0; },
        [](double x) { return std::sqrt(2.0 / M_PI) * std::exp(-x * x / 2.0); },
    };
    return link;
}

Link Link::linear(double slope) {
    return {
        "linear",
        [slope](double y) { return y / slope; },
        [slope](double x) { return slope * x; },
        [slope](double) { return slope; },
    };
}

namespace {

void require_power_of_two(std::size_t len, const char* who) {
    if (len == 0 || (len & (len - 1)) != 0) {
        throw ConfigError(std::string(who) + ": coefficient length must be a power of two");
    }
}

}  // namespace

std::vector<double> glm_to_belief(std::span<const double> gamma, const Link& link) {
    require_power_of_two(gamma.size(), "glm_to_belief");
    std::vector<double> x(gamma.begin(), gamma.end());
    wht_inplace(x);
    for (double& v : x) {
        const double y = link.g_inv(v);
        if (!(std::abs(y) < 1.0)) {
            throw ConfigError("glm_to_belief: link '" + link.name +
                              "' maps a cell outside (-1, 1)");
        }
        v = y;
    }
    wht_inplace(x);
    const double scale = 1.0 / static_cast<double>(gamma.size());
    for (double& v : x) v *= scale;
    return x;
}

std::vector<double> belief_to_glm(std::span<const double> beta, const Link& link) {
    require_power_of_two(beta.size(), "belief_to_glm");
    std::vector<double> x(beta.begin(), beta.end());
    wht_inplace(x);
    for (double& v : x) {
        if (!(std::abs(v) < 1.0)) {
            throw DegeneracyError(
                "separation: a cell expectation reaches +/-1, GLM coefficients do not exist");
        }
        v = link.g(v);
    }
    wht_inplace(x);
    const double scale = 1.0 / static_cast<double>(beta.size());
    for (double& v : x) v *= scale;
    return x;
}

std::vector<double> taylor_sensitivity(std::span<const double> gamma, const Link& link) {
    require_power_of_two(gamma.size(), "taylor_sensitivity");
    const std::size_t cells = gamma.size();
    std::vector<double> eta(gamma.begin(), gamma.end());
    wht_inplace(eta);
    std::vector<double> d(cells);
    for (std::size_t t = 0; t < cells; ++t) d[t] = link.g_inv_deriv(eta[t]);

    std::vector<double> matrix(cells * cells);
    std::vector<double> col(cells);
    for (std::uint32_t j = 0; j < cells; ++j) {
        for (std::uint32_t t = 0; t < cells; ++t) {
            col[t] = d[t] * hadamard_entry(t, j);
        }
        wht_inplace(col);
        for (std::uint32_t i = 0; i < cells; ++i) {
            matrix[static_cast<std::size_t>(i) * cells + j] = col[i] / static_cast<double>(cells);
        }
    }
    return matrix;
}

HiddenInteractionReport hidden_interaction_report(double intercept,
                                                  std::span<const double> coefficients,
                                                  const Link& link, int depth,
                                                  BitWeights weights, double display_threshold) {
    const int p = static_cast<int>(coefficients.size());
    if (p < 1) throw ConfigError("hidden_interaction_report: need at least one variable");
    if (depth < 1) throw ConfigError("hidden_interaction_report: depth must be >= 1");
    const int total_bits = p * depth;
    if (total_bits > kMaxTotalBits) {
        throw ConfigError("hidden_interaction_report: depth * variables exceeds bit cap");
    }

    HiddenInteractionReport report;
    report.P = total_bits;
    const std::size_t cells = std::size_t{1} << total_bits;
    report.gamma.assign(cells, 0.0);
    report.gamma[0] = intercept;
    // Bit k = j * depth + (d - 1): variable j, depth d; mirrors the panel order.
    std::vector<Mask> var_of_bit(total_bits);
    for (int j = 0; j < p; ++j) {
        for (int d = 1; d <= depth; ++d) {
            const int k = j * depth + (d - 1);
            var_of_bit[k] = static_cast<Mask>(j);
            const double w = weights == BitWeights::Dyadic ? std::ldexp(1.0, -d) : 1.0;
            report.gamma[std::size_t{1} << k] = coefficients[j] * w;
        }
    }
    report.beta = glm_to_belief(report.gamma, link);

    std::vector<std::string> bits;
    for (int j = 0; j < p; ++j) {
        for (int d = 1; d <= depth; ++d) {
            bits.push_back("A_{" + std::to_string(j + 1) + "," + std::to_string(d) + "}");
        }
    }
    report.labels.resize(cells);
    for (std::size_t m = 0; m < cells; ++m) {
        report.labels[m] = mask_label(static_cast<Mask>(m), bits);
    }

    for (std::size_t m = 1; m < cells; ++m) {
        // Count distinct variables among the mask's bits.
        Mask vars_seen = 0;
        for (int k = 0; k < total_bits; ++k) {
            if (m & (std::size_t{1} << k)) vars_seen |= Mask{1} << var_of_bit[k];
        }
        if (std::popcount(vars_seen) < 2) continue;
        if (std::abs(report.beta[m]) <= display_threshold) continue;
        report.cross_interactions.push_back({static_cast<Mask>(m), report.labels[m],
                                             report.beta[m], report.beta[m] / 2.0});
    }
    return report;
}

}  // namespace belief
