#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bitalgebra.hpp"

namespace belief {

// Monotone link between the conditional-expectation scale (-1, 1) and the
// real line. Logit here means g_inv(x) = tanh(x/2); probit means
// g_inv(x) = 2 Phi(x) - 1, both acting on the expectation scale.
struct Link {
    std::string name;
    std::function<double(double)> g;          // (-1, 1) -> R
    std::function<double(double)> g_inv;      // R -> (-1, 1)
    std::function<double(double)> g_inv_deriv;

    static const Link& logit();
    static const Link& probit();
    // g_inv(x) = slope * x; interaction-free by construction.
    static Link linear(double slope = 1.0);
};

// beta = 2^-P wht(g_inv(wht(gamma))); gamma length must be a power of two.
std::vector<double> glm_to_belief(std::span<const double> gamma, const Link& link);

// gamma = 2^-P wht(g(wht(beta))). Throws DegeneracyError when any cell
// expectation reaches +/-1 (separation: the GLM coefficients do not exist).
std::vector<double> belief_to_glm(std::span<const double> beta, const Link& link);

// First-order map delta -> change in beta: 2^-P H diag(g_inv'(gamma^T v_t)) H,
// returned row-major.
std::vector<double> taylor_sensitivity(std::span<const double> gamma, const Link& link);

enum class BitWeights {
    Dyadic,  // depth-i bit carries weight 2^-i (exact expansion of the predictor)
    Unit,    // every bit carries the raw coefficient
};

struct HiddenInteractionEntry {
    Mask mask;
    std::string label;
    double beta_expectation;  // slope of E[B|.]
    double beta_probability;  // slope of P(B=1|.)
};

// Population analysis of a main-effects-only GLM over independent Unif(-1,1)
// predictors expanded to `depth` bits each: builds the effective gamma over
// bit masks, maps it to BELIEF slopes, and lists every mask mixing bits of
// two or more variables with |beta| above the display threshold.
struct HiddenInteractionReport {
    int P = 0;
    std::vector<double> gamma;  // effective gamma over bit masks
    std::vector<double> beta;
    std::vector<std::string> labels;  // per mask
    std::vector<HiddenInteractionEntry> cross_interactions;
};

HiddenInteractionReport hidden_interaction_report(double intercept,
                                                  std::span<const double> coefficients,
                                                  const Link& link, int depth,
                                                  BitWeights weights = BitWeights::Dyadic,
                                                  double display_threshold = 1e-12);

}  // namespace belief
