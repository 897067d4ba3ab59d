#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "estimator.hpp"

namespace belief {

// Seeded generator with portable output: the mt19937_64 stream is fixed by
// the standard and the uniform/normal transforms below are our own, so runs
// are byte-identical across platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct SimData {
    std::vector<double> x1, x2;
    std::vector<int> b;  // +/-1
};

// The three simulation scenarios: 1 = uniform covariates, logit 2 X1 + X2;
// 2 = standard normal covariates, logit X1^2 + X2^2; 3 = noisy circle,
// logit 3 cos(pi (X1 + X2)).
SimData generate(int scenario, std::int64_t n, std::uint64_t seed);

struct LogisticFit {
    std::vector<double> gamma;
    std::vector<double> se;  // from the final Fisher information
    bool converged = false;
    bool separation_suspected = false;
    int iterations = 0;
    double deviance = 0.0;
};

// IRLS for a binary GLM; design is row-major n x k including the intercept
// column. Non-convergence is reported, not thrown.
LogisticFit fit_logistic_irls(std::span<const double> design, int k, std::span<const int> y,
                              double tol = 1e-8, int max_iter = 100);

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (fpr, tpr), both nondecreasing
    double auc = 0.0;  // trapezoidal = Mann-Whitney with midranks
};

RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels);

struct ComparisonResult {
    std::vector<int> depths;
    std::vector<double> belief_auc;      // per depth
    std::vector<RocCurve> belief_roc;    // per depth
    double logistic_auc = 0.0;
    RocCurve logistic_roc;
    bool logistic_converged = false;
};

// Trains BELIEF (Moore-Penrose fit on ECDF bits) at each depth plus the
// logistic-with-interaction baseline, and scores a held-out test set whose
// values are mapped through the training empirical CDF.
ComparisonResult run_comparison(int scenario, std::span<const int> depths, std::int64_t n_train,
                                std::int64_t n_test, std::uint64_t seed);

struct RateRow {
    int depth;
    double q95;  // 0.95 quantile of |g(U) - g(U_D)|
};

// Monte Carlo truncation error of g under depth-D binary expansion of p
// independent Unif(-1,1) arguments.
std::vector<RateRow> rate_check(const std::function<double(std::span<const double>)>& g, int p,
                                int d_max, std::int64_t n, std::uint64_t seed);

// Bitwise approximation of E[V|U] for V = clamp(g(U1, U2)): expands V to D2
// response bits, fits each on the depth-D1 expansion of (U1, U2), aggregates
// sum 2^-d E[B_d|cell], and returns the L2 error against g over the unit
// square (computed by per-cell Gauss-Legendre quadrature).
double double_limit_error(const std::function<double(double, double)>& g, int d1, int d2,
                          std::int64_t n, std::uint64_t seed);

}  // namespace belief
