#include "simharness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"
#include "numeric.hpp"

namespace belief {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on our own uniforms, for cross-platform determinism.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

SimData generate(int scenario, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("generate: n must be >= 1");
    Rng rng(seed);
    SimData data;
    data.x1.resize(n);
    data.x2.resize(n);
    data.b.resize(n);
    for (std::int64_t i = 0; i < n; ++i) {
        double x1, x2, eta;
        switch (scenario) {
            case 1:
                x1 = rng.uniform(-1.0, 1.0);
                x2 = rng.uniform(-1.0, 1.0);
                eta = 2.0 * x1 + x2;
                break;
            case 2:
                x1 = rng.normal();
                x2 = rng.normal();
                eta = x1 * x1 + x2 * x2;
                break;
            case 3: {
                const double theta = rng.uniform(-M_PI, M_PI);
                x1 = std::cos(theta) + 0.2 * rng.normal();
                x2 = std::sin(theta) + 0.2 * rng.normal();
                eta = 3.0 * std::cos(M_PI * (x1 + x2));
                break;
            }
            default:
                throw ConfigError("generate: scenario must be 1, 2, or 3");
        }
        data.x1[i] = x1;
        data.x2[i] = x2;
        data.b[i] = rng.uniform() < sigmoid(eta) ? 1 : -1;
    }
    return data;
}

LogisticFit fit_logistic_irls(std::span<const double> design, int k, std::span<const int> y,
                              double tol, int max_iter) {
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    if (design.size() != static_cast<std::size_t>(n) * k) {
        throw ConfigError("fit_logistic_irls: design size mismatch");
    }
    LogisticFit fit;
    fit.gamma.assign(k, 0.0);

    std::vector<double> eta(n), p(n);
    std::vector<double> xtwx(static_cast<std::size_t>(k) * k);
    std::vector<double> score(k);
    double max_abs_eta = 0.0;

    for (int iter = 1; iter <= max_iter; ++iter) {
        fit.iterations = iter;
        max_abs_eta = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            double e = 0.0;
            for (int j = 0; j < k; ++j) e += design[i * k + j] * fit.gamma[j];
            eta[i] = e;
            p[i] = sigmoid(e);
            max_abs_eta = std::max(max_abs_eta, std::abs(e));
        }
        std::fill(xtwx.begin(), xtwx.end(), 0.0);
        std::fill(score.begin(), score.end(), 0.0);
        for (std::int64_t i = 0; i < n; ++i) {
            const double w = p[i] * (1.0 - p[i]);
            const double resid = (y[i] > 0 ? 1.0 : 0.0) - p[i];
            for (int a = 0; a < k; ++a) {
                score[a] += design[i * k + a] * resid;
                for (int b = a; b < k; ++b) {
                    xtwx[static_cast<std::size_t>(a) * k + b] += w * design[i * k + a] * design[i * k + b];
                }
            }
        }
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < a; ++b) {
                xtwx[static_cast<std::size_t>(a) * k + b] = xtwx[static_cast<std::size_t>(b) * k + a];
            }
        }
        auto lhs = xtwx;
        auto step = score;
        if (!solve_linear(lhs, k, step)) {
            // Singular at the first step (uniform weights 1/4) means the
            // design itself is rank deficient; later on it is the weights
            // collapsing, which happens under separation.
            if (iter == 1) throw DataError("fit_logistic_irls: rank-deficient design");
            break;
        }
        double max_step = 0.0;
        for (int j = 0; j < k; ++j) {
            fit.gamma[j] += step[j];
            max_step = std::max(max_step, std::abs(step[j]));
        }
        if (max_step < tol) {
            fit.converged = true;
            break;
        }
    }
    // Monotone divergence of the linear predictor signals separation: the
    // likelihood keeps improving while ||gamma|| grows without bound.
    if (!fit.converged && max_abs_eta > 20.0) fit.separation_suspected = true;

    fit.deviance = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double pi = std::clamp(p[i], 1e-12, 1.0 - 1e-12);
        fit.deviance -= 2.0 * (y[i] > 0 ? std::log(pi) : std::log(1.0 - pi));
    }
    auto information = invert_matrix(xtwx, k);
    fit.se.assign(k, 0.0);
    if (!information.empty()) {
        for (int j = 0; j < k; ++j) {
            fit.se[j] = std::sqrt(std::max(0.0, information[static_cast<std::size_t>(j) * k + j]));
        }
    }
    return fit;
}

RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels) {
    const std::size_t n = scores.size();
    if (labels.size() != n) throw ConfigError("roc_auc: length mismatch");
    std::size_t pos = 0;
    for (int l : labels) {
        if (l != 1 && l != -1) throw DataError("roc_auc: labels must be +/-1");
        if (l == 1) ++pos;
    }
    const std::size_t neg = n - pos;
    if (pos == 0 || neg == 0) throw DataError("roc_auc: need both classes");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    std::size_t tp = 0, fp = 0;
    double auc2 = 0.0;  // twice the trapezoid area, in counts
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        std::size_t dtp = 0, dfp = 0;
        while (j < n && scores[order[j]] == scores[order[i]]) {
            labels[order[j]] == 1 ? ++dtp : ++dfp;
            ++j;
        }
        // Tied block moves diagonally (score-tie averaging).
        auc2 += static_cast<double>(dfp) * (2.0 * tp + dtp);
        tp += dtp;
        fp += dfp;
        curve.points.emplace_back(static_cast<double>(fp) / neg, static_cast<double>(tp) / pos);
        i = j;
    }
    curve.auc = auc2 / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
    return curve;
}

namespace {

std::vector<RawColumn> to_columns(const SimData& data) {
    std::vector<RawColumn> cols(2);
    cols[0].name = "x1";
    cols[1].name = "x2";
    cols[0].values.reserve(data.x1.size());
    cols[1].values.reserve(data.x2.size());
    char buf[40];
    for (double v : data.x1) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        cols[0].values.emplace_back(buf);
    }
    for (double v : data.x2) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        cols[1].values.emplace_back(buf);
    }
    return cols;
}

}  // namespace

ComparisonResult run_comparison(int scenario, std::span<const int> depths, std::int64_t n_train,
                                std::int64_t n_test, std::uint64_t seed) {
    const auto train = generate(scenario, n_train, seed);
    const auto test = generate(scenario, n_test, seed ^ 0x9e3779b97f4a7c15ull);

    ComparisonResult result;

    // Logistic baseline on raw covariates with a product interaction.
    {
        const int k = 4;
        std::vector<double> design;
        design.reserve(static_cast<std::size_t>(n_train) * k);
        for (std::int64_t i = 0; i < n_train; ++i) {
            design.insert(design.end(),
                          {1.0, train.x1[i], train.x2[i], train.x1[i] * train.x2[i]});
        }
        const auto glm = fit_logistic_irls(design, k, train.b);
        result.logistic_converged = glm.converged;
        std::vector<double> scores(n_test);
        for (std::int64_t i = 0; i < n_test; ++i) {
            const double eta = glm.gamma[0] + glm.gamma[1] * test.x1[i] + glm.gamma[2] * test.x2[i] +
                               glm.gamma[3] * test.x1[i] * test.x2[i];
            scores[i] = sigmoid(eta);
        }
        result.logistic_roc = roc_auc(scores, test.b);
        result.logistic_auc = result.logistic_roc.auc;
    }

    const auto train_cols = to_columns(train);
    const auto test_cols = to_columns(test);
    for (int depth : depths) {
        ExpansionConfig cfg;
        cfg.vars = {{"x1", VarKind::ContinuousEcdf, depth}, {"x2", VarKind::ContinuousEcdf, depth}};
        const auto fitted = fit_expansion(train_cols, cfg);
        const auto train_panel = apply_expansion(fitted, train_cols).panel;
        const auto table = aggregate(train_panel, train.b);
        const auto fit = fit_mp(table);

        const auto test_panel = apply_expansion(fitted, test_cols).panel;
        const auto expectations = fit.cell_expectations();
        std::vector<double> scores(n_test);
        for (std::int64_t i = 0; i < n_test; ++i) {
            scores[i] = (1.0 + expectations[test_panel.cell[i]]) / 2.0;
            if (scores[i] < -1e-9 || scores[i] > 1.0 + 1e-9) {
                throw DataError("run_comparison: probability estimate escaped [0, 1]");
            }
        }
        result.depths.push_back(depth);
        result.belief_roc.push_back(roc_auc(scores, test.b));
        result.belief_auc.push_back(result.belief_roc.back().auc);
    }
    return result;
}

std::vector<RateRow> rate_check(const std::function<double(std::span<const double>)>& g, int p,
                                int d_max, std::int64_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> errors(d_max + 1);
    for (auto& e : errors) e.reserve(n);
    std::vector<double> u(p), ud(p);
    std::vector<int> signs(d_max);
    for (std::int64_t i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) u[j] = rng.uniform(-1.0, 1.0);
        const double exact = g(u);
        for (int d = 1; d <= d_max; ++d) {
            for (int j = 0; j < p; ++j) {
                binary_expand(u[j], d, std::span<int>(signs.data(), d));
                double v = 0.0, w = 0.5;
                for (int t = 0; t < d; ++t) {
                    v += signs[t] * w;
                    w *= 0.5;
                }
                ud[j] = v;
            }
            errors[d].push_back(std::abs(exact - g(ud)));
        }
    }
    std::vector<RateRow> rows;
    for (int d = 1; d <= d_max; ++d) {
        auto& e = errors[d];
        const std::size_t idx = static_cast<std::size_t>(0.95 * (e.size() - 1));
        std::nth_element(e.begin(), e.begin() + idx, e.end());
        rows.push_back({d, e[idx]});
    }
    return rows;
}

double double_limit_error(const std::function<double(double, double)>& g, int d1, int d2,
                          std::int64_t n, std::uint64_t seed) {
    Rng rng(seed);
    const int P = 2 * d1;
    if (P > kMaxTotalBits) throw ConfigError("double_limit_error: depth too large");
    const std::size_t cells = std::size_t{1} << P;

    // One pass of data; D2 cell tables share the panel.
    std::vector<CellTable> tables(d2);
    for (auto& t : tables) {
        t.P = P;
        t.counts.assign(cells, 0.0);
        t.sums.assign(cells, 0.0);
    }
    std::vector<int> vbits(d2);
    for (std::int64_t i = 0; i < n; ++i) {
        const double u1 = rng.uniform(-1.0, 1.0);
        const double u2 = rng.uniform(-1.0, 1.0);
        const std::uint32_t cell =
            binary_expand_bits(u1, d1) | (binary_expand_bits(u2, d1) << d1);
        const double v = std::clamp(g(u1, u2), -1.0, 1.0);
        binary_expand(v, d2, vbits);
        for (int d = 0; d < d2; ++d) {
            tables[d].counts[cell] += 1.0;
            tables[d].sums[cell] += vbits[d];
        }
    }

    // Aggregate sum_d 2^-d E[B_d | cell].
    std::vector<double> estimate(cells, 0.0);
    double w = 0.5;
    for (int d = 0; d < d2; ++d) {
        const auto expectations = fit_mp(tables[d]).cell_expectations();
        for (std::size_t t = 0; t < cells; ++t) estimate[t] += w * expectations[t];
        w *= 0.5;
    }

    // L2 error against E[V|U] = clamp(g(U)) by Gauss-Legendre per cell.
    static const double gl_x[] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                  0.5384693101056831, 0.9061798459386640};
    static const double gl_w[] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                  0.4786286704993665, 0.2369268850561891};
    const double width = std::ldexp(2.0, -d1);  // cell side length
    double total = 0.0;
    for (std::uint32_t c1 = 0; c1 < (std::uint32_t{1} << d1); ++c1) {
        // Left edge of the dyadic interval whose expansion bits equal c1.
        double lo1 = 0.0, step = 0.5;
        for (int d = 0; d < d1; ++d) {
            lo1 += (c1 >> d & 1u) ? -step : step;
            step *= 0.5;
        }
        lo1 -= std::ldexp(1.0, -d1);
        for (std::uint32_t c2 = 0; c2 < (std::uint32_t{1} << d1); ++c2) {
            double lo2 = 0.0;
            step = 0.5;
            for (int d = 0; d < d1; ++d) {
                lo2 += (c2 >> d & 1u) ? -step : step;
                step *= 0.5;
            }
            lo2 -= std::ldexp(1.0, -d1);
            const double est = estimate[c1 | (c2 << d1)];
            double cell_sum = 0.0;
            for (int a = 0; a < 5; ++a) {
                for (int b = 0; b < 5; ++b) {
                    const double x = lo1 + width * (gl_x[a] + 1.0) / 2.0;
                    const double y = lo2 + width * (gl_x[b] + 1.0) / 2.0;
                    const double diff = est - std::clamp(g(x, y), -1.0, 1.0);
                    cell_sum += gl_w[a] * gl_w[b] * diff * diff / 4.0;
                }
            }
            total += cell_sum * width * width / 4.0;  // density of Unif(-1,1)^2
        }
    }
    return std::sqrt(total);
}

}  // namespace belief
