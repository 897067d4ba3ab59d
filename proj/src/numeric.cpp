#include "numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace belief {

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Acklam's rational approximation, ~1.15e-9 relative error before refinement.
double norm_quantile_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("norm_quantile: p must lie in (0, 1)");
    }
    double x = norm_quantile_approx(p);
    // Two Halley refinements against the erfc-based CDF.
    for (int i = 0; i < 2; ++i) {
        const double e = norm_cdf(x) - p;
        const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
        x -= u / (1.0 + x * u / 2.0);
    }
    return x;
}

bool solve_linear(std::vector<double>& a, int k, std::vector<double>& b) {
    const auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * k + j]; };
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        }
        if (std::abs(at(piv, col)) < 1e-300) return false;
        if (piv != col) {
            for (int j = 0; j < k; ++j) std::swap(at(piv, j), at(col, j));
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < k; ++r) {
            const double f = at(r, col) / at(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < k; ++j) at(r, j) -= f * at(col, j);
            b[r] -= f * b[col];
        }
    }
    for (int col = k - 1; col >= 0; --col) {
        double s = b[col];
        for (int j = col + 1; j < k; ++j) s -= at(col, j) * b[j];
        b[col] = s / at(col, col);
    }
    return true;
}

std::vector<double> invert_matrix(std::vector<double> a, int k) {
    std::vector<double> inv(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) inv[static_cast<std::size_t>(i) * k + i] = 1.0;
    const auto at = [&](std::vector<double>& m, int i, int j) -> double& {
        return m[static_cast<std::size_t>(i) * k + j];
    };
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(at(a, r, col)) > std::abs(at(a, piv, col))) piv = r;
        }
        if (std::abs(at(a, piv, col)) < 1e-300) return {};
        if (piv != col) {
            for (int j = 0; j < k; ++j) {
                std::swap(at(a, piv, j), at(a, col, j));
                std::swap(at(inv, piv, j), at(inv, col, j));
            }
        }
        const double d = at(a, col, col);
        for (int j = 0; j < k; ++j) {
            at(a, col, j) /= d;
            at(inv, col, j) /= d;
        }
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = at(a, r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < k; ++j) {
                at(a, r, j) -= f * at(a, col, j);
                at(inv, r, j) -= f * at(inv, col, j);
            }
        }
    }
    return inv;
}

}  // namespace belief
