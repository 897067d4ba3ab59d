#pragma once

#include <span>
#include <vector>

namespace belief {

// Standard normal CDF, accurate to ~1e-16 via erfc.
double norm_cdf(double x);

// Standard normal quantile; rational initial guess refined by Halley steps,
// absolute error well below 1e-12 on (0, 1).
double norm_quantile(double p);

// Solve A x = b in place for a dense k x k row-major system by partial-pivot
// Gaussian elimination. Returns false on (numerical) singularity.
bool solve_linear(std::vector<double>& a, int k, std::vector<double>& b);

// Dense inverse of a k x k row-major matrix. Returns empty on singularity.
std::vector<double> invert_matrix(std::vector<double> a, int k);

}  // namespace belief
