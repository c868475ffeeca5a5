#pragma once

#include <vector>

namespace wavectl {

double bessel_j(int order, double x);
double bessel_j_derivative(int order, double x);

/// All positive zeros of J_order below `upper`, by sign-change bracketing on
/// a fine scan followed by bisection to 1e-12 absolute.
std::vector<double> bessel_zeros(int order, double upper);

/// n-th positive zero (n >= 1).
double bessel_zero(int order, int n);

}  // namespace wavectl
