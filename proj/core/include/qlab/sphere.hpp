#pragma once

#include <vector>

namespace qlab::sphere {

struct GaussLegendreRule {
    std::vector<double> nodes;   // in (-1, 1), ascending
    std::vector<double> weights; // sum to 2
};

// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
// <= 2n - 1.
GaussLegendreRule gauss_legendre(int n);

// Fully normalized associated Legendre values \bar P_l^m(x) for l = m..l_max,
// written to out[l - m]. Normalization is spherical: the complex harmonic
// Y_l^m(theta, phi) = \bar P_l^m(cos theta) * exp(i m phi) is orthonormal with
// respect to the surface measure on S^2. Includes the Condon-Shortley phase.
// Requires 0 <= m <= l_max.
void normalized_legendre(int l_max, int m, double x, double* out);

} // namespace qlab::sphere
