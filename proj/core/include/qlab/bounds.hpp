#pragma once

#include "qlab/quasimode.hpp"

namespace qlab {

// Bilinear growth law Lambda(d, nu): nu^{1/4} for d = 2,
// nu^{1/2} log^{1/2}(nu) for d = 3 (natural log, clamped at 1 near nu = 1),
// nu^{(d-2)/2} for d >= 4.
double lambda_exponent(int d, double nu);

// Rank-budget law Omega(d, mu): mu^{1/2} for d = 2,
// mu^{3/2} log^{3/2}(mu) for d = 3 (same clamp), mu^{d(d-2)/2} for d >= 4.
double omega_exponent(int d, double mu);

// L^p eigenfunction growth exponent
// sigma(p) = max(d(1/2 - 1/p) - 1/2, (d-1)/2 (1/2 - 1/p)); branches cross at
// p = 2(d+1)/(d-1).
double sigma_p(int d, double p);

struct BilinearVariant {
    bool high_dim_tail = false;
    double tail_n = 0.0; // requires tail_n > d/2
    double tail_q = 4.0;

    static BilinearVariant low_dim() { return {}; }
    static BilinearVariant high_dim(double n, double q) { return {true, n, q}; }
};

// Tail factor mu^{-N + d/2 - sigma(q)} * ||(I - Delta)^{N/2} R_mu v||_2 of the
// d >= 6 estimate, applied to the lower-frequency factor v.
double tail_term(const Quasimode& v, int d, double mu, double n, double q);

// Right-hand side of the bilinear estimate for the pair (u, v).
double rhs_bilinear(const Quasimode& u, const Quasimode& v, const BilinearVariant& variant);

// ||u v||_2 divided by the estimate's right-hand side.
double bilinear_ratio(const Quasimode& u, const Quasimode& v, const BilinearVariant& variant);

} // namespace qlab
