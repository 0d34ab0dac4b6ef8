#include "qlab/bounds.hpp"

#include <cmath>

#include "qlab/project.hpp"

namespace qlab {

namespace {

double clamped_log(double x) { return std::max(std::log(x), 1.0); }

void require_args(int d, double x, const char* what) {
    if (d < 2) throw std::invalid_argument(std::string(what) + ": d >= 2");
    if (x < 1.0) throw std::invalid_argument(std::string(what) + ": argument >= 1");
}

} // namespace

double lambda_exponent(int d, double nu) {
    require_args(d, nu, "lambda_exponent");
    if (d == 2) return std::pow(nu, 0.25);
    if (d == 3) return std::sqrt(nu) * std::sqrt(clamped_log(nu));
    return std::pow(nu, (d - 2) / 2.0);
}

double omega_exponent(int d, double mu) {
    require_args(d, mu, "omega_exponent");
    if (d == 2) return std::sqrt(mu);
    if (d == 3) return std::pow(mu, 1.5) * std::pow(clamped_log(mu), 1.5);
    return std::pow(mu, d * (d - 2) / 2.0);
}

double sigma_p(int d, double p) {
    if (d < 2) throw std::invalid_argument("sigma_p: d >= 2");
    if (p < 2.0) throw std::invalid_argument("sigma_p: p >= 2");
    const double half_gap = 0.5 - 1.0 / p;
    return std::max(d * half_gap - 0.5, (d - 1) / 2.0 * half_gap);
}

double tail_term(const Quasimode& v, int d, double mu, double n, double q) {
    if (!(n > d / 2.0)) throw std::invalid_argument("tail_term: N > d/2 required");
    const SpectralField tail = project_window(v.field, 2.0 * mu, INFINITY);
    if (tail.empty()) return 0.0;
    return std::pow(mu, -n + d / 2.0 - sigma_p(d, q)) * sobolev_norm(tail, n);
}

double rhs_bilinear(const Quasimode& u, const Quasimode& v, const BilinearVariant& variant) {
    const int d = u.field.model().dim;
    const double mu = std::min(u.lambda, v.lambda);
    if (mu < 1.0) throw std::invalid_argument("rhs_bilinear: min frequency >= 1");
    if (!variant.high_dim_tail)
        return lambda_exponent(d, mu) * u.q * v.q;
    // The tail attaches to the lower-frequency factor.
    const Quasimode& lowf = (v.lambda <= u.lambda) ? v : u;
    const Quasimode& other = (v.lambda <= u.lambda) ? u : v;
    return lambda_exponent(d, mu) * other.q *
           (lowf.q + tail_term(lowf, d, mu, variant.tail_n, variant.tail_q));
}

double bilinear_ratio(const Quasimode& u, const Quasimode& v, const BilinearVariant& variant) {
    const double uv = lp_norm(multiply(u.field, v.field), 2.0);
    return uv / rhs_bilinear(u, v, variant);
}

} // namespace qlab
