#include "qlab/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab::sphere {

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= n; ++l) {
                const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x; // guesses start from the +1 end; store ascending
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

void normalized_legendre(int l_max, int m, double x, double* out) {
    if (m < 0 || m > l_max) throw std::invalid_argument("normalized_legendre: 0 <= m <= l_max");
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    // \bar P_m^m by the diagonal recurrence (Condon-Shortley phase included).
    double pmm = std::sqrt(1.0 / (4.0 * M_PI));
    for (int k = 1; k <= m; ++k)
        pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    out[0] = pmm;
    if (l_max == m) return;
    double pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
    out[1] = pm1;
    double pprev = pmm, pcur = pm1;
    for (int l = m + 2; l <= l_max; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
        const double b = std::sqrt(((static_cast<double>(l - 1) * (l - 1)) - static_cast<double>(m) * m) /
                                   (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
        const double pnext = a * (x * pcur - b * pprev);
        out[l - m] = pnext;
        pprev = pcur;
        pcur = pnext;
    }
}

} // namespace qlab::sphere
