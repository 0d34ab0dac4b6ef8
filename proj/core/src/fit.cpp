#include "qlab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab {

FitResult fit_exponent(const std::vector<std::pair<double, double>>& points,
                       LogCorrection correction) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_exponent: need at least 3 points");
    std::vector<double> lx, ly;
    lx.reserve(points.size());
    ly.reserve(points.size());
    double prev_x = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fit_exponent: points must be positive");
        if (x <= prev_x)
            throw std::invalid_argument("fit_exponent: x must be strictly increasing");
        prev_x = x;
        double yc = y;
        if (correction != LogCorrection::None) {
            const double lg = std::log(x);
            if (!(lg > 0.0))
                throw std::invalid_argument("fit_exponent: log correction needs x > 1");
            const double power = correction == LogCorrection::HalfLog ? 0.5 : 1.5;
            yc /= std::pow(lg, power);
        }
        lx.push_back(std::log(x));
        ly.push_back(std::log(yc));
    }
    const auto n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.points_used = static_cast<int>(lx.size());
    for (size_t i = 0; i < lx.size(); ++i)
        fit.max_abs_residual =
            std::max(fit.max_abs_residual, std::abs(ly[i] - fit.slope * lx[i] - fit.intercept));
    return fit;
}

} // namespace qlab
