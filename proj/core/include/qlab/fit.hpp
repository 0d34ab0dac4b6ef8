#pragma once

#include <utility>
#include <vector>

namespace qlab {

enum class LogCorrection { None, HalfLog, ThreeHalfLog };

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0; // in log space
    int points_used = 0;
};

// Least-squares line through (ln x, ln y'), where y' = y / log^{1/2}(x) or
// y / log^{3/2}(x) under the d = 3 corrections. Needs >= 3 strictly increasing
// positive points.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points,
                       LogCorrection correction = LogCorrection::None);

} // namespace qlab
