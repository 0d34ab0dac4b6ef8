#include "qlab/project.hpp"

#include <algorithm>
#include <cmath>

namespace qlab {

namespace {

// eig lies in the half-open frequency window [a, b); same slack convention as
// the enumeration in spectra.cpp.
bool eig_in_window(int64_t eig, double a, double b) {
    const double a2 = a * a;
    const auto emin = static_cast<int64_t>(std::ceil(a2 - (1e-9 + a2 * 1e-12)));
    if (eig < emin) return false;
    if (std::isinf(b)) return true;
    const double b2 = b * b;
    const auto eexcl = static_cast<int64_t>(std::ceil(b2 - (1e-9 + b2 * 1e-12)));
    return eig < eexcl;
}

} // namespace

double CutoffProfile::smooth_step(double r, double lo, double hi) {
    if (r <= lo) return 1.0;
    if (r >= hi) return 0.0;
    const double s = (r - lo) / (hi - lo);
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return b / (a + b);
}

int64_t rank_of_mode(const SpectralModel& model, const ModeKey& key) {
    if (model.is_sphere()) {
        const int64_t l = key.label[0];
        const int64_t m = key.label[1];
        return l * l + (l + m);
    }
    const int64_t below = count_up_to_eigenvalue(model, key.eigenvalue - 1);
    const double freq = key.frequency();
    const auto level = enumerate_window(model, freq, std::sqrt(static_cast<double>(key.eigenvalue + 1)));
    int64_t offset = 0;
    for (const ModeKey& mk : level) {
        if (mk < key) ++offset;
    }
    return below + offset;
}

std::pair<SpectralField, SpectralField> project_rank(const SpectralField& f, int64_t nu) {
    if (nu < 0) throw std::invalid_argument("project_rank: nu >= 0");
    const SpectralModel& model = f.model();
    SpectralField low(model), high(model);

    // Walk f's modes grouped by eigenvalue level; a level needs per-mode rank
    // resolution only when nu falls inside it.
    auto it = f.coeffs().begin();
    while (it != f.coeffs().end()) {
        const int64_t eig = it->first.eigenvalue;
        const int64_t base = count_up_to_eigenvalue(model, eig - 1);
        const int64_t level_size = count_up_to_eigenvalue(model, eig) - base;
        auto level_end = it;
        while (level_end != f.coeffs().end() && level_end->first.eigenvalue == eig) ++level_end;
        if (base + level_size - 1 <= nu) {
            for (; it != level_end; ++it) low.add(it->first, it->second);
        } else if (base > nu) {
            for (; it != level_end; ++it) high.add(it->first, it->second);
        } else {
            for (; it != level_end; ++it) {
                if (rank_of_mode(model, it->first) <= nu)
                    low.add(it->first, it->second);
                else
                    high.add(it->first, it->second);
            }
        }
        it = level_end;
    }
    return {std::move(low), std::move(high)};
}

SpectralField project_window(const SpectralField& f, double a, double b) {
    if (a < 0 || b < a) throw std::invalid_argument("project_window: need 0 <= a <= b");
    SpectralField out(f.model());
    for (const auto& [key, c] : f.coeffs())
        if (eig_in_window(key.eigenvalue, a, b)) out.add(key, c);
    return out;
}

std::pair<SpectralField, SpectralField> smooth_split(const SpectralField& f, double lambda,
                                                     const CutoffProfile& profile) {
    if (lambda < 1.0) throw std::invalid_argument("smooth_split: lambda >= 1");
    SpectralField low(f.model()), high(f.model());
    for (const auto& [key, c] : f.coeffs()) {
        const double w = profile.psi(key.frequency() / lambda);
        const Complex lc = w * c;
        const Complex hc = c - lc; // exact reconstruction by construction
        if (lc != Complex{}) low.add(key, lc);
        if (hc != Complex{}) high.add(key, hc);
    }
    return {std::move(low), std::move(high)};
}

SpectralField lp_block(const SpectralField& f, int j, const CutoffProfile& profile) {
    SpectralField out(f.model());
    const double scale = std::ldexp(1.0, -j);
    for (const auto& [key, c] : f.coeffs()) {
        const double w = profile.beta(key.frequency() * scale);
        if (w != 0.0) out.add(key, w * c);
    }
    return out;
}

int64_t min_rank_for_tolerance(const SpectralField& h, double eps, RemainderNorm norm) {
    if (!(eps > 0)) throw std::invalid_argument("min_rank_for_tolerance: eps > 0");
    const auto& coeffs = h.coeffs();
    std::vector<double> weight;
    weight.reserve(coeffs.size());
    std::vector<const ModeKey*> keys;
    keys.reserve(coeffs.size());
    for (const auto& [key, c] : coeffs) {
        double w = std::norm(c);
        if (norm == RemainderNorm::HMinus1) w /= 1.0 + static_cast<double>(key.eigenvalue);
        weight.push_back(w);
        keys.push_back(&key);
    }
    // tail[j] = sum of weights of modes after position j (canonical order).
    std::vector<double> tail(weight.size() + 1, 0.0);
    for (size_t j = weight.size(); j-- > 0;) tail[j] = tail[j + 1] + weight[j];

    const double eps2 = eps * eps;
    if (tail[0] < eps2) return 0;
    for (size_t j = 1; j <= weight.size(); ++j) {
        if (tail[j] < eps2) return rank_of_mode(h.model(), *keys[j - 1]);
    }
    return kRankUnreachable;
}

} // namespace qlab
