#include "qlab/spectra.hpp"

#include <algorithm>
#include <limits>

namespace qlab {

namespace {

// Half-open frequency window [a, b) in terms of the exact integer eigenvalue:
// eig is inside iff emin <= eig < eexcl. Eigenvalues are exact integers, so a
// small absolute+relative slack makes the boundary decisions immune to the
// roundoff in a*a.
struct EigWindow {
    int64_t emin;
    int64_t eexcl;

    static EigWindow from_frequencies(double a, double b) {
        EigWindow w;
        const double a2 = a * a;
        w.emin = static_cast<int64_t>(std::ceil(a2 - (1e-9 + a2 * 1e-12)));
        if (w.emin < 0) w.emin = 0;
        if (std::isinf(b)) {
            w.eexcl = std::numeric_limits<int64_t>::max();
        } else {
            const double b2 = b * b;
            w.eexcl = static_cast<int64_t>(std::ceil(b2 - (1e-9 + b2 * 1e-12)));
            if (w.eexcl < 0) w.eexcl = 0;
        }
        return w;
    }

    // Closed [0, lambda]: eig <= lambda^2 with the same slack.
    static EigWindow up_to_frequency(double lambda) {
        EigWindow w;
        const double l2 = lambda * lambda;
        w.emin = 0;
        w.eexcl = static_cast<int64_t>(std::floor(l2 + 1e-9 + l2 * 1e-12)) + 1;
        return w;
    }
};

void enumerate_inner(int dims_left, int64_t budget, std::array<int32_t, 6>& comps,
                     int pos, int64_t partial_eig, const EigWindow& win, int d,
                     int64_t mode_cap, std::vector<ModeKey>& out) {
    if (dims_left == 0) {
        if (partial_eig >= win.emin && partial_eig < win.eexcl) {
            if (static_cast<int64_t>(out.size()) >= mode_cap)
                throw ResourceError("enumerate_window: mode cap exceeded");
            ModeKey mk;
            mk.eigenvalue = partial_eig;
            mk.label.c = comps;
            mk.label.n = static_cast<uint8_t>(d);
            out.push_back(mk);
        }
        return;
    }
    const auto r = static_cast<int32_t>(std::floor(std::sqrt(static_cast<double>(budget)) + 1e-9));
    for (int32_t k = -r; k <= r; ++k) {
        const int64_t k2 = static_cast<int64_t>(k) * k;
        if (k2 > budget) continue;
        comps[pos] = k;
        enumerate_inner(dims_left - 1, budget - k2, comps, pos + 1, partial_eig + k2,
                        win, d, mode_cap, out);
    }
    comps[pos] = 0;
}

void enumerate_torus_window(int d, const EigWindow& win, double cap_angle,
                            int64_t mode_cap, std::vector<ModeKey>& out) {
    if (win.eexcl == std::numeric_limits<int64_t>::max())
        throw ResourceError("enumerate_window: unbounded window on a model");
    const int64_t emax = win.eexcl - 1;
    if (emax < 0) return;
    const bool has_cap = cap_angle >= 0.0 && cap_angle < M_PI;
    const bool narrow = has_cap && cap_angle < M_PI / 2;
    const auto r1 = static_cast<int32_t>(std::floor(std::sqrt(static_cast<double>(emax)) + 1e-9));
    const double cos_cap = has_cap ? std::cos(cap_angle) : -1.0;
    const double tan_cap = narrow ? std::tan(cap_angle) : 0.0;

    std::array<int32_t, 6> comps{};
    const int32_t k1_lo = narrow ? 0 : -r1;
    for (int32_t k1 = k1_lo; k1 <= r1; ++k1) {
        const int64_t k1sq = static_cast<int64_t>(k1) * k1;
        int64_t budget = emax - k1sq;
        if (budget < 0) continue;
        if (narrow) {
            // Inside the cap the transverse norm is at most k1*tan(cap_angle).
            const double perp_max = static_cast<double>(k1) * tan_cap;
            budget = std::min<int64_t>(budget, static_cast<int64_t>(perp_max * perp_max + 1e-6));
        }
        comps[0] = k1;
        const size_t before = out.size();
        enumerate_inner(d - 1, budget, comps, 1, k1sq, win, d, mode_cap, out);
        if (has_cap) {
            // Exact angular test at the leaves that survived the pruning.
            auto it = out.begin() + static_cast<std::ptrdiff_t>(before);
            out.erase(std::remove_if(it, out.end(),
                                     [&](const ModeKey& mk) {
                                         if (mk.eigenvalue == 0) return false;
                                         const double kn = mk.frequency();
                                         return static_cast<double>(mk.label[0]) <
                                                kn * cos_cap - 1e-12;
                                     }),
                      out.end());
        }
    }
}

void enumerate_sphere_window(const EigWindow& win, int64_t mode_cap,
                             std::vector<ModeKey>& out) {
    if (win.eexcl == std::numeric_limits<int64_t>::max())
        throw ResourceError("enumerate_window: unbounded window on a model");
    for (int64_t l = 0;; ++l) {
        const int64_t eig = l * (l + 1);
        if (eig >= win.eexcl) break;
        if (eig < win.emin) continue;
        if (static_cast<int64_t>(out.size()) + 2 * l + 1 > mode_cap)
            throw ResourceError("enumerate_window: mode cap exceeded");
        for (int64_t m = -l; m <= l; ++m) {
            ModeKey mk;
            mk.eigenvalue = eig;
            mk.label = ModeLabel::sphere(static_cast<int>(l), static_cast<int>(m));
            out.push_back(mk);
        }
    }
}

// Number of lattice points k in Z^dims with |k|^2 <= budget.
int64_t count_ball(int dims, int64_t budget) {
    if (budget < 0) return 0;
    const auto r = static_cast<int64_t>(std::floor(std::sqrt(static_cast<double>(budget)) + 1e-9));
    if (dims == 1) return 2 * r + 1;
    int64_t total = 0;
    for (int64_t k = -r; k <= r; ++k) total += count_ball(dims - 1, budget - k * k);
    return total;
}

} // namespace

int64_t count_up_to_eigenvalue(const SpectralModel& model, int64_t emax) {
    if (emax < 0) return 0;
    if (model.is_sphere()) {
        // l(l+1) <= emax; count is (l+1)^2.
        auto l = static_cast<int64_t>(std::floor((std::sqrt(4.0 * static_cast<double>(emax) + 1.0) - 1.0) / 2.0 + 1e-9));
        while ((l + 1) * (l + 2) <= emax) ++l;
        while (l > 0 && l * (l + 1) > emax) --l;
        return (l + 1) * (l + 1);
    }
    return count_ball(model.dim, emax);
}

SpectralModel SpectralModel::torus(int d) {
    if (d < 2 || d > 6) throw std::invalid_argument("torus dimension must be in [2, 6]");
    return SpectralModel{Geometry::Torus, d};
}

SpectralModel SpectralModel::sphere2() { return SpectralModel{Geometry::Sphere2, 2}; }

std::string SpectralModel::name() const {
    if (is_sphere()) return "s2";
    return "t" + std::to_string(dim);
}

ModeLabel ModeLabel::torus(std::initializer_list<int32_t> ks) {
    ModeLabel l;
    l.n = static_cast<uint8_t>(ks.size());
    size_t i = 0;
    for (int32_t k : ks) l.c[i++] = k;
    return l;
}

ModeLabel ModeLabel::sphere(int l, int m) {
    ModeLabel lab;
    lab.n = 2;
    lab.c[0] = l;
    lab.c[1] = m;
    return lab;
}

int64_t eigenvalue_of(const SpectralModel& model, const ModeLabel& label) {
    if (model.is_sphere()) {
        const int64_t l = label[0];
        const int64_t m = label[1];
        if (l < 0 || std::abs(m) > l) throw std::invalid_argument("invalid (l, m) label");
        return l * (l + 1);
    }
    if (label.n != model.dim) throw std::invalid_argument("label dimension mismatch");
    int64_t e = 0;
    for (int i = 0; i < model.dim; ++i) e += static_cast<int64_t>(label[i]) * label[i];
    return e;
}

ModeKey make_mode(const SpectralModel& model, const ModeLabel& label) {
    return ModeKey{eigenvalue_of(model, label), label};
}

std::vector<ModeKey> enumerate_window(const SpectralModel& model, double a, double b,
                                      double cap_angle, int64_t mode_cap) {
    if (a < 0 || b < a) throw std::invalid_argument("enumerate_window: need 0 <= a <= b");
    const EigWindow win = EigWindow::from_frequencies(a, b);
    std::vector<ModeKey> out;
    if (model.is_sphere()) {
        enumerate_sphere_window(win, mode_cap, out);
    } else {
        enumerate_torus_window(model.dim, win, cap_angle, mode_cap, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Mode> enumerate_modes(const SpectralModel& model, double lambda_max,
                                  int64_t mode_cap) {
    if (lambda_max < 0) throw std::invalid_argument("enumerate_modes: lambda_max >= 0");
    const EigWindow win = EigWindow::up_to_frequency(lambda_max);
    std::vector<ModeKey> keys;
    if (model.is_sphere()) {
        enumerate_sphere_window(win, mode_cap, keys);
    } else {
        enumerate_torus_window(model.dim, win, -1.0, mode_cap, keys);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Mode> modes;
    modes.reserve(keys.size());
    int64_t rank = 0;
    for (const ModeKey& k : keys) modes.push_back(Mode{k, rank++});
    return modes;
}

int64_t weyl_count(const SpectralModel& model, double lambda) {
    if (lambda < 0) throw std::invalid_argument("weyl_count: lambda >= 0");
    const EigWindow win = EigWindow::up_to_frequency(lambda);
    return count_up_to_eigenvalue(model, win.eexcl - 1);
}

double frequency_of_rank(const SpectralModel& model, int64_t n) {
    if (n < 0) throw std::invalid_argument("frequency_of_rank: n >= 0");
    // Smallest integer eigenvalue level E with count(<= E) >= n + 1.
    int64_t lo = 0, hi = 1;
    while (count_up_to_eigenvalue(model, hi) < n + 1) {
        lo = hi + 1;
        hi *= 2;
    }
    while (lo < hi) {
        const int64_t mid = lo + (hi - lo) / 2;
        if (count_up_to_eigenvalue(model, mid) >= n + 1)
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::sqrt(static_cast<double>(lo));
}

double unit_ball_volume(int d) {
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

} // namespace qlab
