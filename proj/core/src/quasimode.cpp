#include "qlab/quasimode.hpp"

#include <cmath>

namespace qlab {

namespace {

// Unit-L2 field over the given (canonically sorted) modes.
SpectralField weighted_field(const SpectralModel& model, const std::vector<ModeKey>& modes,
                             WeightScheme weights, uint64_t seed) {
    SpectralField f(model);
    if (weights == WeightScheme::Uniform) {
        const double a = 1.0 / std::sqrt(static_cast<double>(modes.size()));
        for (const ModeKey& mk : modes) f.add(mk, a);
    } else {
        GaussianStream rng(seed);
        double norm2 = 0.0;
        for (const ModeKey& mk : modes) {
            const Complex c = rng.complex_normal();
            norm2 += std::norm(c);
            f.add(mk, c);
        }
        f *= 1.0 / std::sqrt(norm2);
    }
    return f;
}

} // namespace

std::string family_name(QuasimodeFamily family) {
    switch (family) {
        case QuasimodeFamily::Eigenfunction: return "eigenfunction";
        case QuasimodeFamily::Cluster: return "cluster";
        case QuasimodeFamily::Sectoral: return "sectoral";
        case QuasimodeFamily::Zonal: return "zonal";
        case QuasimodeFamily::LatticeCap: return "cap";
        case QuasimodeFamily::Custom: return "custom";
    }
    return "unknown";
}

double GaussianStream::real() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // Box-Muller on uniforms built from raw 64-bit words.
    double u1 = 0.0;
    do {
        u1 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    } while (u1 <= 0.0);
    const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * M_PI * u2);
    have_cached_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

std::pair<double, double> quality(const SpectralField& f, double lambda) {
    if (lambda < 1.0) throw std::invalid_argument("quality: lambda >= 1");
    const double l2sq = lambda * lambda;
    double defect2 = 0.0, norm2 = 0.0;
    for (const auto& [key, c] : f.coeffs()) {
        const double gap = static_cast<double>(key.eigenvalue) - l2sq;
        defect2 += gap * gap * std::norm(c);
        norm2 += std::norm(c);
    }
    const double defect = std::sqrt(defect2);
    return {defect, defect / lambda + std::sqrt(norm2)};
}

Quasimode make_quasimode(SpectralField f, double lambda, QuasimodeFamily family,
                         uint64_t seed) {
    const auto [defect, q] = quality(f, lambda);
    return Quasimode{std::move(f), lambda, defect, q, family, seed};
}

Quasimode cluster_quasimode(const SpectralModel& model, double lambda, double width,
                            WeightScheme weights, uint64_t seed) {
    const auto modes = enumerate_window(model, lambda, lambda + width);
    if (modes.empty())
        throw std::invalid_argument("cluster_quasimode: empty frequency window");
    return make_quasimode(weighted_field(model, modes, weights, seed), lambda,
                          QuasimodeFamily::Cluster, weights == WeightScheme::Random ? seed : 0);
}

Quasimode sphere_extremal(SphereExtremal kind, int l) {
    if (l < 1) throw std::invalid_argument("sphere_extremal: l >= 1");
    if (l > kSphereDegreeCap) throw ResourceError("sphere_extremal: degree cap exceeded");
    const SpectralModel model = SpectralModel::sphere2();
    const int m = (kind == SphereExtremal::Sectoral) ? l : 0;
    SpectralField f = SpectralField::unit_mode(model, ModeLabel::sphere(l, m));
    return make_quasimode(std::move(f), std::sqrt(static_cast<double>(l) * (l + 1)),
                          kind == SphereExtremal::Sectoral ? QuasimodeFamily::Sectoral
                                                           : QuasimodeFamily::Zonal);
}

Quasimode lattice_cap(const SpectralModel& model, int lambda, double cap_width) {
    if (!model.is_torus()) throw ModelMismatchError("lattice_cap: torus models only");
    if (lambda < 1) throw std::invalid_argument("lattice_cap: lambda >= 1");
    const auto modes = enumerate_window(model, lambda, lambda + 1.0, cap_width);
    if (modes.empty()) throw std::invalid_argument("lattice_cap: empty cap");
    return make_quasimode(weighted_field(model, modes, WeightScheme::Uniform, 0),
                          static_cast<double>(lambda), QuasimodeFamily::LatticeCap);
}

} // namespace qlab
