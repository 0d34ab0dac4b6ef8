#include <cmath>

#include "doctest.h"
#include "qlab/field.hpp"
#include "qlab/quasimode.hpp"

using namespace qlab;

namespace {

SpectralField random_field(const SpectralModel& model, double band, uint64_t seed) {
    GaussianStream rng(seed);
    SpectralField f(model);
    double norm2 = 0.0;
    for (const Mode& m : enumerate_modes(model, band)) {
        const Complex c = rng.complex_normal();
        norm2 += std::norm(c);
        f.add(m.key, c);
    }
    f *= 1.0 / std::sqrt(norm2);
    return f;
}

double max_coeff_gap(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d -= b;
    double m = 0.0;
    for (const auto& [key, c] : d.coeffs()) m = std::max(m, std::abs(c));
    return m;
}

double grid_integral_p(const SpectralField& f, int p, int oversample) {
    const GridField g = synthesize(f, sufficient_grid(f.model(), f, oversample));
    double acc = 0.0;
    for (size_t i = 0; i < g.samples().size(); ++i)
        acc += g.weight(i) * std::pow(std::abs(g.samples()[i]), p);
    return acc;
}

} // namespace

TEST_CASE("Parseval: coefficient and quadrature L2 agree") {
    for (const auto& model :
         {SpectralModel::torus(2), SpectralModel::torus(3), SpectralModel::sphere2()}) {
        const SpectralField f = random_field(model, 4.0, 42);
        const double l2 = lp_norm(f, 2.0);
        CHECK(l2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(grid_integral_p(f, 2, 2) == doctest::Approx(l2 * l2).epsilon(1e-11));
    }
}

TEST_CASE("single torus modes have unit norms in every p") {
    const auto t2 = SpectralModel::torus(2);
    const SpectralField e = SpectralField::unit_mode(t2, ModeLabel::torus({3, -1}));
    CHECK(lp_norm(e, 2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(lp_norm(e, 4.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(lp_norm(e, INFINITY) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analyze inverts synthesize") {
    for (const auto& model :
         {SpectralModel::torus(2), SpectralModel::torus(3), SpectralModel::sphere2()}) {
        const double band = model.is_sphere() ? std::sqrt(8.0 * 9.0) : 4.0;
        const SpectralField f = random_field(model, band, 7);
        const GridField g = synthesize(f, sufficient_grid(model, f));
        const SpectralField back = analyze(g, f.max_frequency());
        SpectralField diff = back;
        diff -= f;
        diff.prune(1e-11);
        CHECK(diff.empty());
    }
}

TEST_CASE("torus products: convolution identities") {
    const auto t2 = SpectralModel::torus(2);
    const SpectralField a = SpectralField::unit_mode(t2, ModeLabel::torus({2, 5}));
    const SpectralField b = SpectralField::unit_mode(t2, ModeLabel::torus({-1, 3}));
    const SpectralField p = multiply(a, b);
    CHECK(p.support_size() == 1);
    CHECK(p.coeff(ModeLabel::torus({1, 8})) == Complex{1.0, 0.0});

    // cos(k.x) squared = 1/2 + (e_{2k} + e_{-2k})/4.
    SpectralField c(t2);
    c.set(ModeLabel::torus({1, 2}), 0.5);
    c.set(ModeLabel::torus({-1, -2}), 0.5);
    const SpectralField c2 = multiply(c, c);
    CHECK(std::abs(c2.coeff(ModeLabel::torus({0, 0})) - 0.5) < 1e-15);
    CHECK(std::abs(c2.coeff(ModeLabel::torus({2, 4})) - 0.25) < 1e-15);
    CHECK(std::abs(c2.coeff(ModeLabel::torus({-2, -4})) - 0.25) < 1e-15);
}

TEST_CASE("torus products: convolution equals the grid product") {
    for (const int d : {2, 3}) {
        const auto model = SpectralModel::torus(d);
        const double band = d == 2 ? 5.0 : 3.0;
        const SpectralField u = random_field(model, band, 100 + d);
        const SpectralField v = random_field(model, band, 200 + d);
        const SpectralField conv = multiply(u, v);

        const int prod_band = u.max_axis_band() + v.max_axis_band();
        const int n = std::max(2 * prod_band + 1,
                               2 * static_cast<int>(std::floor(conv.max_frequency())) + 1);
        GridField gu = synthesize(u, TorusGridSpec{n});
        const GridField gv = synthesize(v, TorusGridSpec{n});
        gu.multiply_pointwise(gv);
        const SpectralField grid_prod = analyze(gu, conv.max_frequency());

        for (const auto& [key, c] : conv.coeffs())
            CHECK(std::abs(grid_prod.coeff(key) - c) < 1e-10);
        CHECK(lp_norm(grid_prod, 2.0) == doctest::Approx(lp_norm(conv, 2.0)).epsilon(1e-10));
    }
}

TEST_CASE("sphere product of two zonal degree-1 harmonics") {
    const auto s2 = SpectralModel::sphere2();
    const SpectralField y10 = SpectralField::unit_mode(s2, ModeLabel::sphere(1, 0));
    const SpectralField p = multiply(y10, y10);
    // (Y_1^0)^2 = (1/sqrt(4 pi)) Y_0^0 + (1/sqrt(5 pi)) Y_2^0.
    CHECK(std::abs(p.coeff(ModeLabel::sphere(0, 0)) - 1.0 / std::sqrt(4.0 * M_PI)) < 1e-12);
    CHECK(std::abs(p.coeff(ModeLabel::sphere(2, 0)) - 1.0 / std::sqrt(5.0 * M_PI)) < 1e-12);
    SpectralField rest = p;
    rest.set(ModeLabel::sphere(0, 0), 0.0);
    rest.set(ModeLabel::sphere(2, 0), 0.0);
    rest.prune(1e-12);
    CHECK(rest.empty());
}

TEST_CASE("quartic norm of the degree-1 zonal harmonic matches the closed form") {
    const auto s2 = SpectralModel::sphere2();
    const SpectralField y10 = SpectralField::unit_mode(s2, ModeLabel::sphere(1, 0));
    const double expect = std::pow(9.0 / (20.0 * M_PI), 0.25);
    CHECK(std::abs(lp_norm(y10, 4.0) - expect) < 1e-8);
}

TEST_CASE("torus quartic norm: coefficient-space value equals quadrature") {
    const auto t2 = SpectralModel::torus(2);
    const SpectralField f = random_field(t2, 4.0, 9);
    const double spectral = lp_norm(f, 4.0);
    const double quad = std::pow(grid_integral_p(f, 4, 4), 0.25);
    CHECK(spectral == doctest::Approx(quad).epsilon(1e-11));
}

TEST_CASE("conjugate matches pointwise conjugation") {
    for (const auto& model : {SpectralModel::torus(2), SpectralModel::sphere2()}) {
        const SpectralField f = random_field(model, 3.9, 5);
        const GridSpec spec = sufficient_grid(model, f);
        const GridField g = synthesize(f, spec);
        const GridField gc = synthesize(conjugate(f), spec);
        double gap = 0.0;
        for (size_t i = 0; i < g.samples().size(); ++i)
            gap = std::max(gap, std::abs(gc.samples()[i] - std::conj(g.samples()[i])));
        CHECK(gap < 1e-11);
    }
}

TEST_CASE("sobolev norm of a single mode") {
    const auto t2 = SpectralModel::torus(2);
    const SpectralField e = SpectralField::unit_mode(t2, ModeLabel::torus({3, 4}));
    CHECK(sobolev_norm(e, 1.0) == doctest::Approx(std::sqrt(26.0)).epsilon(1e-14));
    CHECK(sobolev_norm(e, -1.0) == doctest::Approx(1.0 / std::sqrt(26.0)).epsilon(1e-14));
    CHECK(sobolev_norm(e, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inner products") {
    const auto t2 = SpectralModel::torus(2);
    const SpectralField f = random_field(t2, 4.0, 1);
    const SpectralField g = random_field(t2, 4.0, 2);
    CHECK(std::abs(inner(f, f).real() - 1.0) < 1e-12);
    CHECK(std::abs(inner(f, g) - std::conj(inner(g, f))) < 1e-14);
}

TEST_CASE("bandwidth and model errors") {
    const auto t2 = SpectralModel::torus(2);
    const SpectralField f = random_field(t2, 4.0, 3);
    CHECK_THROWS_AS(synthesize(f, TorusGridSpec{3}), BandwidthError);
    CHECK_THROWS_AS(synthesize(f, SphereGridSpec{8, 17}), ModelMismatchError);
    const SpectralField g3 = random_field(SpectralModel::torus(3), 2.0, 4);
    CHECK_THROWS_AS(multiply(f, g3), ModelMismatchError);
    CHECK_THROWS_AS(lp_norm(random_field(SpectralModel::torus(4), 2.0, 5), 6.0), ResourceError);
    // p in {2, 4} stays available in high dimension.
    CHECK(lp_norm(random_field(SpectralModel::torus(4), 2.0, 5), 4.0) > 0.0);
}
