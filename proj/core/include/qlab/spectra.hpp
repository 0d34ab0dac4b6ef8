#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qlab/errors.hpp"

namespace qlab {

enum class Geometry { Torus, Sphere2 };

// A model manifold with an exactly enumerable Laplace-Beltrami spectrum.
//
// Torus: [0,2pi)^d, d in [2,6], probability measure, e_k(x) = exp(i<k,x>),
// eigenvalue |k|^2 (exact integer).
// Sphere2: round S^2 with the surface measure (total 4pi), orthonormal complex
// spherical harmonics Y_l^m (Condon-Shortley phase), eigenvalue l(l+1).
struct SpectralModel {
    Geometry geometry = Geometry::Torus;
    int dim = 2;

    static SpectralModel torus(int d);
    static SpectralModel sphere2();

    bool is_torus() const { return geometry == Geometry::Torus; }
    bool is_sphere() const { return geometry == Geometry::Sphere2; }
    std::string name() const;

    friend bool operator==(const SpectralModel&, const SpectralModel&) = default;
};

// Integer label of one eigenfunction: lattice vector k (torus) or (l, m) with
// |m| <= l (sphere). Unused trailing components stay zero so the default
// lexicographic comparison matches the canonical tie-break within a level.
struct ModeLabel {
    std::array<int32_t, 6> c{};
    uint8_t n = 0;

    static ModeLabel torus(std::initializer_list<int32_t> ks);
    static ModeLabel sphere(int l, int m);

    int32_t operator[](size_t i) const { return c[i]; }
    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

int64_t eigenvalue_of(const SpectralModel& model, const ModeLabel& label);

// Sort key realizing the canonical total order: eigenvalue ascending, then
// lexicographic label.
struct ModeKey {
    int64_t eigenvalue = 0;
    ModeLabel label;

    double frequency() const { return std::sqrt(static_cast<double>(eigenvalue)); }
    friend auto operator<=>(const ModeKey&, const ModeKey&) = default;
};

ModeKey make_mode(const SpectralModel& model, const ModeLabel& label);

struct Mode {
    ModeKey key;
    int64_t rank = 0;

    double frequency() const { return key.frequency(); }
    int64_t eigenvalue() const { return key.eigenvalue; }
    const ModeLabel& label() const { return key.label; }
};

inline constexpr int64_t kDefaultModeCap = 2'000'000;

// All modes with frequency <= lambda_max in canonical order, ranks from 0.
std::vector<Mode> enumerate_modes(const SpectralModel& model, double lambda_max,
                                  int64_t mode_cap = kDefaultModeCap);

// Exact count of modes with frequency <= lambda, counting multiplicity.
int64_t weyl_count(const SpectralModel& model, double lambda);

// Frequency of the rank-n mode in canonical order (generalized inverse of
// weyl_count); monotone nondecreasing in n.
double frequency_of_rank(const SpectralModel& model, int64_t n);

// Lattice/sphere window enumeration shared by quasimode constructors and the
// windowed projectors: modes with frequency in [a, b), optionally restricted
// to the cone of angle <= cap_angle around the +e1 axis (torus only).
std::vector<ModeKey> enumerate_window(const SpectralModel& model, double a, double b,
                                      double cap_angle = -1.0,
                                      int64_t mode_cap = kDefaultModeCap);

// Count of modes with eigenvalue <= emax (exact integer threshold).
int64_t count_up_to_eigenvalue(const SpectralModel& model, int64_t emax);

// Volume of the unit d-ball (Weyl-law normalization for the torus).
double unit_ball_volume(int d);

} // namespace qlab
