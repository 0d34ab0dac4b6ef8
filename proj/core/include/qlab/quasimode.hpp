#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "qlab/field.hpp"

namespace qlab {

enum class QuasimodeFamily { Eigenfunction, Cluster, Sectoral, Zonal, LatticeCap, Custom };

std::string family_name(QuasimodeFamily family);

// An approximate eigenfunction with nominal frequency lambda, its spectral
// defect ||(Delta + lambda^2) u||_2 and the quality factor
// q = lambda^{-1} * defect + ||u||_2 that appears on the right-hand side of
// every bilinear estimate.
struct Quasimode {
    SpectralField field;
    double lambda = 1.0;
    double defect = 0.0;
    double q = 0.0;
    QuasimodeFamily family = QuasimodeFamily::Custom;
    uint64_t seed = 0; // generator seed when weights were random, else 0
};

enum class WeightScheme { Uniform, Random };

// defect via the spectral identity defect^2 = sum (lambda_k^2 - lambda^2)^2 |c_k|^2,
// and q = lambda^{-1} * defect + ||f||_2.
std::pair<double, double> quality(const SpectralField& f, double lambda);

Quasimode make_quasimode(SpectralField f, double lambda, QuasimodeFamily family,
                         uint64_t seed = 0);

// Unit-L2 field supported on the modes with frequency in [lambda, lambda + width).
Quasimode cluster_quasimode(const SpectralModel& model, double lambda, double width,
                            WeightScheme weights = WeightScheme::Uniform, uint64_t seed = 0);

enum class SphereExtremal { Sectoral, Zonal };

// Sectoral = Y_l^l (equator-concentrated), Zonal = Y_l^0 (pole-concentrated);
// exact eigenfunctions with lambda = sqrt(l(l+1)).
Quasimode sphere_extremal(SphereExtremal kind, int l);

// Torus cap quasimode: modes with |k| in [lambda, lambda + 1) and direction
// within cap_width of the +e1 axis, uniform weights, unit L2 norm.
Quasimode lattice_cap(const SpectralModel& model, int lambda, double cap_width);

// Seeded standard complex Gaussian stream (hand-rolled Box-Muller over
// mt19937_64 words, so output bytes do not depend on the standard library's
// distribution internals).
class GaussianStream {
public:
    explicit GaussianStream(uint64_t seed) : gen_(seed) {}
    double real();
    Complex complex_normal() { return {real(), real()}; }

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace qlab
