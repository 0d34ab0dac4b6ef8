#pragma once

#include <complex>
#include <map>
#include <variant>
#include <vector>

#include "qlab/spectra.hpp"

namespace qlab {

using Complex = std::complex<double>;

// Sparse coefficient vector over the model's eigenbasis; the canonical
// function representation. Absent modes mean coefficient zero.
class SpectralField {
public:
    explicit SpectralField(SpectralModel model) : model_(model) {}

    const SpectralModel& model() const { return model_; }
    const std::map<ModeKey, Complex>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }
    size_t support_size() const { return coeffs_.size(); }

    void set(const ModeLabel& label, Complex a);
    void add(const ModeKey& key, Complex a) { coeffs_[key] += a; }
    Complex coeff(const ModeLabel& label) const;
    Complex coeff(const ModeKey& key) const;

    // Removes exact zeros (and, with a positive tolerance, tiny coefficients).
    void prune(double abs_tol = 0.0);

    double max_frequency() const;
    // Torus: max over stored modes of per-axis |k_i|. Sphere: max degree l.
    int max_axis_band() const;
    int max_degree() const;

    SpectralField& operator+=(const SpectralField& rhs);
    SpectralField& operator-=(const SpectralField& rhs);
    SpectralField& operator*=(Complex s);

    static SpectralField unit_mode(const SpectralModel& model, const ModeLabel& label);

private:
    SpectralModel model_;
    std::map<ModeKey, Complex> coeffs_;
};

SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator*(SpectralField f, Complex s);

// Coefficients of the complex conjugate function.
SpectralField conjugate(const SpectralField& f);

// Uniform tensor grid on [0, 2pi)^d with the probability measure; d <= 3.
struct TorusGridSpec {
    int nodes_per_axis = 1;
};

// Gauss-Legendre nodes in cos(theta), uniform phi, surface measure (total
// 4pi). Integrates spherical polynomials up to degree
// min(2*n_theta - 1, n_phi - 1) exactly.
struct SphereGridSpec {
    int n_theta = 1;
    int n_phi = 1;
};

using GridSpec = std::variant<TorusGridSpec, SphereGridSpec>;

GridSpec sufficient_grid(const SpectralModel& model, const SpectralField& f,
                         int oversample = 1);

class GridField {
public:
    GridField(SpectralModel model, GridSpec spec);

    const SpectralModel& model() const { return model_; }
    const GridSpec& spec() const { return spec_; }
    std::vector<Complex>& samples() { return samples_; }
    const std::vector<Complex>& samples() const { return samples_; }

    // Quadrature weight of sample i (model measure convention).
    double weight(size_t i) const;

    void multiply_pointwise(const GridField& rhs);

private:
    SpectralModel model_;
    GridSpec spec_;
    std::vector<Complex> samples_;
    std::vector<double> theta_weights_; // sphere only
};

// Pointwise evaluation of sum c_k e_k on the grid. Throws BandwidthError if
// the grid cannot represent the field's frequency content.
GridField synthesize(const SpectralField& f, const GridSpec& spec);

// Coefficients <g, e_k> for all modes with frequency <= lambda_max; exact to
// roundoff for band-limited input on a sufficient grid.
SpectralField analyze(const GridField& g, double lambda_max);

// Coefficient representation of the pointwise product. Torus: exact sparse
// convolution. Sphere: grid multiply on a degree l_u + l_v grid, exact to
// roundoff by the Clebsch-Gordan band limit.
SpectralField multiply(const SpectralField& u, const SpectralField& v,
                       int64_t support_cap = kDefaultModeCap);

// Quadrature value of (integral |f|^p)^(1/p). p = 2 is exact (Parseval); even
// integer p is exact on an internally built sufficient grid; other finite p
// uses a 4x oversampled grid and is a quadrature estimate; p = infinity
// returns the grid max, a lower bound for the true sup.
double lp_norm(const SpectralField& f, double p);

// (sum_k (1 + lambda_k^2)^sigma |c_k|^2)^(1/2).
double sobolev_norm(const SpectralField& f, double sigma);

Complex inner(const SpectralField& f, const SpectralField& g);

inline double l2_norm(const SpectralField& f) { return lp_norm(f, 2.0); }

inline constexpr int kSphereDegreeCap = 256;

} // namespace qlab
