#include "qlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "qlab/sphere.hpp"

namespace qlab {

namespace {

void require_same_model(const SpectralModel& a, const SpectralModel& b, const char* op) {
    if (!(a == b)) throw ModelMismatchError(std::string(op) + ": fields from different models");
}

int torus_grid_size(const SpectralModel& model, const TorusGridSpec& spec) {
    if (!model.is_torus()) throw ModelMismatchError("torus grid on non-torus model");
    if (model.dim > 3) throw ResourceError("torus grids exist only for d <= 3");
    if (spec.nodes_per_axis < 1) throw BandwidthError("grid needs >= 1 node per axis");
    int size = 1;
    for (int i = 0; i < model.dim; ++i) size *= spec.nodes_per_axis;
    return size;
}

// Packing of a d-component lattice label into 64 bits for the convolution
// accumulator. Bits per component leave ample range at desk scale.
int pack_bits(int d) {
    switch (d) {
        case 2: return 32;
        case 3: return 21;
        case 4: return 16;
        case 5: return 12;
        default: return 10;
    }
}

uint64_t pack_label(const ModeLabel& l, int d, int bits) {
    const int64_t offset = int64_t{1} << (bits - 1);
    uint64_t key = 0;
    for (int i = 0; i < d; ++i) {
        const int64_t v = l[i] + offset;
        if (v < 0 || v >= (int64_t{1} << bits))
            throw ResourceError("multiply: lattice component out of packing range");
        key |= static_cast<uint64_t>(v) << (i * bits);
    }
    return key;
}

ModeLabel unpack_label(uint64_t key, int d, int bits) {
    const int64_t offset = int64_t{1} << (bits - 1);
    const uint64_t mask = (bits == 64) ? ~uint64_t{0} : ((uint64_t{1} << bits) - 1);
    ModeLabel l;
    l.n = static_cast<uint8_t>(d);
    for (int i = 0; i < d; ++i)
        l.c[i] = static_cast<int32_t>(static_cast<int64_t>((key >> (i * bits)) & mask) - offset);
    return l;
}

SpectralField multiply_torus(const SpectralField& u, const SpectralField& v,
                             int64_t support_cap) {
    const int d = u.model().dim;
    const int bits = pack_bits(d);
    std::unordered_map<uint64_t, Complex> acc;
    acc.reserve(u.support_size() * 2 + v.support_size() * 2);
    for (const auto& [ku, cu] : u.coeffs()) {
        for (const auto& [kv, cv] : v.coeffs()) {
            ModeLabel sum;
            sum.n = static_cast<uint8_t>(d);
            for (int i = 0; i < d; ++i) sum.c[i] = ku.label[i] + kv.label[i];
            acc[pack_label(sum, d, bits)] += cu * cv;
            if (static_cast<int64_t>(acc.size()) > support_cap)
                throw ResourceError("multiply: convolution support exceeds cap");
        }
    }
    SpectralField out(u.model());
    for (const auto& [key, c] : acc) {
        const ModeLabel l = unpack_label(key, d, bits);
        out.add(make_mode(u.model(), l), c);
    }
    return out;
}

SpectralField multiply_sphere(const SpectralField& u, const SpectralField& v) {
    if (u.empty() || v.empty()) return SpectralField(u.model());
    const int band = u.max_degree() + v.max_degree();
    if (band > kSphereDegreeCap)
        throw ResourceError("multiply: product degree exceeds the sphere degree cap");
    const SphereGridSpec spec{band + 1, 2 * band + 1};
    GridField gu = synthesize(u, spec);
    const GridField gv = synthesize(v, spec);
    gu.multiply_pointwise(gv);
    return analyze(gu, std::sqrt(static_cast<double>(band) * (band + 1)));
}

void synthesize_torus(const SpectralField& f, const TorusGridSpec& spec, GridField& out) {
    const int d = f.model().dim;
    const int n = spec.nodes_per_axis;
    if (2 * f.max_axis_band() + 1 > n)
        throw BandwidthError("synthesize: torus grid too coarse for the field's band");
    std::vector<Complex> axis(static_cast<size_t>(d) * n);
    auto& samples = out.samples();
    for (const auto& [key, c] : f.coeffs()) {
        for (int a = 0; a < d; ++a)
            for (int i = 0; i < n; ++i)
                axis[static_cast<size_t>(a) * n + i] =
                    std::polar(1.0, key.label[a] * 2.0 * M_PI * i / n);
        size_t idx = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            const Complex p0 = c * axis[i0];
            if (d == 2) {
                for (int i1 = 0; i1 < n; ++i1) samples[idx++] += p0 * axis[static_cast<size_t>(n) + i1];
            } else {
                for (int i1 = 0; i1 < n; ++i1) {
                    const Complex p1 = p0 * axis[static_cast<size_t>(n) + i1];
                    for (int i2 = 0; i2 < n; ++i2)
                        samples[idx++] += p1 * axis[static_cast<size_t>(2) * n + i2];
                }
            }
        }
    }
}

SpectralField analyze_torus(const GridField& g, const TorusGridSpec& spec, double lambda_max) {
    const SpectralModel& model = g.model();
    const int d = model.dim;
    const int n = spec.nodes_per_axis;
    if (2 * static_cast<int>(std::floor(lambda_max)) + 1 > n)
        throw BandwidthError("analyze: torus grid too coarse for lambda_max");
    SpectralField out(model);
    const auto modes = enumerate_modes(model, lambda_max);
    std::vector<Complex> axis(static_cast<size_t>(d) * n);
    const double norm = 1.0 / static_cast<double>(g.samples().size());
    for (const Mode& mode : modes) {
        for (int a = 0; a < d; ++a)
            for (int i = 0; i < n; ++i)
                axis[static_cast<size_t>(a) * n + i] =
                    std::polar(1.0, -mode.label()[a] * 2.0 * M_PI * i / n);
        Complex c = 0.0;
        size_t idx = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            const Complex p0 = axis[i0];
            if (d == 2) {
                for (int i1 = 0; i1 < n; ++i1)
                    c += g.samples()[idx++] * p0 * axis[static_cast<size_t>(n) + i1];
            } else {
                for (int i1 = 0; i1 < n; ++i1) {
                    const Complex p1 = p0 * axis[static_cast<size_t>(n) + i1];
                    for (int i2 = 0; i2 < n; ++i2)
                        c += g.samples()[idx++] * p1 * axis[static_cast<size_t>(2) * n + i2];
                }
            }
        }
        out.add(mode.key, c * norm);
    }
    return out;
}

void synthesize_sphere(const SpectralField& f, const SphereGridSpec& spec, GridField& out) {
    const int band = f.max_degree();
    if (band > kSphereDegreeCap)
        throw ResourceError("synthesize: field degree exceeds the sphere degree cap");
    if (spec.n_theta < band + 1 || spec.n_phi < 2 * band + 1)
        throw BandwidthError("synthesize: sphere grid too coarse for the field's degree");
    const auto rule = sphere::gauss_legendre(spec.n_theta);

    // Coefficients grouped by order m.
    std::unordered_map<int, std::vector<std::pair<int, Complex>>> by_m;
    for (const auto& [key, c] : f.coeffs())
        by_m[key.label[1]].push_back({key.label[0], c});

    auto& samples = out.samples();
    std::vector<double> pbar(static_cast<size_t>(band) + 1);
    std::vector<Complex> alpha_pos(spec.n_theta), alpha_neg(spec.n_theta);
    for (int m = 0; m <= band; ++m) {
        const auto pos = by_m.find(m);
        const auto neg = by_m.find(-m);
        if (pos == by_m.end() && neg == by_m.end()) continue;
        const double neg_phase = (m % 2 == 0) ? 1.0 : -1.0;
        for (int q = 0; q < spec.n_theta; ++q) {
            sphere::normalized_legendre(band, m, rule.nodes[q], pbar.data());
            Complex ap = 0.0, an = 0.0;
            if (pos != by_m.end())
                for (const auto& [l, c] : pos->second) ap += c * pbar[l - m];
            if (m > 0 && neg != by_m.end())
                for (const auto& [l, c] : neg->second) an += c * neg_phase * pbar[l - m];
            alpha_pos[q] = ap;
            alpha_neg[q] = an;
        }
        for (int j = 0; j < spec.n_phi; ++j) {
            const Complex e = std::polar(1.0, m * 2.0 * M_PI * j / spec.n_phi);
            for (int q = 0; q < spec.n_theta; ++q) {
                Complex add = alpha_pos[q] * e;
                if (m > 0) add += alpha_neg[q] * std::conj(e);
                samples[static_cast<size_t>(q) * spec.n_phi + j] += add;
            }
        }
    }
}

SpectralField analyze_sphere(const GridField& g, const SphereGridSpec& spec, double lambda_max) {
    const double l2 = lambda_max * lambda_max + 1e-9 + lambda_max * lambda_max * 1e-12;
    int band = static_cast<int>(std::floor((std::sqrt(4.0 * l2 + 1.0) - 1.0) / 2.0));
    while (static_cast<double>(band + 1) * (band + 2) <= l2) ++band;
    if (band > kSphereDegreeCap)
        throw ResourceError("analyze: requested degree exceeds the sphere degree cap");
    if (spec.n_theta < band + 1 || spec.n_phi < 2 * band + 1)
        throw BandwidthError("analyze: sphere grid too coarse for lambda_max");
    const auto rule = sphere::gauss_legendre(spec.n_theta);

    // Phi transform first: G_m(q) = (2pi/n_phi) sum_j g(q, j) exp(-i m phi_j).
    const int nm = 2 * band + 1;
    std::vector<Complex> gm(static_cast<size_t>(spec.n_theta) * nm);
    const double phi_w = 2.0 * M_PI / spec.n_phi;
    for (int q = 0; q < spec.n_theta; ++q) {
        const Complex* row = g.samples().data() + static_cast<size_t>(q) * spec.n_phi;
        for (int m = -band; m <= band; ++m) {
            Complex s = 0.0;
            for (int j = 0; j < spec.n_phi; ++j)
                s += row[j] * std::polar(1.0, -m * 2.0 * M_PI * j / spec.n_phi);
            gm[static_cast<size_t>(q) * nm + (m + band)] = s * phi_w;
        }
    }

    SpectralField out(g.model());
    std::vector<double> pbar(static_cast<size_t>(band) + 1);
    std::vector<Complex> acc_pos(static_cast<size_t>(band) + 1), acc_neg(static_cast<size_t>(band) + 1);
    for (int m = 0; m <= band; ++m) {
        std::fill(acc_pos.begin(), acc_pos.end(), Complex{});
        std::fill(acc_neg.begin(), acc_neg.end(), Complex{});
        const double neg_phase = (m % 2 == 0) ? 1.0 : -1.0;
        for (int q = 0; q < spec.n_theta; ++q) {
            sphere::normalized_legendre(band, m, rule.nodes[q], pbar.data());
            const Complex gp = gm[static_cast<size_t>(q) * nm + (m + band)];
            const Complex gn = gm[static_cast<size_t>(q) * nm + (-m + band)];
            for (int l = m; l <= band; ++l) {
                const double w = rule.weights[q] * pbar[l - m];
                acc_pos[l] += w * gp;
                if (m > 0) acc_neg[l] += w * neg_phase * gn;
            }
        }
        for (int l = m; l <= band; ++l) {
            out.add(make_mode(g.model(), ModeLabel::sphere(l, m)), acc_pos[l]);
            if (m > 0) out.add(make_mode(g.model(), ModeLabel::sphere(l, -m)), acc_neg[l]);
        }
    }
    return out;
}

double grid_lp(const GridField& g, double p) {
    double acc = 0.0;
    for (size_t i = 0; i < g.samples().size(); ++i)
        acc += g.weight(i) * std::pow(std::abs(g.samples()[i]), p);
    return std::pow(acc, 1.0 / p);
}

double grid_max_abs(const GridField& g) {
    double m = 0.0;
    for (const Complex& s : g.samples()) m = std::max(m, std::abs(s));
    return m;
}

bool is_even_integer(double p) {
    return p == std::floor(p) && static_cast<int64_t>(p) % 2 == 0;
}

} // namespace

void SpectralField::set(const ModeLabel& label, Complex a) {
    const ModeKey key = make_mode(model_, label);
    if (a == Complex{}) {
        coeffs_.erase(key);
    } else {
        coeffs_[key] = a;
    }
}

Complex SpectralField::coeff(const ModeLabel& label) const {
    return coeff(make_mode(model_, label));
}

Complex SpectralField::coeff(const ModeKey& key) const {
    const auto it = coeffs_.find(key);
    return it == coeffs_.end() ? Complex{} : it->second;
}

void SpectralField::prune(double abs_tol) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= abs_tol)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

double SpectralField::max_frequency() const {
    return coeffs_.empty() ? 0.0 : coeffs_.rbegin()->first.frequency();
}

int SpectralField::max_axis_band() const {
    int band = 0;
    for (const auto& [key, c] : coeffs_)
        for (int i = 0; i < model_.dim; ++i)
            band = std::max(band, std::abs(key.label[i]));
    return band;
}

int SpectralField::max_degree() const {
    if (!model_.is_sphere()) throw ModelMismatchError("max_degree: sphere fields only");
    int band = 0;
    for (const auto& [key, c] : coeffs_) band = std::max(band, static_cast<int>(key.label[0]));
    return band;
}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
    require_same_model(model_, rhs.model_, "operator+=");
    for (const auto& [key, c] : rhs.coeffs_) coeffs_[key] += c;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& rhs) {
    require_same_model(model_, rhs.model_, "operator-=");
    for (const auto& [key, c] : rhs.coeffs_) coeffs_[key] -= c;
    return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
    for (auto& [key, c] : coeffs_) c *= s;
    return *this;
}

SpectralField SpectralField::unit_mode(const SpectralModel& model, const ModeLabel& label) {
    SpectralField f(model);
    f.set(label, 1.0);
    return f;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
SpectralField operator*(SpectralField f, Complex s) { return f *= s; }

SpectralField conjugate(const SpectralField& f) {
    SpectralField out(f.model());
    for (const auto& [key, c] : f.coeffs()) {
        ModeLabel l = key.label;
        double phase = 1.0;
        if (f.model().is_sphere()) {
            // conj(Y_l^m) = (-1)^m Y_l^{-m}
            phase = (l[1] % 2 == 0) ? 1.0 : -1.0;
            l.c[1] = -l[1];
        } else {
            for (int i = 0; i < f.model().dim; ++i) l.c[i] = -l.c[i];
        }
        out.add(ModeKey{key.eigenvalue, l}, phase * std::conj(c));
    }
    return out;
}

GridSpec sufficient_grid(const SpectralModel& model, const SpectralField& f, int oversample) {
    if (model.is_sphere()) {
        const int band = f.max_degree();
        return SphereGridSpec{oversample * (band + 1), oversample * (2 * band + 1)};
    }
    return TorusGridSpec{oversample * (2 * f.max_axis_band() + 1)};
}

GridField::GridField(SpectralModel model, GridSpec spec) : model_(model), spec_(spec) {
    if (const auto* t = std::get_if<TorusGridSpec>(&spec_)) {
        samples_.assign(torus_grid_size(model_, *t), Complex{});
    } else {
        const auto& s = std::get<SphereGridSpec>(spec_);
        if (!model_.is_sphere()) throw ModelMismatchError("sphere grid on non-sphere model");
        if (s.n_theta < 1 || s.n_phi < 1) throw BandwidthError("sphere grid needs >= 1 node");
        samples_.assign(static_cast<size_t>(s.n_theta) * s.n_phi, Complex{});
        theta_weights_ = sphere::gauss_legendre(s.n_theta).weights;
    }
}

double GridField::weight(size_t i) const {
    if (std::holds_alternative<TorusGridSpec>(spec_))
        return 1.0 / static_cast<double>(samples_.size());
    const auto& s = std::get<SphereGridSpec>(spec_);
    return theta_weights_[i / s.n_phi] * (2.0 * M_PI / s.n_phi);
}

void GridField::multiply_pointwise(const GridField& rhs) {
    require_same_model(model_, rhs.model_, "multiply_pointwise");
    if (samples_.size() != rhs.samples_.size())
        throw BandwidthError("multiply_pointwise: grid shapes differ");
    for (size_t i = 0; i < samples_.size(); ++i) samples_[i] *= rhs.samples_[i];
}

GridField synthesize(const SpectralField& f, const GridSpec& spec) {
    GridField out(f.model(), spec);
    if (const auto* t = std::get_if<TorusGridSpec>(&spec)) {
        synthesize_torus(f, *t, out);
    } else {
        synthesize_sphere(f, std::get<SphereGridSpec>(spec), out);
    }
    return out;
}

SpectralField analyze(const GridField& g, double lambda_max) {
    if (lambda_max < 0) throw std::invalid_argument("analyze: lambda_max >= 0");
    if (const auto* t = std::get_if<TorusGridSpec>(&g.spec()))
        return analyze_torus(g, *t, lambda_max);
    return analyze_sphere(g, std::get<SphereGridSpec>(g.spec()), lambda_max);
}

SpectralField multiply(const SpectralField& u, const SpectralField& v, int64_t support_cap) {
    require_same_model(u.model(), v.model(), "multiply");
    if (u.model().is_sphere()) return multiply_sphere(u, v);
    return multiply_torus(u, v, support_cap);
}

double lp_norm(const SpectralField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1 required");
    if (f.empty()) return 0.0;
    if (p == 2.0) {
        double acc = 0.0;
        for (const auto& [key, c] : f.coeffs()) acc += std::norm(c);
        return std::sqrt(acc);
    }
    if (f.model().is_torus()) {
        if (p == 4.0) {
            // |u|^4 integrates to the squared L2 norm of u * conj(u); works in
            // coefficient space for every d.
            const SpectralField w = multiply(f, conjugate(f));
            double acc = 0.0;
            for (const auto& [key, c] : w.coeffs()) acc += std::norm(c);
            return std::pow(acc, 0.25);
        }
        if (f.model().dim > 3)
            throw ResourceError("lp_norm: only p in {2, 4} available for torus d > 3");
        const int band = f.max_axis_band();
        if (std::isinf(p)) {
            const GridField g = synthesize(f, TorusGridSpec{4 * (2 * band + 1)});
            return grid_max_abs(g); // lower bound for the true sup
        }
        const int n = is_even_integer(p) ? static_cast<int>(p) * band + 1 : 4 * (2 * band + 1);
        return grid_lp(synthesize(f, TorusGridSpec{n}), p);
    }
    const int band = f.max_degree();
    if (std::isinf(p)) {
        const GridField g = synthesize(f, SphereGridSpec{4 * (band + 1), 4 * (2 * band + 1)});
        return grid_max_abs(g);
    }
    SphereGridSpec spec;
    if (is_even_integer(p)) {
        const int degree = static_cast<int>(p) * band;
        spec = SphereGridSpec{std::max(band + 1, degree / 2 + 1), std::max(2 * band + 1, degree + 1)};
    } else {
        spec = SphereGridSpec{4 * (band + 1), 4 * (2 * band + 1)};
    }
    return grid_lp(synthesize(f, spec), p);
}

double sobolev_norm(const SpectralField& f, double sigma) {
    double acc = 0.0;
    for (const auto& [key, c] : f.coeffs())
        acc += std::pow(1.0 + static_cast<double>(key.eigenvalue), sigma) * std::norm(c);
    return std::sqrt(acc);
}

Complex inner(const SpectralField& f, const SpectralField& g) {
    require_same_model(f.model(), g.model(), "inner");
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    Complex acc = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            acc += ia->second * std::conj(ib->second);
            ++ia;
            ++ib;
        }
    }
    return acc;
}

} // namespace qlab
