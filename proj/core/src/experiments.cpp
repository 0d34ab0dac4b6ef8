#include "qlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "qlab/bounds.hpp"
#include "qlab/project.hpp"

namespace qlab {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t bits_of(double v) { return std::bit_cast<uint64_t>(v); }

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    int threads = worker_threads();
    if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, static_cast<int>(n));
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

SpectralModel parse_model(const Config& cfg) {
    const std::string name = cfg.get_string("model");
    if (name == "s2") return SpectralModel::sphere2();
    if (name.size() == 2 && name[0] == 't' && name[1] >= '2' && name[1] <= '6')
        return SpectralModel::torus(name[1] - '0');
    throw ConfigError("config: model must be one of t2..t6, s2 (got '" + name + "')");
}

WeightScheme parse_weights(const Config& cfg) {
    const std::string w = cfg.get_string("weights", "uniform");
    if (w == "uniform") return WeightScheme::Uniform;
    if (w == "random") return WeightScheme::Random;
    throw ConfigError("config: weights must be uniform or random");
}

LogCorrection default_correction(int d) {
    return d == 3 ? LogCorrection::HalfLog : LogCorrection::None;
}

LogCorrection parse_correction(const Config& cfg, LogCorrection fallback) {
    const std::string c = cfg.get_string("log_correction", "");
    if (c.empty()) return fallback;
    if (c == "none") return LogCorrection::None;
    if (c == "half_log") return LogCorrection::HalfLog;
    if (c == "three_half_log") return LogCorrection::ThreeHalfLog;
    throw ConfigError("config: log_correction must be none, half_log or three_half_log");
}

double default_slope_max(int d) {
    if (d == 2) return 0.35;
    if (d == 3) return 0.65;
    return (d - 2) / 2.0 + 0.15;
}

std::vector<double> sweep_values(const Config& cfg, const char* key = "sweep") {
    const auto values = cfg.get_list(key);
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            throw ConfigError(std::string("config: ") + key + " must be strictly increasing");
    return values;
}

int64_t require_integer(double v, const char* what) {
    const auto i = static_cast<int64_t>(std::llround(v));
    if (static_cast<double>(i) != v)
        throw ConfigError(std::string("config: ") + what + " must be an integer");
    return i;
}

struct Csv {
    std::string body;

    explicit Csv(const std::string& header) { body = "# schema=1\n" + header + "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) body += ',';
            body += cells[i];
        }
        body += '\n';
    }
};

std::string fmt_int(int64_t v) { return std::to_string(v); }
std::string fmt_uint(uint64_t v) { return std::to_string(v); }

struct FamilySpec {
    std::string name = "cluster";
    double width = 1.0;
    double cap_coeff = 1.0;
    double cap_power = -0.5;
    WeightScheme weights = WeightScheme::Uniform;

    static FamilySpec parse(const Config& cfg, const std::string& fallback) {
        FamilySpec fam;
        fam.name = cfg.get_string("family", fallback);
        fam.width = cfg.get_real("width", 1.0);
        fam.cap_coeff = cfg.get_real("cap_width_coeff", 1.0);
        fam.cap_power = cfg.get_real("cap_width_power", -0.5);
        fam.weights = parse_weights(cfg);
        return fam;
    }

    Quasimode build(const SpectralModel& model, double freq, uint64_t seed) const {
        if (name == "cluster")
            return cluster_quasimode(model, freq, width, weights, seed);
        if (name == "cap") {
            const auto lam = require_integer(freq, "cap frequency");
            return lattice_cap(model, static_cast<int>(lam),
                               cap_coeff * std::pow(freq, cap_power));
        }
        if (name == "eigenfunction") {
            const auto lam = require_integer(freq, "eigenfunction frequency");
            if (model.is_sphere())
                return sphere_extremal(SphereExtremal::Zonal, static_cast<int>(lam));
            SpectralField f(model);
            ModeLabel label;
            label.n = static_cast<uint8_t>(model.dim);
            label.c[0] = static_cast<int32_t>(lam);
            f.set(label, 1.0);
            return make_quasimode(std::move(f), freq, QuasimodeFamily::Eigenfunction);
        }
        if (name == "sectoral" || name == "zonal") {
            const auto l = require_integer(freq, "sphere degree");
            return sphere_extremal(name == "sectoral" ? SphereExtremal::Sectoral
                                                      : SphereExtremal::Zonal,
                                   static_cast<int>(l));
        }
        throw ConfigError("config: unknown family '" + name + "'");
    }
};

// Holder audit ||uv||_2 <= ||u||_4 ||v||_4; a violation means a numerical
// defect in the pipeline, so the run aborts.
void audit_holder(const Quasimode& u, const Quasimode& v, double uv_l2) {
    if (u.field.model().is_sphere()) {
        const int deg = std::max(u.field.max_degree(), v.field.max_degree());
        if (4 * deg > kSphereDegreeCap) return; // L4 not computable at this degree
    }
    const double bound = lp_norm(u.field, 4.0) * lp_norm(v.field, 4.0);
    if (uv_l2 > bound * (1.0 + 1e-8))
        throw std::runtime_error("audit failure: ||uv||_2 exceeds the Holder bound (numerical defect)");
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

} // namespace

uint64_t mix_seed(uint64_t a, uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

int worker_threads() {
    const char* env = std::getenv("QLAB_THREADS");
    if (!env || !*env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 0) return 1;
    return static_cast<int>(v);
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ExperimentOutput run_bilinear_sweep(const Config& cfg) {
    const SpectralModel model = parse_model(cfg);
    const int d = model.dim;
    const FamilySpec family = FamilySpec::parse(cfg, "cluster");
    const auto sweep = sweep_values(cfg);
    const double ratio = cfg.get_real("ratio", 4.0);
    const uint64_t seed = cfg.get_seed("seed", 0);
    if (family.weights == WeightScheme::Random && !cfg.has("seed"))
        throw ConfigError("config: random weights require a seed");
    const std::string variant_name = cfg.get_string("variant", "lowdim");
    BilinearVariant variant = BilinearVariant::low_dim();
    if (variant_name == "tail") {
        if (d < 6) throw ConfigError("config: variant=tail requires d >= 6");
        variant = BilinearVariant::high_dim(cfg.get_real("tail_n", d / 2.0 + 1.0),
                                            cfg.get_real("tail_q", 4.0));
    } else if (variant_name != "lowdim") {
        throw ConfigError("config: variant must be lowdim or tail");
    }
    const double slope_max = cfg.get_real("slope_max", default_slope_max(d));
    const double spread_max = cfg.get_real("spread_max", 20.0);
    const LogCorrection correction = parse_correction(cfg, default_correction(d));
    cfg.check_all_consumed();

    struct Row {
        double mu, lambda, uv_l2, q_u, q_v, raw_ratio, lam_ratio;
        uint64_t seed_u, seed_v;
    };
    std::vector<Row> rows(sweep.size());
    parallel_for(sweep.size(), [&](size_t i) {
        const double mu = sweep[i];
        const double lambda = ratio * mu;
        const uint64_t su = mix_seed(seed, mix_seed(bits_of(mu), 1));
        const uint64_t sv = mix_seed(seed, mix_seed(bits_of(mu), 2));
        const Quasimode u = family.build(model, lambda, su);
        const Quasimode v = family.build(model, mu, sv);
        const SpectralField prod = multiply(u.field, v.field);
        const double uv = lp_norm(prod, 2.0);
        audit_holder(u, v, uv);
        rows[i] = Row{mu,
                      lambda,
                      uv,
                      u.q,
                      v.q,
                      uv / (u.q * v.q),
                      uv / rhs_bilinear(u, v, variant),
                      su,
                      sv};
    });

    Csv csv("d,family,mu,lambda,seed_u,seed_v,uv_l2,q_u,q_v,raw_ratio,lambda_ratio");
    std::vector<std::pair<double, double>> points;
    double spread_lo = INFINITY, spread_hi = 0.0;
    for (const Row& r : rows) {
        csv.row({fmt_int(d), family.name, format_real(r.mu), format_real(r.lambda),
                 fmt_uint(r.seed_u), fmt_uint(r.seed_v), format_real(r.uv_l2),
                 format_real(r.q_u), format_real(r.q_v), format_real(r.raw_ratio),
                 format_real(r.lam_ratio)});
        points.push_back({r.mu, r.raw_ratio});
        spread_lo = std::min(spread_lo, r.lam_ratio);
        spread_hi = std::max(spread_hi, r.lam_ratio);
    }
    const FitResult fit = fit_exponent(points, correction);
    const double spread = spread_hi / spread_lo;
    const bool pass = fit.slope <= slope_max && spread <= spread_max;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "bilinear-sweep model=%s family=%s slope=%.4f (max %.4f) spread=%.3f (max %.3f): %s",
                  model.name().c_str(), family.name.c_str(), fit.slope, slope_max, spread,
                  spread_max, verdict(pass).c_str());
    return ExperimentOutput{csv.body, fit, pass, line};
}

ExperimentOutput run_l4_growth(const Config& cfg) {
    const SpectralModel model = parse_model(cfg);
    const FamilySpec family = FamilySpec::parse(cfg, "sectoral");
    const auto sweep = sweep_values(cfg);
    const uint64_t seed = cfg.get_seed("seed", 0);
    const double default_max = family.name == "zonal" ? 0.05 : 0.18;
    const double slope_max = cfg.get_real("slope_max", default_max);
    const double slope_min =
        cfg.get_real("slope_min", family.name == "sectoral" ? 0.08 : -INFINITY);
    const LogCorrection correction = parse_correction(cfg, LogCorrection::None);
    cfg.check_all_consumed();

    struct Row {
        double x, lambda, l4, q, ratio;
    };
    std::vector<Row> rows(sweep.size());
    parallel_for(sweep.size(), [&](size_t i) {
        const double x = sweep[i];
        const uint64_t s = mix_seed(seed, bits_of(x));
        const Quasimode u = family.build(model, x, s);
        const double l4 = lp_norm(u.field, 4.0);
        rows[i] = Row{x, u.lambda, l4, u.q, l4 / u.q};
    });

    Csv csv("x,lambda,l4_norm,q,ratio");
    std::vector<std::pair<double, double>> points;
    for (const Row& r : rows) {
        csv.row({format_real(r.x), format_real(r.lambda), format_real(r.l4), format_real(r.q),
                 format_real(r.ratio)});
        points.push_back({r.lambda, r.ratio});
    }
    const FitResult fit = fit_exponent(points, correction);
    const bool pass = fit.slope <= slope_max && fit.slope >= slope_min;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "l4-growth model=%s family=%s slope=%.4f (range [%.4f, %.4f]): %s",
                  model.name().c_str(), family.name.c_str(), fit.slope, slope_min, slope_max,
                  verdict(pass).c_str());
    return ExperimentOutput{csv.body, fit, pass, line};
}

ExperimentOutput run_remainder_decay(const Config& cfg) {
    const SpectralModel model = parse_model(cfg);
    const int d = model.dim;
    const FamilySpec family = FamilySpec::parse(cfg, "cluster");
    const double lambda_u = cfg.get_real("lambda_u");
    const double lambda_v = cfg.get_real("lambda_v");
    const uint64_t seed = cfg.get_seed("seed", 0);
    const std::vector<double> eps_sweep = cfg.has("eps_sweep")
                                              ? cfg.get_list("eps_sweep")
                                              : std::vector<double>{0.1, 0.05, 0.025};
    for (size_t i = 1; i < eps_sweep.size(); ++i)
        if (eps_sweep[i] >= eps_sweep[i - 1])
            throw ConfigError("config: eps_sweep must be strictly decreasing");
    const std::string norm_name = cfg.get_string("tolerance_norm", "hminus1");
    if (norm_name != "hminus1" && norm_name != "l2")
        throw ConfigError("config: tolerance_norm must be hminus1 or l2");
    const RemainderNorm tol_norm =
        norm_name == "hminus1" ? RemainderNorm::HMinus1 : RemainderNorm::L2;
    const auto nu_points = cfg.get_int("nu_points", 64);
    cfg.check_all_consumed();

    const Quasimode u = family.build(model, lambda_u, mix_seed(seed, 1));
    const Quasimode v = family.build(model, lambda_v, mix_seed(seed, 2));
    const SpectralField h = multiply(u.field, v.field);
    const double h_l2 = lp_norm(h, 2.0);
    const double h_h1 = sobolev_norm(h, 1.0);

    // Eigenvalue levels present in h, with per-level coefficient mass, then a
    // backward pass turning masses into strict tails (mass strictly above the
    // level -- exactly ||R_nu h||^2 for nu at the end of the level).
    struct Level {
        int64_t eig;
        double tail_l2_sq = 0.0;
        double tail_hm1_sq = 0.0;
    };
    std::vector<Level> levels;
    for (const auto& [key, c] : h.coeffs()) {
        if (levels.empty() || levels.back().eig != key.eigenvalue)
            levels.push_back(Level{key.eigenvalue});
        const double w = std::norm(c);
        levels.back().tail_l2_sq += w;
        levels.back().tail_hm1_sq += w / (1.0 + static_cast<double>(key.eigenvalue));
    }
    double acc_l2 = 0.0, acc_hm1 = 0.0;
    for (size_t k = levels.size(); k-- > 0;) {
        const double m_l2 = levels[k].tail_l2_sq;
        const double m_hm1 = levels[k].tail_hm1_sq;
        levels[k].tail_l2_sq = acc_l2;
        levels[k].tail_hm1_sq = acc_hm1;
        acc_l2 += m_l2;
        acc_hm1 += m_hm1;
    }

    // Subsample the levels when there are many (the remainder is constant
    // between level boundaries, so this loses no information class).
    std::vector<size_t> chosen;
    const size_t total = levels.size();
    const auto want = static_cast<size_t>(std::max<int64_t>(nu_points, 2));
    if (total <= want) {
        for (size_t j = 0; j < total; ++j) chosen.push_back(j);
    } else {
        for (size_t i = 0; i < want; ++i)
            chosen.push_back(i * (total - 1) / (want - 1));
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    }

    Csv csv("phase,nu,lambda_next,rem_hminus1,rem_l2,bound_hminus1,bound_l2,eps,nu_star");
    int violations = 0;
    for (const size_t j : chosen) {
        const int64_t nu = count_up_to_eigenvalue(model, levels[j].eig) - 1;
        const double lambda_next = frequency_of_rank(model, nu + 1);
        const double rem_hm1 = std::sqrt(levels[j].tail_hm1_sq);
        const double rem_l2 = std::sqrt(levels[j].tail_l2_sq);
        const double bound_hm1 = h_l2 / std::sqrt(1.0 + lambda_next * lambda_next);
        const double bound_l2 = h_h1 / lambda_next;
        if (rem_hm1 > bound_hm1 * (1.0 + 1e-9)) ++violations;
        if (rem_l2 > bound_l2 * (1.0 + 1e-9)) ++violations;
        csv.row({"nu", fmt_int(nu), format_real(lambda_next), format_real(rem_hm1),
                 format_real(rem_l2), format_real(bound_hm1), format_real(bound_l2), "0", "0"});
    }

    bool monotone = true;
    std::vector<std::pair<double, double>> fit_points;
    int64_t prev_star = -1;
    for (const double eps : eps_sweep) {
        const int64_t star = min_rank_for_tolerance(h, eps, tol_norm);
        if (star < prev_star) monotone = false;
        prev_star = star;
        csv.row({"eps", "0", "0", "0", "0", "0", "0", format_real(eps), fmt_int(star)});
        fit_points.push_back({std::pow(eps, -static_cast<double>(d)),
                              static_cast<double>(std::max<int64_t>(star, 0)) + 1.0});
    }
    std::optional<FitResult> fit;
    if (fit_points.size() >= 3) fit = fit_exponent(fit_points);

    const bool pass = violations == 0 && monotone;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "remainder-decay model=%s violations=%d monotone=%s nu*(eps) slope=%s: %s",
                  model.name().c_str(), violations, monotone ? "yes" : "no",
                  fit ? format_real(fit->slope).c_str() : "n/a", verdict(pass).c_str());
    return ExperimentOutput{csv.body, fit, pass, line};
}

ExperimentOutput run_cluster_audit(const Config& cfg) {
    const SpectralModel model = parse_model(cfg);
    const int d = model.dim;
    const auto sweep = sweep_values(cfg);
    const double ratio = cfg.get_real("ratio", 4.0);
    const auto trials = cfg.get_int("trials", 32);
    if (trials < 1) throw ConfigError("config: trials >= 1");
    if (!cfg.has("seed")) throw ConfigError("config: cluster-audit requires a seed");
    const uint64_t seed = cfg.get_seed("seed", 0);
    const double slope_max = cfg.get_real("slope_max", default_slope_max(d));
    const LogCorrection correction = parse_correction(cfg, default_correction(d));
    cfg.check_all_consumed();

    struct Row {
        double k, j, max_prod, min_defect;
    };
    std::vector<Row> rows(sweep.size());
    parallel_for(sweep.size(), [&](size_t i) {
        const double k = sweep[i];
        const double j = ratio * k;
        double max_prod = 0.0;
        double min_defect = INFINITY;
        for (int64_t t = 0; t < trials; ++t) {
            const uint64_t st = mix_seed(seed, mix_seed(bits_of(k), static_cast<uint64_t>(t)));
            const Quasimode qu =
                cluster_quasimode(model, j, 1.0, WeightScheme::Random, mix_seed(st, 1));
            const Quasimode qv =
                cluster_quasimode(model, k, 1.0, WeightScheme::Random, mix_seed(st, 2));
            const SpectralField prod = multiply(qu.field, qv.field);
            const double norm = lp_norm(prod, 2.0);
            max_prod = std::max(max_prod, norm);

            // Decomposition audit ||uv||_2 <= ||v Lu||_2 + ||v Hu||_2.
            const auto [lo, hi] = smooth_split(qu.field, j, CutoffProfile{});
            const double split_sum = lp_norm(multiply(qv.field, lo), 2.0) +
                                     lp_norm(multiply(qv.field, hi), 2.0);
            const double defect = split_sum - norm;
            min_defect = std::min(min_defect, defect);
            if (defect < -1e-8)
                throw std::runtime_error(
                    "audit failure: triangle decomposition violated (numerical defect)");
        }
        rows[i] = Row{k, j, max_prod, min_defect};
    });

    Csv csv("d,k,j,trials,max_prod_l2,min_triangle_defect");
    std::vector<std::pair<double, double>> points;
    for (const Row& r : rows) {
        csv.row({fmt_int(d), format_real(r.k), format_real(r.j), fmt_int(trials),
                 format_real(r.max_prod), format_real(r.min_defect)});
        points.push_back({r.k, r.max_prod});
    }
    const FitResult fit = fit_exponent(points, correction);
    const bool pass = fit.slope <= slope_max;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "cluster-audit model=%s trials=%" PRId64 " slope=%.4f (max %.4f): %s",
                  model.name().c_str(), trials, fit.slope, slope_max, verdict(pass).c_str());
    return ExperimentOutput{csv.body, fit, pass, line};
}

ExperimentOutput run_weyl_audit(const Config& cfg) {
    const SpectralModel model = parse_model(cfg);
    const int d = model.dim;
    const auto sweep = sweep_values(cfg);
    const double tol = cfg.get_real("tol", 0.05);
    cfg.check_all_consumed();

    // Weyl constant: count(lambda) ~ const * lambda^d.
    const double weyl_const = model.is_sphere() ? 1.0 : unit_ball_volume(d);

    Csv csv("d,lambda,count,weyl_ratio");
    std::vector<std::pair<double, double>> points;
    double last_ratio = 0.0;
    for (const double lambda : sweep) {
        const int64_t count = weyl_count(model, lambda);
        const double ratio =
            static_cast<double>(count) / (weyl_const * std::pow(lambda, d));
        csv.row({fmt_int(d), format_real(lambda), fmt_int(count), format_real(ratio)});
        points.push_back({lambda, static_cast<double>(count)});
        last_ratio = ratio;
    }
    std::optional<FitResult> fit;
    if (points.size() >= 3) fit = fit_exponent(points);
    const bool pass = std::abs(last_ratio - 1.0) <= tol;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "weyl-audit model=%s ratio=%.5f (tol %.3f) count-slope=%s: %s",
                  model.name().c_str(), last_ratio, tol,
                  fit ? format_real(fit->slope).c_str() : "n/a", verdict(pass).c_str());
    return ExperimentOutput{csv.body, fit, pass, line};
}

ExperimentOutput run_split_audit(const Config& cfg) {
    const SpectralModel model = parse_model(cfg);
    const auto sweep = sweep_values(cfg); // split frequencies lambda
    const double band = cfg.get_real("band", 16.0);
    const auto trials = cfg.get_int("trials", 8);
    const uint64_t seed = cfg.get_seed("seed", 0);
    const double tol = cfg.get_real("tol", 1e-10);
    cfg.check_all_consumed();

    const auto modes = enumerate_modes(model, band);
    const CutoffProfile profile;

    struct Row {
        double lambda, recon, lowleak, window, block, eproj;
    };
    std::vector<Row> rows(sweep.size());
    parallel_for(sweep.size(), [&](size_t i) {
        const double lambda = sweep[i];
        Row r{lambda, 0.0, 0.0, 0.0, 0.0, 0.0};
        for (int64_t t = 0; t < trials; ++t) {
            const uint64_t st = mix_seed(seed, mix_seed(bits_of(lambda), static_cast<uint64_t>(t)));
            GaussianStream rng(st);
            SpectralField f(model);
            double norm2 = 0.0;
            for (const Mode& m : modes) {
                const Complex c = rng.complex_normal();
                norm2 += std::norm(c);
                f.add(m.key, c);
            }
            f *= 1.0 / std::sqrt(norm2);

            // L + H reconstruction, exact coefficientwise.
            const auto [lo, hi] = smooth_split(f, lambda, profile);
            SpectralField recon = lo;
            recon += hi;
            recon -= f;
            double recon_err = 0.0;
            for (const auto& [key, c] : recon.coeffs()) recon_err = std::max(recon_err, std::abs(c));
            r.recon = std::max(r.recon, recon_err);

            // High part has no frequencies below 2 lambda.
            const SpectralField leak = project_window(hi, 0.0, 2.0 * lambda);
            double leak_err = 0.0;
            for (const auto& [key, c] : leak.coeffs()) leak_err = std::max(leak_err, std::abs(c));
            r.lowleak = std::max(r.lowleak, leak_err);

            // Unit windows partition the band.
            SpectralField sum(model);
            for (int k = 0; k <= static_cast<int>(std::floor(band)) + 1; ++k)
                sum += project_window(f, k, k + 1.0);
            sum -= f;
            double window_err = 0.0;
            for (const auto& [key, c] : sum.coeffs()) window_err = std::max(window_err, std::abs(c));
            r.window = std::max(r.window, window_err);

            // Littlewood-Paley blocks sum to f minus its frequency-zero part.
            const int jmax = std::max(2, static_cast<int>(std::ceil(std::log2(band))) + 2);
            SpectralField blocks(model);
            for (int j = -jmax; j <= jmax; ++j) blocks += lp_block(f, j, profile);
            blocks -= f;
            double block_err = 0.0;
            for (const auto& [key, c] : blocks.coeffs()) {
                if (key.eigenvalue == 0) continue;
                block_err = std::max(block_err, std::abs(c));
            }
            r.block = std::max(r.block, block_err);

            // Rank projector: idempotence and orthogonality.
            const auto nu = static_cast<int64_t>(splitmix64(st) % modes.size());
            const auto [ef, rf] = project_rank(f, nu);
            const auto [eef, ref] = project_rank(ef, nu);
            SpectralField idem = eef;
            idem -= ef;
            double eproj_err = std::abs(inner(ef, rf));
            for (const auto& [key, c] : idem.coeffs()) eproj_err = std::max(eproj_err, std::abs(c));
            for (const auto& [key, c] : ref.coeffs()) eproj_err = std::max(eproj_err, std::abs(c));
            r.eproj = std::max(r.eproj, eproj_err);
        }
        rows[i] = r;
    });

    Csv csv("lambda,trials,recon_err,low_leak,window_err,lp_block_err,rank_proj_err");
    bool pass = true;
    double worst = 0.0;
    for (const Row& r : rows) {
        csv.row({format_real(r.lambda), fmt_int(trials), format_real(r.recon),
                 format_real(r.lowleak), format_real(r.window), format_real(r.block),
                 format_real(r.eproj)});
        const double m =
            std::max({r.recon, r.lowleak, r.window, r.block, r.eproj});
        worst = std::max(worst, m);
        if (m > tol) pass = false;
    }
    char line[256];
    std::snprintf(line, sizeof(line), "split-audit model=%s max_err=%.3e (tol %.1e): %s",
                  model.name().c_str(), worst, tol, verdict(pass).c_str());
    return ExperimentOutput{csv.body, std::nullopt, pass, line};
}

ExperimentOutput run_experiment(const std::string& kind, const Config& cfg) {
    if (kind == "bilinear-sweep") return run_bilinear_sweep(cfg);
    if (kind == "l4-growth") return run_l4_growth(cfg);
    if (kind == "remainder-decay") return run_remainder_decay(cfg);
    if (kind == "cluster-audit") return run_cluster_audit(cfg);
    if (kind == "weyl-audit") return run_weyl_audit(cfg);
    if (kind == "split-audit") return run_split_audit(cfg);
    throw ConfigError("unknown experiment kind: " + kind);
}

} // namespace qlab
