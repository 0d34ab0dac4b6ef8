#include <cmath>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "qlab/experiments.hpp"

using namespace qlab;

namespace {

struct EnvGuard {
    std::string name;
    std::string old;
    bool had = false;

    EnvGuard(const char* n, const char* value) : name(n) {
        if (const char* v = std::getenv(n)) {
            had = true;
            old = v;
        }
        setenv(n, value, 1);
    }
    ~EnvGuard() {
        if (had)
            setenv(name.c_str(), old.c_str(), 1);
        else
            unsetenv(name.c_str());
    }
};

} // namespace

TEST_CASE("exponent fits recover power laws") {
    std::vector<std::pair<double, double>> pts;
    for (const double x : {2.0, 4.0, 8.0, 16.0, 32.0}) pts.push_back({x, 3.0 * x * x});
    const FitResult fit = fit_exponent(pts);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(fit.max_abs_residual < 1e-12);
    CHECK(fit.points_used == 5);

    pts.clear();
    for (const double x : {4.0, 8.0, 16.0, 32.0})
        pts.push_back({x, std::pow(x, 1.5) * std::sqrt(std::log(x))});
    CHECK(fit_exponent(pts, LogCorrection::HalfLog).slope ==
          doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(fit_exponent({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({{2.0, 1.0}, {2.0, 2.0}, {3.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent({{1.0, 1.0}, {2.0, -2.0}, {3.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("config parsing") {
    const Config cfg = Config::from_string(
        "# comment\n"
        "model = t2   # trailing comment\n"
        "sweep = 4, 8, 16\n"
        "[fit]\n"
        "slope_max = 0.35\n");
    CHECK(cfg.get_string("model") == "t2");
    CHECK(cfg.get_list("sweep") == std::vector<double>{4.0, 8.0, 16.0});
    CHECK(cfg.get_real("fit.slope_max") == 0.35);
    CHECK(cfg.get_int("trials", 32) == 32);
    CHECK_NOTHROW(cfg.check_all_consumed());

    CHECK_THROWS_AS(Config::from_string("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("just a line\n"), ConfigError);
    CHECK_THROWS_AS(cfg.get_real("missing"), ConfigError);

    const Config bad = Config::from_string("model = t2\nmispelled = 1\n");
    (void)bad.get_string("model");
    CHECK_THROWS_AS(bad.check_all_consumed(), ConfigError);
}

TEST_CASE("seed override keeps the full 64-bit range") {
    Config cfg = Config::from_string("seed = 1\n");
    cfg.override_value("seed", "18446744073709551615");
    CHECK(cfg.get_seed("seed", 0) == 18446744073709551615ULL);
}

TEST_CASE("real formatting round-trips doubles") {
    for (const double v : {1.0 / 3.0, M_PI, 1e-17, 123456.789, 0.0})
        CHECK(std::stod(format_real(v)) == v);
}

TEST_CASE("seed mixing is deterministic and asymmetric") {
    CHECK(mix_seed(1, 2) == mix_seed(1, 2));
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
    CHECK(mix_seed(0, 0) != 0);
}

TEST_CASE("counting experiment verifies the volume law") {
    const Config cfg = Config::from_string("model = t2\nsweep = 16, 32, 64, 128\n");
    const ExperimentOutput out = run_weyl_audit(cfg);
    CHECK(out.pass);
    CHECK(out.csv.rfind("# schema=1\n", 0) == 0);
    REQUIRE(out.fit.has_value());
    CHECK(out.fit->slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("projector experiment passes at tight tolerance") {
    const Config cfg = Config::from_string(
        "model = s2\nsweep = 2, 3\nband = 10\ntrials = 3\nseed = 5\n");
    const ExperimentOutput out = run_split_audit(cfg);
    CHECK(out.pass);
}

TEST_CASE("unknown config keys abort an experiment") {
    const Config cfg = Config::from_string("model = t2\nsweep = 16, 32\nbogus = 1\n");
    CHECK_THROWS_AS(run_weyl_audit(cfg), ConfigError);
    CHECK_THROWS_AS(run_experiment("no-such-kind", cfg), ConfigError);
}

TEST_CASE("experiments are deterministic and thread-count invariant") {
    const char* text =
        "model = t2\n"
        "family = cluster\n"
        "weights = random\n"
        "seed = 11\n"
        "sweep = 4, 8, 16\n"
        "ratio = 4\n";
    const ExperimentOutput a = run_bilinear_sweep(Config::from_string(text));
    const ExperimentOutput b = run_bilinear_sweep(Config::from_string(text));
    CHECK(a.csv == b.csv);
    {
        EnvGuard guard("QLAB_THREADS", "3");
        const ExperimentOutput c = run_bilinear_sweep(Config::from_string(text));
        CHECK(a.csv == c.csv);
    }
    {
        EnvGuard guard("QLAB_THREADS", "0"); // auto
        const ExperimentOutput d = run_bilinear_sweep(Config::from_string(text));
        CHECK(a.csv == d.csv);
    }
}

TEST_CASE("quartic-growth experiment on extremal harmonics") {
    const Config cfg = Config::from_string(
        "model = s2\nfamily = sectoral\nsweep = 4, 8, 16\nslope_min = 0.05\nslope_max = 0.25\n");
    const ExperimentOutput out = run_l4_growth(cfg);
    CHECK(out.pass);
    REQUIRE(out.fit.has_value());
    CHECK(out.fit->slope > 0.0);
}

TEST_CASE("remainder experiment honors both bounds") {
    const Config cfg = Config::from_string(
        "model = t2\nlambda_u = 8\nlambda_v = 3\nseed = 1\nweights = random\n"
        "eps_sweep = 0.5, 0.25, 0.125\n");
    const ExperimentOutput out = run_remainder_decay(cfg);
    CHECK(out.pass);
}
