#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "qlab/spectra.hpp"

using namespace qlab;

namespace {

// Straightforward box scan, the independent reference for all torus counting.
int64_t brute_count(int dims, int64_t emax, int64_t partial = 0) {
    if (partial > emax) return 0;
    if (dims == 0) return 1;
    int64_t total = 0;
    const auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(emax))) + 2;
    for (int64_t k = -r; k <= r; ++k)
        if (partial + k * k <= emax) total += brute_count(dims - 1, emax, partial + k * k);
    return total;
}

} // namespace

TEST_CASE("torus mode counting matches brute-force lattice enumeration") {
    const auto t2 = SpectralModel::torus(2);
    CHECK(weyl_count(t2, 10.0) == 317);
    CHECK(brute_count(2, 100) == 317);
    for (const int64_t e : {0, 1, 2, 5, 26, 100})
        CHECK(count_up_to_eigenvalue(t2, e) == brute_count(2, e));

    const auto t3 = SpectralModel::torus(3);
    for (const int64_t e : {0, 1, 3, 11, 49})
        CHECK(count_up_to_eigenvalue(t3, e) == brute_count(3, e));

    const auto t5 = SpectralModel::torus(5);
    CHECK(count_up_to_eigenvalue(t5, 9) == brute_count(5, 9));
}

TEST_CASE("sphere counting is the square law") {
    const auto s2 = SpectralModel::sphere2();
    CHECK(weyl_count(s2, 0.0) == 1);
    CHECK(weyl_count(s2, std::sqrt(2.0)) == 4); // l <= 1
    CHECK(weyl_count(s2, 3.0) == 9);            // l(l+1) <= 9 means l <= 2
    for (int64_t e = 0; e <= 50; ++e) {
        int64_t expect = 0;
        for (int64_t l = 0; l * (l + 1) <= e; ++l) expect += 2 * l + 1;
        CHECK(count_up_to_eigenvalue(s2, e) == expect);
    }
}

TEST_CASE("enumerate_modes is sorted with sequential ranks") {
    for (const auto& model : {SpectralModel::torus(3), SpectralModel::sphere2()}) {
        const auto modes = enumerate_modes(model, 6.0);
        CHECK(static_cast<int64_t>(modes.size()) == weyl_count(model, 6.0));
        for (size_t i = 0; i < modes.size(); ++i) {
            CHECK(modes[i].rank == static_cast<int64_t>(i));
            if (i > 0) CHECK(modes[i - 1].key < modes[i].key);
        }
    }
}

TEST_CASE("frequency_of_rank inverts the counting function") {
    for (const auto& model : {SpectralModel::torus(2), SpectralModel::sphere2()}) {
        const auto modes = enumerate_modes(model, 9.0);
        for (const Mode& m : modes)
            CHECK(frequency_of_rank(model, m.rank) == doctest::Approx(m.frequency()).epsilon(1e-14));
    }
    CHECK(frequency_of_rank(SpectralModel::sphere2(), 1) ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("frequency windows are half-open") {
    const auto t2 = SpectralModel::torus(2);
    const auto win = enumerate_window(t2, 5.0, 6.0);
    CHECK(!win.empty());
    for (const ModeKey& mk : win) {
        CHECK(mk.eigenvalue >= 25);
        CHECK(mk.eigenvalue < 36);
    }
    CHECK(static_cast<int64_t>(win.size()) == brute_count(2, 35) - brute_count(2, 24));

    // Includes modes exactly at the left edge, excludes the right edge; a
    // genuinely larger right endpoint picks the boundary level up again.
    bool has_25 = false, has_36 = false;
    for (const ModeKey& mk : win) {
        if (mk.eigenvalue == 25) has_25 = true;
        if (mk.eigenvalue == 36) has_36 = true;
    }
    CHECK(has_25);
    CHECK(!has_36);
    bool has_36_wide = false;
    for (const ModeKey& mk : enumerate_window(t2, 5.0, 6.0000001))
        if (mk.eigenvalue == 36) has_36_wide = true;
    CHECK(has_36_wide);
}

TEST_CASE("cone-restricted windows match a filtered box scan") {
    const auto t3 = SpectralModel::torus(3);
    const double cap = 0.6;
    const auto win = enumerate_window(t3, 4.0, 5.0, cap);
    std::vector<ModeKey> brute;
    for (int a = -5; a <= 5; ++a)
        for (int b = -5; b <= 5; ++b)
            for (int c = -5; c <= 5; ++c) {
                const int64_t e = a * a + b * b + c * c;
                if (e < 16 || e >= 25) continue;
                const double kn = std::sqrt(static_cast<double>(e));
                if (a < kn * std::cos(cap) - 1e-12) continue;
                brute.push_back(make_mode(t3, ModeLabel::torus({a, b, c})));
            }
    std::sort(brute.begin(), brute.end());
    REQUIRE(win.size() == brute.size());
    for (size_t i = 0; i < win.size(); ++i) CHECK(win[i] == brute[i]);
}

TEST_CASE("eigenvalues and labels") {
    CHECK(eigenvalue_of(SpectralModel::torus(2), ModeLabel::torus({3, 4})) == 25);
    CHECK(eigenvalue_of(SpectralModel::sphere2(), ModeLabel::sphere(5, -3)) == 30);
    CHECK_THROWS_AS(eigenvalue_of(SpectralModel::sphere2(), ModeLabel::sphere(2, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)eigenvalue_of(SpectralModel::torus(3), ModeLabel::torus({1, 2})),
                    std::invalid_argument);
}

TEST_CASE("model validation and volumes") {
    CHECK_THROWS_AS(SpectralModel::torus(1), std::invalid_argument);
    CHECK_THROWS_AS(SpectralModel::torus(7), std::invalid_argument);
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
    CHECK(unit_ball_volume(4) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-14));
}

TEST_CASE("mode cap is enforced") {
    CHECK_THROWS_AS(enumerate_modes(SpectralModel::torus(2), 100.0, 10), ResourceError);
}
