#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "fractalfilter/savgol.hpp"
#include "fractalfilter/signal.hpp"
#include "test_util.hpp"

using namespace fractalfilter;
using testutil::max_abs;

TEST_CASE("savgol_coeffs: classic quadratic window of 5") {
    // oracle: least-squares normal equations for a quadratic on offsets -2..2
    // give (17/35, 12/35, -3/35) for the center/first/second weights
    const auto w = savgol_coeffs(SavGolSpec{5, 2});
    REQUIRE(w.size() == 5);
    CHECK(w[0] == doctest::Approx(-3.0 / 35.0).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(12.0 / 35.0).epsilon(1e-12));
    CHECK(w[2] == doctest::Approx(17.0 / 35.0).epsilon(1e-12));
    CHECK(w[3] == doctest::Approx(12.0 / 35.0).epsilon(1e-12));
    CHECK(w[4] == doctest::Approx(-3.0 / 35.0).epsilon(1e-12));
}

TEST_CASE("savgol_coeffs: window 3 order 2 is exact interpolation") {
    const auto w = savgol_coeffs(SavGolSpec{3, 2});
    CHECK(std::abs(w[0]) < 1e-14);
    CHECK(w[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(w[2]) < 1e-14);
}

TEST_CASE("savgol_coeffs: weights sum to one and are symmetric") {
    for (const SavGolSpec spec : {SavGolSpec{5, 2}, SavGolSpec{7, 4}, SavGolSpec{11, 3},
                                  SavGolSpec{21, 5}, SavGolSpec{9, 0}}) {
        const auto w = savgol_coeffs(spec);
        double sum = 0.0;
        for (double v : w) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == w[w.size() - 1 - i]);
    }
}

TEST_CASE("savgol_coeffs rejects invalid specs") {
    CHECK_THROWS_AS(savgol_coeffs(SavGolSpec{4, 2}), std::invalid_argument);   // even window
    CHECK_THROWS_AS(savgol_coeffs(SavGolSpec{5, 5}), std::invalid_argument);   // order >= window
    CHECK_THROWS_AS(savgol_coeffs(SavGolSpec{1, 0}), std::invalid_argument);   // window < 3
}

TEST_CASE("filter_savgol reproduces polynomials up to the fitted order") {
    Signal u;
    u.dx = 0.1;
    u.samples.resize(101);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u.x_at(i);
        u.samples[i] = 0.3 * x * x * x - x * x + 2.0 * x - 5.0;
    }
    const SavGolSpec spec{11, 3};
    const Signal out = filter_savgol(u, spec);
    for (std::size_t i = 5; i + 5 < u.size(); ++i)
        CHECK(out.samples[i] == doctest::Approx(u.samples[i]).epsilon(1e-10));
}

TEST_CASE("filter_savgol keeps constants fixed everywhere") {
    Signal u;
    u.dx = 1.0;
    u.samples.assign(40, 4.2);
    const Signal out = filter_savgol(u, SavGolSpec{11, 3});
    for (double v : out.samples) CHECK(v == doctest::Approx(4.2).epsilon(1e-14));
}

TEST_CASE("filter_savgol rejects signals shorter than the window") {
    Signal u;
    u.dx = 1.0;
    u.samples.assign(5, 1.0);
    CHECK_THROWS_AS(filter_savgol(u, SavGolSpec{11, 3}), std::invalid_argument);
}

TEST_CASE("filter_savgol reduces plateau noise variance on the noisy step") {
    const Signal clean = gen_step(1000);
    const Signal noisy = add_noise(clean, NoiseSpec::with_sigma(0.4, 21));
    const Signal out = filter_savgol(noisy, SavGolSpec{11, 3});

    // variance over the left plateau interior, away from the jump
    auto plateau_var = [&](const Signal& s) {
        double m = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 20; i < 450; ++i, ++count) m += s.samples[i];
        m /= static_cast<double>(count);
        double v = 0.0;
        for (std::size_t i = 20; i < 450; ++i) v += (s.samples[i] - m) * (s.samples[i] - m);
        return v / static_cast<double>(count);
    };
    // oracle: white-noise variance shrinks by sum(w^2) < 1
    const auto w = savgol_coeffs(SavGolSpec{11, 3});
    double w2 = 0.0;
    for (double v : w) w2 += v * v;
    CHECK(w2 < 1.0);
    CHECK(plateau_var(out) < plateau_var(noisy));
    CHECK(plateau_var(out) < 2.0 * w2 * 0.16);  // near the predicted reduction
}

TEST_CASE("savgol retains a clean pulse peak better than a moving average") {
    Signal u;
    u.dx = 1.0;
    u.samples.resize(101);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double z = (static_cast<double>(i) - 50.0) / 8.0;  // pulse wider than the window
        u.samples[i] = std::exp(-0.5 * z * z);
    }
    const SavGolSpec spec{11, 3};
    const Signal sg = filter_savgol(u, spec);

    Signal ma = u;
    for (std::size_t j = 0; j < u.size(); ++j) {
        double s = 0.0;
        for (long k = -5; k <= 5; ++k) {
            long idx = static_cast<long>(j) + k;
            idx = std::max(0l, std::min(idx, static_cast<long>(u.size()) - 1));
            s += u.samples[idx];
        }
        ma.samples[j] = s / 11.0;
    }
    const double peak = max_abs(u.samples);
    CHECK(max_abs(sg.samples) / peak >= max_abs(ma.samples) / peak);
    CHECK(max_abs(sg.samples) / peak > 0.99);
}
