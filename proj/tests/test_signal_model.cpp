#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ltci/signal_model.hpp"
#include "oracles.hpp"

using namespace ltci;

namespace {

int column_argmax(const RangePulseCube& cube, int m) {
    int best = 0;
    double best_mag = -1;
    for (int n = 0; n < cube.params.n0(); ++n) {
        double v = std::abs(cube.at(n, m));
        if (v > best_mag) {
            best_mag = v;
            best = n;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("asinc limits and zeros") {
    RadarParams p = fixtures::mmwave();
    CHECK(asinc(0.0, p) == doctest::Approx(1.0));
    // First null of the compression envelope.
    CHECK(std::abs(asinc(1.0 / p.Br, p)) < 1e-12);
}

TEST_CASE("asinc approaches sinc for a fine frequency grid") {
    // K_valid = 1024 occupied bins out of 1024.
    RadarParams p = RadarParams::create(10e9, 400e6, 400e6, 1000.0, 4, 1024);
    REQUIRE(p.K_valid == 1024);
    double worst = 0;
    for (int i = -1000; i <= 1000; ++i) {
        double tau = 0.1 / p.Br * (i / 1000.0);
        double s = tau == 0.0 ? 1.0 : std::sin(kPi * p.Br * tau) / (kPi * p.Br * tau);
        worst = std::max(worst, std::abs(asinc(tau, p) - s));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("asinc grating-lobe structure repeats every 1/delta_f") {
    RadarParams p = fixtures::mmwave();  // K_valid = 1666, even
    for (int i = 0; i < 50; ++i) {
        double tau = (i - 25) * 0.37 / p.Br;
        double a = asinc(tau, p);
        double b = asinc(tau + 1.0 / p.delta_f, p);
        // |asinc| is 1/delta_f periodic; for even K_valid the sign flips
        // each period (numerator even-shift, denominator odd-shift).
        CHECK(std::abs(std::abs(a) - std::abs(b)) < 1e-12);
        CHECK(std::abs(a + b) < 1e-12);
    }
}

TEST_CASE("slant range evaluates the motion polynomial") {
    CHECK(MotionParams({100.0, 10.0, 2.0}).slant_range(0.5) == doctest::Approx(105.5));
    CHECK(MotionParams({42.5, -3.0, 0.7}).slant_range(0.0) == doctest::Approx(42.5));
    RadarParams p = fixtures::mmwave();
    MotionParams target1({538.52, 20.0, 5.07});
    CHECK(target1.slant_range(p.T()) == doctest::Approx(544.26).epsilon(1e-4));
}

TEST_CASE("stationary target gives identical columns") {
    RadarParams p = fixtures::small(32, 8, 4.0);
    FreqPulseCube cube = synthesize_cube(p, {{cplx(1, 0), MotionParams({30.0})}});
    for (int m = 1; m < p.M; ++m)
        for (int k = 0; k < p.K; ++k)
            CHECK(std::abs(cube.at(k, m) - cube.at(k, 0)) < 1e-12);
}

TEST_CASE("blind velocity leaves the carrier phase constant across pulses") {
    RadarParams p = fixtures::small(32, 16, 4.0);
    FreqPulseCube cube = synthesize_cube(p, {{cplx(1, 0), MotionParams({0.0, p.Va()})}});
    // Row at f_k = 0 sees only the carrier-induced phase.
    for (int m = 1; m < p.M; ++m)
        CHECK(std::abs(cube.at(0, m) - cube.at(0, 0)) < 1e-9);
}

TEST_CASE("range migration is visible at full scale before correction") {
    RadarParams p = fixtures::mmwave();
    FreqPulseCube cube = synthesize_cube(p, {{cplx(1, 0), MotionParams({538.52, 20.0, 5.07})}});
    RangePulseCube rp = range_ifft(cube);
    int first = column_argmax(rp, 0);
    int last = column_argmax(rp, p.M - 1);
    CHECK(std::abs(last - first) > 1);
}

TEST_CASE("add_noise is deterministic and exact at sigma2 = 0") {
    RadarParams p = fixtures::small(32, 8, 4.0);
    FreqPulseCube cube = synthesize_cube(p, {{cplx(1, 0), MotionParams({30.0, 3.0})}});
    FreqPulseCube same = add_noise(cube, 0.0, 99);
    CHECK(same.data == cube.data);

    FreqPulseCube a = add_noise(cube, 1.0, 7);
    FreqPulseCube b = add_noise(cube, 1.0, 7);
    FreqPulseCube c = add_noise(cube, 1.0, 8);
    CHECK(a.data == b.data);
    CHECK(a.data != c.data);
}

TEST_CASE("noise sample statistics at half a million samples") {
    RadarParams p = RadarParams::create(28e9, 491.52e6, 400e6, 1905.0, 512, 1024);
    FreqPulseCube zero(p);
    FreqPulseCube noisy = add_noise(zero, 1.0, 4242);
    std::size_t count = noisy.data.size();
    REQUIRE(count == 1024u * 512u);
    cplx mean(0, 0);
    double power = 0;
    for (const cplx& v : noisy.data) {
        mean += v;
        power += std::norm(v);
    }
    mean /= static_cast<double>(count);
    power /= static_cast<double>(count);
    CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(count)));
    CHECK(power == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("range ifft of the zero cube is zero") {
    RadarParams p = fixtures::small(16, 4, 4.0);
    RangePulseCube rp = range_ifft(FreqPulseCube(p));
    for (const cplx& v : rp.data) CHECK(v == cplx(0, 0));
}

TEST_CASE("on-grid point target compresses to K_valid at the right bin") {
    RadarParams p = fixtures::small(64, 4, 4.0);
    int bin = 17;
    double c0 = bin * p.delta_R();
    FreqPulseCube cube = synthesize_cube(p, {{cplx(0.8, 0.3), MotionParams({c0})}});
    RangePulseCube rp = range_ifft(cube);
    double a1 = std::abs(cplx(0.8, 0.3));
    for (int m = 0; m < p.M; ++m) {
        CHECK(column_argmax(rp, m) == bin);
        CHECK(std::abs(rp.at(bin, m)) == doctest::Approx(p.K_valid * a1).epsilon(1e-12));
    }
}

TEST_CASE("half-bin offset scales the peak by the compression envelope") {
    RadarParams p = fixtures::small(64, 2, 4.0);
    int bin = 20;
    double c0 = (bin + 0.5) * p.delta_R();
    FreqPulseCube cube = synthesize_cube(p, {{cplx(1, 0), MotionParams({c0})}});
    RangePulseCube rp = range_ifft(cube);
    double expected = p.K_valid * std::abs(asinc(0.5 * p.Ts(), p));
    CHECK(std::abs(rp.at(bin, 0)) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::abs(rp.at(bin + 1, 0)) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("unnormalized transform pair: Parseval and round trip") {
    RadarParams p = fixtures::small(64, 8, 4.0);
    FreqPulseCube cube = oracle::random_cube(p, 5);
    RangePulseCube rp = range_ifft(cube);
    for (int m = 0; m < p.M; ++m) {
        double ef = 0, er = 0;
        for (int k = 0; k < p.K; ++k) ef += std::norm(cube.at(k, m));
        for (int n = 0; n < p.n0(); ++n) er += std::norm(rp.at(n, m));
        CHECK(er == doctest::Approx(p.K * ef).epsilon(1e-10));
    }
    FreqPulseCube back = range_fft(rp);
    for (std::size_t i = 0; i < back.data.size(); ++i)
        CHECK(std::abs(back.data[i] / static_cast<double>(p.K) - cube.data[i]) <
              1e-10 * (1.0 + std::abs(cube.data[i])));
}

TEST_CASE("multi-target synthesis superposes bit-exactly") {
    RadarParams p = fixtures::small(32, 8, 4.0);
    Target t1{cplx(1, 0), MotionParams({20.0, 3.0})};
    Target t2{cplx(0.5, -0.2), MotionParams({35.0, -2.0})};
    FreqPulseCube both = synthesize_cube(p, {t1, t2});
    FreqPulseCube a = synthesize_cube(p, {t1});
    FreqPulseCube b = synthesize_cube(p, {t2});
    for (std::size_t i = 0; i < both.data.size(); ++i)
        CHECK(both.data[i] == a.data[i] + b.data[i]);
}

TEST_CASE("noise variance estimate from the guard band and from the median") {
    RadarParams guarded = fixtures::small(64, 32, 4.0, 0.5);  // half the band is guard
    FreqPulseCube cube = synthesize_cube(guarded, {{cplx(3, 0), MotionParams({20.0, 4.0})}});
    FreqPulseCube noisy = add_noise(cube, 2.5, 77);
    CHECK(estimate_noise_variance(noisy) == doctest::Approx(2.5).epsilon(0.1));

    RadarParams full = RadarParams::create(4e8, 1e8, 1e8, 2000.0, 32, 64);
    REQUIRE(full.K_valid == full.K);
    FreqPulseCube fully = add_noise(FreqPulseCube(full), 0.8, 78);
    CHECK(estimate_noise_variance(fully) == doctest::Approx(0.8).epsilon(0.15));
}
