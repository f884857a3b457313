#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ltci/rng.hpp"
#include "ltci/search_space.hpp"

using namespace ltci;

TEST_CASE("step sizes at the mmwave profile") {
    RadarParams p = fixtures::mmwave();
    StepSizes s1 = step_sizes(p, 1, {1.0});
    CHECK(s1.rm[0] == doctest::Approx(1.1355).epsilon(1e-4));
    CHECK(s1.dfm[0] == doctest::Approx(0.019933).epsilon(1e-4));
    CHECK(s1.dfm[0] == doctest::Approx(s1.rm[0] * p.fs / p.fc).epsilon(1e-12));
    // Coarse velocity step identity: c/(2 fs T) = (fc/fs)/M * Va.
    CHECK(s1.rm[0] == doctest::Approx((p.fc / p.fs) / p.M * p.Va()).epsilon(1e-12));
}

TEST_CASE("step sizes coincide when fs equals fc") {
    RadarParams p = RadarParams::create(400e6, 400e6, 200e6, 1000.0, 64, 64);
    StepSizes s = step_sizes(p, 2, {0.5, 0.5});
    CHECK(s.rm[0] == doctest::Approx(s.dfm[0]).epsilon(1e-14));
    CHECK(s.rm[1] == doctest::Approx(s.dfm[1]).epsilon(1e-14));
}

TEST_CASE("step sizes validate their inputs") {
    RadarParams p = fixtures::mmwave();
    CHECK_THROWS_AS(step_sizes(p, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(step_sizes(p, 2, {0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(step_sizes(p, 2, {1.5, -0.5}), std::invalid_argument);
}

TEST_CASE("single-scale velocity grid over +-50 m/s") {
    RadarParams p = fixtures::mmwave();
    SingleScaleSpace s =
        build_single_scale(p, 1, {{-50.0, 50.0}}, {1.0}, RangeRoi::full(p));
    CHECK(s.c[0].count == 5017);
    CHECK(s.c[0].value(0) == doctest::Approx(-50.0));

    SingleScaleSpace point =
        build_single_scale(p, 1, {{20.0, 20.0}}, {1.0}, RangeRoi::full(p));
    CHECK(point.c[0].count == 1);
}

TEST_CASE("single-scale acceleration grid over +-30 m/s^2") {
    RadarParams p = fixtures::mmwave();
    SingleScaleSpace s = build_single_scale(p, 2, {{-50.0, 50.0}, {-30.0, 30.0}}, {0.5, 0.5},
                                            RangeRoi::full(p));
    CHECK(s.c[1].step == doctest::Approx(0.037078).epsilon(1e-4));
    CHECK(s.c[1].count == 1619);
}

TEST_CASE("dual-scale space accepts the mmwave profile and rejects short bursts") {
    RadarParams p = fixtures::mmwave();
    CHECK((p.fc / p.fs) / p.M == doctest::Approx(0.11126).epsilon(1e-4));
    DualScaleSpace ds = build_dual_scale(p, 2, {{-50.0, 50.0}, {-30.0, 30.0}}, {0.5, 0.5},
                                         RangeRoi::full(p));
    CHECK(ds.kappa == doctest::Approx(0.992857).epsilon(1e-5));

    RadarParams small_m = RadarParams::create(28e9, 491.52e6, 400e6, 1905.0, 32, 2048);
    CHECK_THROWS_AS(build_dual_scale(small_m, 2, {{-50.0, 50.0}, {-30.0, 30.0}}, {0.5, 0.5},
                                     RangeRoi::full(small_m)),
                    ConditionViolated);
}

TEST_CASE("decomposition rounds to the coarse grid and quantizes the residual") {
    RadarParams p = fixtures::mmwave();
    DualScaleSpace ds = build_dual_scale(p, 1, {{-50.0, 50.0}}, {1.0}, RangeRoi::full(p));
    REQUIRE(ds.coarse[0].step == doctest::Approx(1.1355).epsilon(1e-4));

    DualScaleDecomposition d = decompose(MotionParams({0.0, 20.0}), ds);
    CHECK(d.coarse[0] == doctest::Approx(20.401).epsilon(1e-3));
    CHECK(20.0 - d.coarse[0] == doctest::Approx(-0.401).epsilon(1e-2));
    CHECK(std::abs(d.fine[0]) <= ds.coarse[0].step / 2 + 1e-12);
    CHECK(std::abs(20.0 - d.coarse[0] - d.fine[0]) <= ds.fine[0].step / 2 + 1e-9);

    // Exactly on a coarse point: zero residual, and the lower bound maps to itself.
    DualScaleDecomposition on = decompose(MotionParams({0.0, ds.coarse[0].value(30)}), ds);
    CHECK(on.fine[0] == doctest::Approx(0.0));
    DualScaleDecomposition lo = decompose(MotionParams({0.0, -50.0}), ds);
    CHECK(lo.coarse[0] == doctest::Approx(-50.0));

    CHECK_THROWS_AS(decompose(MotionParams({0.0, 75.0}), ds), std::invalid_argument);
}

TEST_CASE("recompose inverts the dual-scale split") {
    RadarParams p = fixtures::mmwave();
    DualScaleSpace ds = build_dual_scale(p, 2, {{-50.0, 50.0}, {-30.0, 30.0}}, {0.5, 0.5},
                                         RangeRoi::full(p));

    MotionParams zero_fine = recompose({10.0, 3.0}, {0.0, 0.0}, ds, 100);
    CHECK(zero_fine.c[1] == doctest::Approx(10.0));
    CHECK(zero_fine.c[2] == doctest::Approx(3.0));
    CHECK(zero_fine.c[0] == doctest::Approx(100 * p.delta_R()));

    MotionParams est = recompose({0.0, 5.0}, {0.0, -1.0306}, ds, 0);
    CHECK(est.c[2] == doctest::Approx(3.962).epsilon(1e-3));

    // Round trip within half a fine step over kappa.
    GaussianRng rng(3);
    for (int i = 0; i < 200; ++i) {
        double v = (rng.uniform01() - 0.5) * 99.0;
        double a = (rng.uniform01() - 0.5) * 59.0;
        DualScaleDecomposition d = decompose(MotionParams({0.0, v, a}), ds);
        MotionParams rec = recompose(d.coarse, {ds.kappa * d.fine[0], ds.kappa * d.fine[1]}, ds, 0);
        CHECK(std::abs(rec.c[1] - v) <= ds.fine[0].step / (2 * ds.kappa) + 1e-9);
        CHECK(std::abs(rec.c[2] - a) <= ds.fine[1].step / (2 * ds.kappa) + 1e-9);
    }
}

TEST_CASE("residual range walk stays under half a range cell") {
    RadarParams p = fixtures::small(64, 16, 16.0);
    DualScaleSpace ds =
        build_dual_scale(p, 2, {{-40.0, 40.0}, {-10.0, 10.0}}, {0.5, 0.5}, RangeRoi::full(p));
    GaussianRng rng(4);
    for (int i = 0; i < 300; ++i) {
        double v = (rng.uniform01() - 0.5) * 80.0;
        double a = (rng.uniform01() - 0.5) * 20.0;
        DualScaleDecomposition d = decompose(MotionParams({0.0, v, a}), ds);
        double walk = std::abs(v - d.coarse[0]) * p.T() + std::abs(a - d.coarse[1]) * p.T() * p.T();
        CHECK(walk <= p.delta_R() / 2 + 1e-9);
    }
}

TEST_CASE("fine grids cover one coarse step") {
    RadarParams p = fixtures::mmwave();
    DualScaleSpace ds = build_dual_scale(p, 2, {{-50.0, 50.0}, {-30.0, 30.0}}, {0.5, 0.5},
                                         RangeRoi::full(p));
    SingleScaleSpace ss = build_single_scale(p, 2, {{-50.0, 50.0}, {-30.0, 30.0}}, {0.5, 0.5},
                                             RangeRoi::full(p));
    for (int i = 0; i < 2; ++i) {
        double ratio = ds.coarse[i].step / ds.fine[i].step;
        CHECK(std::abs(ds.fine[i].count - (std::round(ratio) + 1)) <= 1);
        CHECK(static_cast<long long>(ds.coarse[i].count) * ds.fine[i].count >= ss.c[i].count);
        CHECK(ds.fine[i].value(0) == doctest::Approx(-ds.fine[i].back()));
    }
}

TEST_CASE("velocity split is exact and half-open") {
    RadarParams p = fixtures::mmwave();
    CHECK(p.Va() == doctest::Approx(10.2054).epsilon(1e-4));

    VelocitySplit s = split_velocity(20.0, p);
    CHECK(s.q == 2);
    CHECK(s.base == doctest::Approx(-0.4107).epsilon(1e-3));

    CHECK(split_velocity(0.0, p).q == 0);
    CHECK(split_velocity(0.0, p).base == doctest::Approx(0.0));

    VelocitySplit edge = split_velocity(p.Va() / 2, p);
    CHECK(edge.q == 1);
    CHECK(edge.base == doctest::Approx(-p.Va() / 2));

    GaussianRng rng(5);
    for (int i = 0; i < 500; ++i) {
        double c1 = (rng.uniform01() - 0.5) * 200.0;
        VelocitySplit sp = split_velocity(c1, p);
        CHECK(sp.base >= -p.Va() / 2 - 1e-12);
        CHECK(sp.base < p.Va() / 2);
        CHECK(sp.q * p.Va() + sp.base == doctest::Approx(c1).epsilon(1e-12));
    }
}

TEST_CASE("ambiguity grid covers the velocity bounds") {
    RadarParams p = fixtures::mmwave();
    AmbiguitySpace amb = build_ambiguity(p, {10.0, 30.0});
    CHECK(amb.q_min == 1);
    CHECK(amb.q_max == 3);
    CHECK(amb.count() == 3);
}
