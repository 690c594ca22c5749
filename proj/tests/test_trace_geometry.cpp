#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "regtrace/trace_geometry.hpp"

using namespace regtrace;

namespace {

const WheelSpec kWheel{0.1, 0.08, 14, 0.02};

// the three-branch trapezoid as published, valid for tan(theta) >= 1
double trapezoid_piecewise(double u, double theta) {
    const double t = std::tan(theta);
    if (u > 1.0 - 1.0 / t && u <= 1.0)
        return t * u - t;
    if (u >= -1.0 + 1.0 / t && u <= 1.0 - 1.0 / t)
        return -1.0;
    return -t * u - t;
}

double deg(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace

TEST_CASE("wave frequency from grouser count and slip") {
    CHECK(wave_frequency(kWheel, 0.0) == doctest::Approx(22.2817).epsilon(1e-4));
    CHECK(wave_frequency(kWheel, 0.5) == doctest::Approx(44.5634).epsilon(1e-4));
    CHECK(wave_frequency(kWheel, 0.5) == doctest::Approx(2.0 * wave_frequency(kWheel, 0.0)));
    CHECK_THROWS_AS(wave_frequency(kWheel, 1.0), SlipSingularity);
    CHECK_THROWS_AS(wave_frequency(kWheel, -0.1), InvalidSlip);
}

TEST_CASE("longitudinal wave") {
    const double n = wave_frequency(kWheel, 0.0);
    CHECK(longitudinal_profile(0.0, n) == 1.0);
    CHECK(longitudinal_profile(1.0 / n, n) == doctest::Approx(-1.0));
    // one grouser pitch downstream lands near a trough
    CHECK(longitudinal_profile(0.0449, n) == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("wave period is 2/n for random wheels") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> xi(-10.0, 10.0);
    std::uniform_real_distribution<double> radius(0.02, 0.5);
    std::uniform_real_distribution<double> slip(0.0, 0.95);
    std::uniform_int_distribution<int> grousers(1, 40);
    for (int i = 0; i < 100; ++i) {
        WheelSpec w{radius(rng), 0.08, grousers(rng), 0.02};
        const double n = wave_frequency(w, slip(rng));
        const double x = xi(rng);
        CHECK(std::abs(longitudinal_profile(x, n) - longitudinal_profile(x + 2.0 / n, n)) <
              1e-9);
    }
}

TEST_CASE("lateral trapezoid") {
    const double w = kWheel.width_m;
    CHECK(lateral_profile(0.0, w, deg(60)) == doctest::Approx(-1.0));
    CHECK(lateral_profile(w / 2, w, deg(60)) == 0.0);
    CHECK(lateral_profile(-w / 2, w, deg(60)) == 0.0);
    // side wall at theta = 45 deg, halfway out
    CHECK(lateral_profile(0.25 * w, w, deg(45)) == doctest::Approx(-0.5));
    // outside the footprint
    CHECK(lateral_profile(0.6 * w, w, deg(60)) == 0.0);

    SUBCASE("even, bounded, monotone on each half") {
        std::mt19937 rng(37);
        std::uniform_real_distribution<double> ys(0.0, w / 2);
        for (int i = 0; i < 200; ++i) {
            double y = ys(rng);
            double g = lateral_profile(y, w, deg(60));
            CHECK(lateral_profile(-y, w, deg(60)) == g);
            CHECK(g <= 0.0);
            CHECK(g >= -1.0);
            double g2 = lateral_profile(y * 0.9, w, deg(60));
            CHECK(g2 <= g + 1e-12);  // deeper toward the centerline
        }
    }
    SUBCASE("shallow angles degrade to a V profile") {
        CHECK(lateral_profile(0.0, w, deg(30)) == doctest::Approx(-std::tan(deg(30))));
    }
}

TEST_CASE("closed form matches the piecewise trapezoid for steep angles") {
    for (double theta : {deg(45), deg(60), deg(75)}) {
        for (int i = 0; i <= 1000; ++i) {
            const double u = -1.0 + 2.0 * double(i) / 1000.0;
            const double y = u * kWheel.width_m / 2;
            CHECK(std::abs(lateral_profile(y, kWheel.width_m, theta) -
                           trapezoid_piecewise(u, theta)) <= 1e-12);
        }
    }
}

TEST_CASE("deformation depth against measured trough and crest") {
    const DepthModel model = published_depth_model();
    const SoilParams soil{deg(60)};
    const double n = wave_frequency(kWheel, 0.0);

    // centerline trough: mu(3) - A(3)/2 = -6.783 mm, measured -6.5 mm
    const double trough = deformation_depth(1.0 / n, 0.0, 3.0, kWheel, soil, model, 0.0);
    CHECK(trough == doctest::Approx(-6.783e-3).epsilon(1e-3));
    CHECK(std::abs(trough * 1e3 - (-6.5)) < 0.75);

    // centerline crest: mu(3) + A(3)/2 = +1.395 mm, measured +1.5 mm
    const double crest = deformation_depth(0.0, 0.0, 3.0, kWheel, soil, model, 0.0);
    CHECK(crest == doctest::Approx(1.395e-3).epsilon(1e-3));
    CHECK(std::abs(crest * 1e3 - 1.5) < 0.75);

    // trench edge: exactly zero for any load
    CHECK(deformation_depth(0.01, kWheel.width_m / 2, 12.0, kWheel, soil, model, 0.0) == 0.0);
    CHECK(deformation_depth(0.01, -kWheel.width_m / 2, 3.0, kWheel, soil, model, 0.0) == 0.0);

    CHECK_THROWS_AS(deformation_depth(0.0, 0.0, 3.0, kWheel, soil, model, 1.0),
                    SlipSingularity);
}

TEST_CASE("depth magnitude bound holds on random samples") {
    const DepthModel model = published_depth_model();
    const SoilParams soil{deg(55)};
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> xis(-5.0, 5.0);
    std::uniform_real_distribution<double> ys(-0.06, 0.06);
    std::uniform_real_distribution<double> loads(0.0, 20.0);
    for (int i = 0; i < 10000; ++i) {
        const double fz = loads(rng);
        const double y = ys(rng);
        const double dz = deformation_depth(xis(rng), y, fz, kWheel, soil, model, 0.2);
        const double bound =
            (model.half_amplitude_mm(fz) + std::abs(model.mean_depth_mm(fz))) * 1e-3;
        CHECK(std::abs(dz) <= bound + 1e-15);
        if (std::abs(y) > kWheel.width_m / 2)
            CHECK(dz == 0.0);
    }
}

TEST_CASE("centerline extremes over one period are mu +- A/2") {
    const DepthModel model = published_depth_model();
    const SoilParams soil{deg(60)};
    const TraceWave wave = make_trace_wave(kWheel, 0.3);
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < 20000; ++i) {
        const double xi = wave.period_m() * double(i) / 20000.0;
        const double dz = deformation_depth(xi, 0.0, 8.6, kWheel, soil, model, wave) * 1e3;
        lo = std::min(lo, dz);
        hi = std::max(hi, dz);
    }
    const double mu = model.mean_depth_mm(8.6);
    const double ah = model.half_amplitude_mm(8.6);
    CHECK(lo == doctest::Approx(mu - ah).epsilon(1e-6));
    CHECK(hi == doctest::Approx(mu + ah).epsilon(1e-9));
}
