#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "sos/bridge.hpp"
#include "sos/profile.hpp"
#include "sos/rng.hpp"
#include "sos/surface_tension.hpp"

TEST_CASE("two-column bridge matches direct enumeration") {
    const double beta = 1.1, mu_over_L = -0.01;
    const int a = 1, b = -2, M = 30;
    const sos::TiltedBridgeModel bridge(beta, mu_over_L, 2, a, b, M);
    // h_1 is the single free column; enumerate its law directly
    std::map<int, double> w;
    double z = 0;
    for (int h = -M; h <= M; ++h) {
        const double e = std::exp(-beta * (std::abs(h - a) + std::abs(b - h)) +
                                  mu_over_L * h);
        w[h] = e;
        z += e;
    }
    for (int h = -6; h <= 6; ++h) {
        const double expected = w[h] / z;
        const double got = bridge.marginal(1)[static_cast<std::size_t>(h - bridge.h_min())];
        CHECK(got == doctest::Approx(expected).epsilon(1e-9));
    }
    CHECK(bridge.mean(0) == doctest::Approx(a).epsilon(1e-12));
    CHECK(bridge.mean(2) == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("untilted symmetric bridge has mirror-symmetric means") {
    const sos::TiltedBridgeModel bridge(1.0, 0.0, 16, 0, 0, 40);
    for (int i = 0; i <= 16; ++i) {
        CHECK(bridge.mean(i) == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(bridge.variance(i) ==
              doctest::Approx(bridge.variance(16 - i)).epsilon(1e-9));
    }
    CHECK(bridge.variance(8) > bridge.variance(2));
}

TEST_CASE("a negative area tilt pushes the whole path down") {
    const sos::TiltedBridgeModel flat(1.0, 0.0, 24, 0, 0, 60);
    const sos::TiltedBridgeModel tilted(1.0, -0.05, 24, 0, 0, 60);
    for (int i = 4; i <= 20; ++i) CHECK(tilted.mean(i) < flat.mean(i) + 1e-12);
    CHECK(tilted.mean(12) < -0.1);
}

TEST_CASE("window doubling brings the boundary mass below threshold") {
    const sos::TiltedBridgeModel bridge = sos::build_bridge(0.8, -0.001, 64, 0, 0, 4);
    CHECK(bridge.boundary_mass() < 1e-10);
    CHECK(bridge.h_max() > 4);
}

TEST_CASE("the floored bridge never goes below zero") {
    const sos::TiltedBridgeModel bridge =
        sos::build_bridge(1.0, -0.01, 32, 0, 0, 16, /*floor_at_zero=*/true);
    CHECK(bridge.h_min() == 0);
    sos::SequentialRng rng(9, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::vector<int> path = bridge.sample_path(rng);
        REQUIRE(path.size() == 33);
        CHECK(path.front() == 0);
        CHECK(path.back() == 0);
        for (int h : path) CHECK(h >= 0);
    }
}

TEST_CASE("sampled marginals agree with the exact ones") {
    const sos::TiltedBridgeModel bridge = sos::build_bridge(1.2, -0.02, 24, 0, 0, 24);
    const int n = 20000, col = 12;
    std::map<int, long> counts;
    sos::SequentialRng rng(31, 0);
    for (int rep = 0; rep < n; ++rep) ++counts[bridge.sample_path(rng)[col]];
    double tv = 0;
    for (int h = bridge.h_min(); h <= bridge.h_max(); ++h) {
        const double emp = counts.count(h) ? static_cast<double>(counts[h]) / n : 0.0;
        tv += std::abs(emp - bridge.marginal(col)[static_cast<std::size_t>(h - bridge.h_min())]);
    }
    CHECK(tv / 2.0 < 0.03);
}

TEST_CASE("midpoint variance approaches the continuum profile formula") {
    const double beta = 2.0;
    const auto m = sos::SurfaceTensionModel::directed_walk(beta);
    const int d = 512;
    const sos::TiltedBridgeModel bridge = sos::build_bridge(beta, 0.0, d, 0, 0, 64);
    const sos::ProfilePoint p =
        sos::local_profile(0.0, 0, 0, 0, d, d / 2.0, beta, 1e6, m);
    const double predicted = p.sigma * p.sigma;
    CHECK(bridge.variance(d / 2) ==
          doctest::Approx(predicted).epsilon(0.10));
}

TEST_CASE("sup-fluctuation fit recovers a planted exponent regime") {
    // cheap smoke version of the scaling analysis: small sizes, few paths;
    // just require a finite slope between the trivial bounds
    const std::vector<int> sizes{64, 128, 256};
    const sos::ScalingFit fit = sos::sup_fluctuation_scaling(1.0, -2.0, sizes, 60, 17);
    REQUIRE(fit.sizes.size() == 3);
    CHECK(fit.slope > 0.0);
    CHECK(fit.slope < 1.0);
    for (double s : fit.sup_mean) CHECK(s > 0.0);
    // determinism
    const sos::ScalingFit again = sos::sup_fluctuation_scaling(1.0, -2.0, sizes, 60, 17);
    CHECK(again.slope == doctest::Approx(fit.slope).epsilon(1e-12));
}
