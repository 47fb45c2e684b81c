#include <doctest.h>

#include <cmath>

#include "sos/params.hpp"

TEST_CASE("derived parameters match their closed forms") {
    const double beta = 2.0;
    const int L = 1000;
    const sos::ModelParams p = sos::derive_params(beta, L, 0.9, 0.05);
    const double x = std::log(static_cast<double>(L)) / (4.0 * beta);
    CHECK(p.H == static_cast<int>(std::floor(x)));
    CHECK(p.alpha == doctest::Approx(x - p.H).epsilon(1e-12));
    const double lambda_expected =
        std::exp(4.0 * beta * p.alpha) * 0.9 * (1.0 - std::exp(-4.0 * beta));
    CHECK(p.lambda == doctest::Approx(lambda_expected).epsilon(1e-12));
    CHECK(p.lambda_n(0) == doctest::Approx(p.lambda));
    CHECK(p.lambda_n(2) ==
          doctest::Approx(p.lambda * std::exp(8.0 * beta)).epsilon(1e-12));
}

TEST_CASE("H and alpha step at the e^{4 beta k} size thresholds") {
    const double beta = 0.5;
    // L just below and just above e^{4 beta * 2} = e^4
    const int below = 54, above = 55; // e^4 = 54.598
    CHECK(sos::derive_params(beta, below, 1.0).H == 1);
    CHECK(sos::derive_params(beta, above, 1.0).H == 2);
    CHECK(sos::derive_params(beta, below, 1.0).alpha > 0.9);
    CHECK(sos::derive_params(beta, above, 1.0).alpha < 0.1);
}

TEST_CASE("regime classification with a dead band") {
    sos::ModelParams p;
    p.lambda = 10.0;
    CHECK(p.classify(8.0, 0.0) == sos::Regime::Supercritical);
    CHECK(p.classify(12.0, 0.0) == sos::Regime::Subcritical);
    CHECK(p.classify(10.0 / 1.05, 0.10) == sos::Regime::Critical);
    CHECK(sos::to_string(p.classify(8.0)) == "supercritical");
    CHECK(sos::to_string(p.classify(12.0)) == "subcritical");
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(sos::derive_params(-1.0, 100, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sos::derive_params(2.0, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sos::derive_params(2.0, 100, -0.5), std::invalid_argument);
}
