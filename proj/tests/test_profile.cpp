#include <doctest.h>

#include <cmath>

#include "sos/geometry.hpp"
#include "sos/profile.hpp"
#include "sos/surface_tension.hpp"

namespace {

// frozen reference: at beta = 2 the flat-direction curvature of the step
// cumulant generating function gives stiffness(0) = 1.3810978...
constexpr double kStiffness0Beta2 = 1.3810978;

} // namespace

TEST_CASE("profile endpoints are pinned with zero variance") {
    const auto m = sos::SurfaceTensionModel::directed_walk(2.0);
    const sos::ProfilePoint pa =
        sos::local_profile(-3.0, 1.0, 5.0, 10.0, 500.0, 10.0, 2.0, 1e5, m);
    CHECK(pa.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pa.sigma == doctest::Approx(0.0).epsilon(1e-12));
    const sos::ProfilePoint pb =
        sos::local_profile(-3.0, 1.0, 5.0, 10.0, 500.0, 500.0, 2.0, 1e5, m);
    CHECK(pb.y == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(pb.sigma == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("flat-chord midpoint matches the closed form with frozen stiffness") {
    const double beta = 2.0, L = 1e6, mu = -4.0, d = 1000.0;
    const auto m = sos::SurfaceTensionModel::directed_walk(beta);
    const sos::ProfilePoint mid =
        sos::local_profile(mu, 0.0, 0.0, 0.0, d, d / 2, beta, L, m);
    const double y_expected =
        mu * (d / 2) * (d / 2) / (2.0 * beta * L * kStiffness0Beta2);
    CHECK(mid.y == doctest::Approx(y_expected).epsilon(1e-5));
    const double var_expected = (d / 2) * (d / 2) / (beta * d * kStiffness0Beta2);
    CHECK(mid.sigma * mid.sigma == doctest::Approx(var_expected).epsilon(1e-5));
}

TEST_CASE("zero tilt gives the straight chord and -beta tau ell free energy") {
    const double beta = 2.0, L = 1e6;
    const auto m = sos::SurfaceTensionModel::directed_walk(beta);
    const sos::ProfilePoint p =
        sos::local_profile(0.0, 1.0, 3.0, 0.0, 100.0, 40.0, beta, L, m);
    CHECK(p.y == doctest::Approx(1.0 + 2.0 * 0.4).epsilon(1e-12));
    const double ell = 50.0, theta = 0.2;
    CHECK(sos::free_energy_G(0.0, ell, theta, beta, L, m) ==
          doctest::Approx(-beta * m.tau(theta) * ell).epsilon(1e-12));
    const sos::Polyline straight =
        sos::optimal_curve(0.0, {0, 0}, {100, 30}, beta, L, m, 10);
    for (const sos::Vec2& q : straight)
        CHECK(q.y == doctest::Approx(0.3 * q.x).epsilon(1e-10));
}

TEST_CASE("optimal curve midpoint bulge equals the profile prediction") {
    // flat chord: ell = d, so the two formulas must coincide exactly
    const double beta = 2.0, L = 1e6, mu = -5.0, d = 2000.0;
    const auto m = sos::SurfaceTensionModel::directed_walk(beta);
    const sos::Polyline curve = sos::optimal_curve(mu, {0, 0}, {d, 0}, beta, L, m, 64);
    const sos::Vec2 mid = curve[32];
    CHECK(mid.x == doctest::Approx(d / 2).epsilon(1e-9));
    const sos::ProfilePoint p = sos::local_profile(mu, 0, 0, 0, d, d / 2, beta, L, m);
    CHECK(mid.y == doctest::Approx(p.y).epsilon(1e-9));
}

TEST_CASE("variational identity: the optimal curve realizes G_mu") {
    // -beta integral of tau along the curve + (mu/L) * area below the chord
    // equals G_mu(ell, 0) up to the quartic remainder
    const double beta = 2.0, L = 1e6, mu = -2.0, ell = 1e4;
    const auto m = sos::SurfaceTensionModel::directed_walk(beta);
    const sos::Polyline curve =
        sos::optimal_curve(mu, {0, 0}, {ell, 0}, beta, L, m, 4096);
    double wulff_part = 0, area_part = 0;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const sos::Vec2 a = curve[i], b = curve[i + 1];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len = std::hypot(dx, dy);
        wulff_part += m.tau(std::atan2(dy, dx)) * len;
        area_part += 0.5 * (a.y + b.y) * dx; // signed area vs the chord y = 0
    }
    const double lhs = -beta * wulff_part + (mu / L) * area_part;
    const double rhs = sos::free_energy_G(mu, ell, 0.0, beta, L, m);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-3));
    // stronger: the tilt-induced excess over the straight chord matches the
    // mu^2 ell^3 term itself to a few percent
    const double excess_lhs = lhs + beta * m.tau(0.0) * ell;
    const double excess_rhs = rhs + beta * m.tau(0.0) * ell;
    CHECK(excess_rhs > 0.0);
    CHECK(excess_lhs == doctest::Approx(excess_rhs).epsilon(0.03));
}

TEST_CASE("perturbing the optimal bulge strictly lowers the tilted functional") {
    const double beta = 2.0, L = 1e6, mu = -2.0, ell = 1e4;
    const auto m = sos::SurfaceTensionModel::directed_walk(beta);
    auto value = [&](double amp_factor) {
        sos::Polyline curve = sos::optimal_curve(mu, {0, 0}, {ell, 0}, beta, L, m, 4096);
        for (sos::Vec2& p : curve) p.y *= amp_factor;
        double wulff_part = 0, area_part = 0;
        for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
            const sos::Vec2 a = curve[i], b = curve[i + 1];
            const double dx = b.x - a.x, dy = b.y - a.y;
            wulff_part += m.tau(std::atan2(dy, dx)) * std::hypot(dx, dy);
            area_part += 0.5 * (a.y + b.y) * dx;
        }
        return -beta * wulff_part + (mu / L) * area_part;
    };
    const double opt = value(1.0);
    CHECK(opt > value(0.9));
    CHECK(opt > value(1.1));
    CHECK(opt > value(0.0));
}

TEST_CASE("interior evaluation points are validated") {
    const auto m = sos::SurfaceTensionModel::directed_walk(2.0);
    CHECK_THROWS(sos::local_profile(-1.0, 0, 0, 0.0, 100.0, 0.01, 2.0, 1e5, m));
    CHECK_THROWS(sos::local_profile(-1.0, 0, 0, 0.0, 100.0, 120.0, 2.0, 1e5, m));
}
