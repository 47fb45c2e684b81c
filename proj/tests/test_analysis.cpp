#include <doctest.h>

#include <cmath>
#include <vector>

#include "sos/analysis.hpp"
#include "sos/contour.hpp"
#include "sos/geometry.hpp"
#include "sos/height_field.hpp"
#include "sos/params.hpp"

namespace {

sos::Polyline square(double lo, double hi) {
    return {{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}};
}

} // namespace

TEST_CASE("hausdorff distance: metric basics and a known value") {
    const sos::Polyline outer = square(0.0, 1.0);
    const sos::Polyline inner = square(0.1, 0.9);
    CHECK(sos::hausdorff_distance(outer, outer) == doctest::Approx(0.0).epsilon(1e-9));
    const double d1 = sos::hausdorff_distance(outer, inner);
    const double d2 = sos::hausdorff_distance(inner, outer);
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-9));
    // corner of the outer square to the inner square boundary: 0.1 sqrt(2)
    CHECK(d1 == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-3));
    // triangle inequality through an intermediate square
    const sos::Polyline midq = square(0.05, 0.95);
    CHECK(sos::hausdorff_distance(outer, inner) <=
          sos::hausdorff_distance(outer, midq) +
              sos::hausdorff_distance(midq, inner) + 1e-9);
}

TEST_CASE("hausdorff distance of translated shapes equals the shift") {
    sos::Polyline a = square(0.0, 1.0), b = square(0.0, 1.0);
    for (sos::Vec2& p : b) p.x += 0.07;
    CHECK(sos::hausdorff_distance(a, b) == doctest::Approx(0.07).epsilon(1e-3));
}

TEST_CASE("exponent regression recovers planted power laws") {
    std::vector<std::pair<double, double>> xy;
    for (double x : {64.0, 128.0, 256.0, 512.0, 1024.0})
        xy.emplace_back(x, 3.7 * std::pow(x, 1.0 / 3.0));
    const sos::RegressionFit fit = sos::exponent_regression(xy);
    CHECK(fit.slope == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.7).epsilon(1e-9));
    CHECK(fit.stderr_slope == doctest::Approx(0.0).epsilon(1e-8));

    // with multiplicative noise the slope is still close and stderr positive
    std::vector<std::pair<double, double>> noisy;
    double sign = 1.0;
    for (double x : {32.0, 64.0, 128.0, 256.0, 512.0, 1024.0}) {
        noisy.emplace_back(x, 2.0 * std::pow(x, 0.5) * (1.0 + sign * 0.03));
        sign = -sign;
    }
    const sos::RegressionFit nf = sos::exponent_regression(noisy);
    CHECK(nf.slope == doctest::Approx(0.5).epsilon(0.05));
    CHECK(nf.stderr_slope > 0.0);
}

TEST_CASE("height concentration flags the dominant level") {
    const int L = 32;
    sos::ModelParams p = sos::derive_params(1.0, L, 1.0);
    p.H = 2;
    sos::HeightField f(L, 2, 0, true);
    const sos::ConcentrationReport all_at_H = sos::height_concentration(f, p);
    CHECK(all_at_H.fraction_at(2) == doctest::Approx(1.0));
    CHECK(all_at_H.e_strict_H);
    CHECK(!all_at_H.e_strict_Hm1);
    CHECK(all_at_H.e_relaxed_H);

    // 85% at H-1, 15% at H: relaxed fires at H-1 only, strict nowhere
    sos::HeightField g(L, 1, 0, true);
    int flipped = 0;
    for (int y = 0; y < L && flipped < L * L * 15 / 100; ++y)
        for (int x = 0; x < L && flipped < L * L * 15 / 100; ++x, ++flipped)
            g.set(x, y, 2);
    const sos::ConcentrationReport mixed = sos::height_concentration(g, p);
    CHECK(!mixed.e_strict_H);
    CHECK(!mixed.e_strict_Hm1);
    CHECK(!mixed.e_relaxed_H);
    CHECK(mixed.e_relaxed_Hm1);
    const double exact_frac =
        static_cast<double>(L * L - L * L * 15 / 100) / (L * L);
    CHECK(mixed.fraction_at(1) == doctest::Approx(exact_frac).epsilon(1e-9));
}

TEST_CASE("maxima report applies the +-3 window around the predicted centers") {
    const double beta = 0.8;
    const int L = 1024;
    std::vector<int> with_floor(16), without(16);
    const double cf = 3.0 / (4.0 * beta) * std::log(static_cast<double>(L));
    const double cn = 1.0 / (2.0 * beta) * std::log(static_cast<double>(L));
    for (int i = 0; i < 16; ++i) {
        with_floor[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(cf)) + (i % 3) - 1;
        without[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(cn)) + (i % 3) - 1;
    }
    const sos::MaximaReport rep = sos::maxima_report(with_floor, without, beta, L);
    CHECK(rep.center_floor == doctest::Approx(6.499).epsilon(1e-3));
    CHECK(rep.center_nofloor == doctest::Approx(4.332).epsilon(1e-3));
    CHECK(rep.pass_floor);
    CHECK(rep.pass_nofloor);
    CHECK(rep.floor_dominates);

    // push the floor sample far off: the window check fails
    std::vector<int> far(16, 20);
    CHECK(!sos::maxima_report(far, without, beta, L).pass_floor);
}

TEST_CASE("flat fluctuation profile on a synthetic loop") {
    // rectangle loop: dual boundary of the region [2, 29] x [2, 9] in a 32 box
    const int L = 32;
    sos::HeightField f(L, 0, 0, true);
    for (int y = 2; y <= 9; ++y)
        for (int x = 2; x <= 29; ++x) f.set(x, y, 1);
    auto loops = sos::assemble_contours(sos::level_bonds(f, 1));
    REQUIRE(loops.size() == 1);
    sos::classify_and_measure(loops[0], f, 1);
    const sos::FlatFluctuation ff = sos::flat_fluctuation(loops[0], L, 0.1, 0.05);
    CHECK(ff.applicable);
    CHECK(ff.missing_count == 0);
    // the loop's lower-half top edge sits at dual height 10 for every column
    CHECK(ff.sup == ff.min_window_sup);
    for (int v : ff.rho) CHECK(v == ff.sup);
    CHECK(ff.window_len >= 2);
}

TEST_CASE("loops rescale into the unit square") {
    const int L = 16;
    sos::HeightField f(L, 0, 0, true);
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x) f.set(x, y, 1);
    auto loops = sos::assemble_contours(sos::level_bonds(f, 1));
    REQUIRE(loops.size() == 1);
    const sos::Polyline poly = sos::loop_to_unit_polyline(loops[0], L);
    for (const sos::Vec2& p : poly) {
        CHECK(p.x >= -0.04);
        CHECK(p.x <= 1.04);
        CHECK(p.y >= -0.04);
        CHECK(p.y <= 1.04);
    }
    CHECK(std::abs(sos::polygon_area(poly)) == doctest::Approx(1.0).epsilon(0.01));
}
