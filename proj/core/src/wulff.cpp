#include "sos/wulff.hpp"

#include <cmath>
#include <stdexcept>

namespace sos {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec2 raw_boundary_point(const SurfaceTensionModel& m, double phi) {
    const double ta = m.tau(phi);
    const double tp = m.tau_prime(phi);
    const double c = std::cos(phi), s = std::sin(phi);
    return {ta * c - tp * s, ta * s + tp * c};
}

double edge_normal_angle(const Vec2& a, const Vec2& b) {
    // outward normal of a ccw edge a->b is (dy, -dx)
    return std::atan2(-(b.x - a.x), b.y - a.y);
}

// W(curve) = integral of tau over the curve, per edge by normal angle
double wulff_integral(const Polyline& closed, const SurfaceTensionModel& m) {
    double acc = 0;
    const std::size_t n = closed.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = closed[i];
        const Vec2& b = closed[(i + 1) % n];
        const double len = (b - a).norm();
        if (len == 0) continue;
        acc += m.tau(edge_normal_angle(a, b)) * len;
    }
    return acc;
}

} // namespace

WulffShape::WulffShape(SurfaceTensionModel model, int points_per_quadrant)
    : model_(std::move(model)) {
    if (points_per_quadrant < 16)
        throw std::invalid_argument("WulffShape: points_per_quadrant too small");
    // raw (unscaled) boundary polygon
    const int n = 4 * points_per_quadrant;
    Polyline raw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        raw[static_cast<std::size_t>(i)] =
            raw_boundary_point(model_, 2.0 * kPi * i / n);
    const double w_raw = wulff_integral(raw, model_);
    if (!(w_raw > 0))
        throw std::invalid_argument("WulffShape: degenerate surface tension");
    scale_ = std::sqrt(2.0 / w_raw);
    w1_ = scale_ * w_raw;
    ell_tau_ = 4.0 * model_.tau(0.0) / w1_;
    y_diag_ = scale_ * (model_.tau(kPi / 4.0)); // tau'(pi/4) = 0 by symmetry
    area_ = scale_ * scale_ * polygon_area(raw);
}

Vec2 WulffShape::boundary_point(double phi) const {
    return raw_boundary_point(model_, phi) * scale_;
}

double WulffShape::support(double phi) const { return scale_ * model_.tau(phi); }

Polyline WulffShape::boundary_polyline(int points_per_quadrant) const {
    const int n = 4 * points_per_quadrant;
    Polyline out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = boundary_point(2.0 * kPi * i / n);
    return out;
}

ShapeConstants shape_constants(const WulffShape& wulff, int arc_points) {
    ShapeConstants c;
    c.beta = wulff.model().beta();
    c.tau0 = wulff.model().tau(0.0);
    c.w1 = wulff.w1();
    c.lambda_hat = 2.0 * c.beta * c.tau0;
    c.lambda_c = c.lambda_hat + c.beta * c.w1 / 2.0;

    // numeric cross-check: F_lambda(L_c(lambda)) is increasing in lambda and
    // vanishes at lambda_c; at lambda_hat the shape exactly fits (ell_c ell_tau = 1)
    auto g = [&](double lambda) {
        const LimitShape sh = limit_shape(lambda, 1.0, 0.0, wulff, arc_points);
        return functional_F(sh.boundary, lambda, wulff.model(), /*check_simple=*/false);
    };
    double lo = c.lambda_hat * (1.0 + 1e-12);
    double hi = 4.0 * c.lambda_c;
    if (!(g(lo) < 0.0 && g(hi) > 0.0))
        throw std::runtime_error("shape_constants: functional root not bracketed");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-13 * hi) break;
    }
    c.numeric_lambda_c = 0.5 * (lo + hi);
    return c;
}

LimitShape limit_shape(double lambda, double t, double r, const WulffShape& wulff,
                       int arc_points) {
    if (!(t > 0) || !(r > -1.0 && r < 1.0) || !(lambda > 0))
        throw std::invalid_argument("limit_shape: need t > 0, r in (-1,1), lambda > 0");
    const double beta = wulff.model().beta();
    const double ell_c = beta * wulff.w1() / (2.0 * lambda);
    const double rho = t * ell_c;
    const double a = rho * wulff.ell_tau() / 2.0;
    if (rho * wulff.ell_tau() > 1.0 + 1e-12)
        throw std::invalid_argument(
            "limit_shape: shape undefined, t*ell_c*ell_tau > 1 (the scaled Wulff "
            "shape does not fit inside the unit square)");

    LimitShape out;
    out.lambda = lambda;
    out.t = t;
    out.r = r;
    out.rho = rho;
    out.flat_a = a;

    // ccw boundary: four flat segments on dQ joined by corner quarter-arcs of
    // rho * W1 centered at (a,a), (1-a,a), (1-a,1-a), (a,1-a)
    const Vec2 centers[4] = {{1.0 - a, a}, {1.0 - a, 1.0 - a}, {a, 1.0 - a}, {a, a}};
    const Vec2 seg_start[4] = {{a, 0.0}, {1.0, a}, {1.0 - a, 1.0}, {0.0, 1.0 - a}};
    const Vec2 seg_end[4] = {{1.0 - a, 0.0}, {1.0, 1.0 - a}, {a, 1.0}, {0.0, a}};
    const double arc_from[4] = {-kPi / 2.0, 0.0, kPi / 2.0, kPi};

    Polyline& b = out.boundary;
    b.reserve(static_cast<std::size_t>(4 * (arc_points + 2)));
    for (int side = 0; side < 4; ++side) {
        b.push_back(seg_start[side]);
        b.push_back(seg_end[side]);
        for (int k = 1; k < arc_points; ++k) {
            const double phi = arc_from[side] + (kPi / 2.0) * k / arc_points;
            b.push_back(centers[side] + wulff.boundary_point(phi) * rho);
        }
    }
    // dilation by (1+r) about the center of Q
    const Vec2 c{0.5, 0.5};
    for (Vec2& p : b) p = c + (p - c) * (1.0 + r);
    return out;
}

namespace {

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto cross = [](const Vec2& o, const Vec2& p, const Vec2& q) {
        return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
    };
    const double d1 = cross(c, d, a), d2 = cross(c, d, b);
    const double d3 = cross(a, b, c), d4 = cross(a, b, d);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

} // namespace

double functional_F(const Polyline& curve, double lambda,
                    const SurfaceTensionModel& model, bool check_simple) {
    const std::size_t n = curve.size();
    if (n < 3) return 0.0; // a degenerate curve carries no length and no area
    if (check_simple && n <= 4000) {
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& a = curve[i];
            const Vec2& b = curve[(i + 1) % n];
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j + 1 == n) continue; // adjacent through the wrap
                if (segments_intersect(a, b, curve[j], curve[(j + 1) % n]))
                    throw std::invalid_argument("functional_F: self-intersecting curve");
            }
        }
    }
    const double area = polygon_area(curve);
    if (area < 0)
        throw std::invalid_argument("functional_F: curve must be positively oriented");
    return -model.beta() * wulff_integral(curve, model) + lambda * area;
}

ChordSag chord_sag(const WulffShape& wulff, double d, double theta) {
    if (!wulff.model().strictly_convex())
        throw std::invalid_argument("chord_sag: needs a strictly convex model");
    if (!(d > 0))
        throw std::invalid_argument("chord_sag: need d > 0");

    const SurfaceTensionModel& m = wulff.model();
    ChordSag out;
    const double stiff = m.stiffness(theta);
    out.formula = wulff.w1() * d * d / (16.0 * stiff * std::cos(theta));

    // direct geometric construction: the boundary point with outward normal at
    // angle phi0 = theta - pi/2 is where a chord of inclination theta sits
    const double phi0 = theta - kPi / 2.0;
    const Vec2 en{std::sin(theta), -std::cos(theta)}; // outward normal direction
    auto proj = [&](double phi) {
        const Vec2 p = wulff.boundary_point(phi);
        return p.x * en.x + p.y * en.y;
    };
    const double c0 = proj(phi0);
    auto endpoint = [&](double c, int side) {
        double lo = phi0, hi = phi0 + 1.4;
        if (side < 0) { lo = phi0 - 1.4; hi = phi0; }
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((proj(mid) > c) == (side > 0)) lo = mid; else hi = mid;
        }
        return wulff.boundary_point(0.5 * (lo + hi));
    };
    auto width = [&](double c) {
        const Vec2 p1 = endpoint(c, -1), p2 = endpoint(c, +1);
        return (p2 - p1).norm();
    };
    if (width(0.5 * c0) <= d)
        throw std::invalid_argument("chord_sag: chord does not fit (d too large)");
    double lo = 0.5 * c0, hi = c0;
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (width(mid) > d) lo = mid; else hi = mid;
    }
    const double c = 0.5 * (lo + hi);
    const Vec2 p1 = endpoint(c, -1), p2 = endpoint(c, +1);
    const Vec2 mid = (p1 + p2) * 0.5;
    // vertical drop from the midpoint to the lower boundary arc; boundary x is
    // increasing in phi around the bottom of the shape
    double plo = phi0 - 1.3, phi_hi = phi0 + 1.3;
    for (int it = 0; it < 120; ++it) {
        const double pm = 0.5 * (plo + phi_hi);
        if (wulff.boundary_point(pm).x < mid.x) plo = pm; else phi_hi = pm;
    }
    const Vec2 bottom = wulff.boundary_point(0.5 * (plo + phi_hi));
    out.numeric = mid.y - bottom.y;
    out.rel_discrepancy = (out.numeric - out.formula) / out.formula;
    return out;
}

EnlargeSequence enlarge_sequence(const WulffShape& wulff, double lambda,
                                 double ell, int k_max) {
    if (k_max < 0) throw std::invalid_argument("enlarge_sequence: k_max < 0");
    const double beta = wulff.model().beta();
    const double ell_c = beta * wulff.w1() / (2.0 * lambda);
    if (!(ell > ell_c && ell < 1.0 / wulff.ell_tau()))
        throw std::invalid_argument(
            "enlarge_sequence: need ell_c(lambda) < ell < 1/ell_tau");
    const double y = wulff.y_diag();
    EnlargeSequence out;
    out.rate = 1.0 - std::sqrt(2.0) * y / wulff.ell_tau();
    out.fixed_point = ell * wulff.ell_tau() / 2.0;
    out.r.reserve(static_cast<std::size_t>(k_max + 1));
    double r = 0.5;
    out.r.push_back(r);
    for (int k = 0; k < k_max; ++k) {
        r = r * out.rate + (ell / std::sqrt(2.0)) * y;
        out.r.push_back(r);
    }
    return out;
}

} // namespace sos
