#pragma once

#include <vector>

#include "sos/geometry.hpp"
#include "sos/surface_tension.hpp"

namespace sos {

// Unit-area Wulff shape W1 of a surface tension model, described by its
// support-function boundary p(phi) = s (tau(phi) n(phi) + tau'(phi) t(phi)),
// where s = sqrt(2 / W(dW_tau)) rescales the raw shape to unit area.
class WulffShape {
public:
    explicit WulffShape(SurfaceTensionModel model, int points_per_quadrant = 4096);

    const SurfaceTensionModel& model() const { return model_; }
    double scale() const { return scale_; }
    double w1() const { return w1_; }           // W(dW1) = integral of tau ds
    double ell_tau() const { return ell_tau_; } // 4 tau(0) / w1, smallest enclosing square side
    double y_diag() const { return y_diag_; }   // radius of W1 in direction pi/4
    double area() const { return area_; }       // ~1 by construction

    Vec2 boundary_point(double phi) const;      // on dW1
    double support(double phi) const;           // s * tau(phi)
    Polyline boundary_polyline(int points_per_quadrant = 1024) const;

private:
    SurfaceTensionModel model_;
    double scale_ = 0, w1_ = 0, ell_tau_ = 0, y_diag_ = 0, area_ = 0;
};

inline WulffShape wulff_unit(const SurfaceTensionModel& model,
                             int points_per_quadrant = 4096) {
    return WulffShape(model, points_per_quadrant);
}

struct ShapeConstants {
    double beta = 0;
    double tau0 = 0;
    double w1 = 0;
    double lambda_hat = 0;          // 2 beta tau(0); smallest lambda with a fitting shape
    double lambda_c = 0;            // lambda_hat + beta w1 / 2
    double numeric_lambda_c = 0;    // bisection root of F_lambda(L_c(lambda)) = 0

    double ell_c(double lambda) const { return beta * w1 / (2.0 * lambda); }
};

// lambda_hat, ell_c, lambda_c plus a numeric cross-validation of lambda_c as
// the root of the shape functional on the critical shape family.
ShapeConstants shape_constants(const WulffShape& wulff, int arc_points = 1024);

// The shape L(lambda, t, r): the (1+r)-dilation about the center of the unit
// square Q of the union of all translates of t * ell_c(lambda) * W1 inside Q —
// four straight segments on dQ joined by four corner arcs of radius
// rho = t * ell_c(lambda).
struct LimitShape {
    double lambda = 0, t = 0, r = 0;
    double rho = 0;                 // corner-arc radius t * ell_c
    double flat_a = 0;              // flat contact interval is [a, 1-a] per side
    Polyline boundary;              // closed ccw polygon (first point not repeated)
};

LimitShape limit_shape(double lambda, double t, double r, const WulffShape& wulff,
                       int arc_points = 256);

// F_lambda(curve) = -beta * closed integral of tau(theta_s) ds + lambda * area.
// The Wulff integral is evaluated per edge by its outward-normal angle.
double functional_F(const Polyline& curve, double lambda,
                    const SurfaceTensionModel& model, bool check_simple = true);

struct ChordSag {
    double formula = 0;   // w1 d^2 / (16 (tau+tau'')(theta) cos theta)
    double numeric = 0;   // direct geometric sag on dW1
    double rel_discrepancy = 0;
};

// Vertical sag of a chord of length d at inclination theta with endpoints on
// dW1, measured from the chord midpoint down to the boundary.
ChordSag chord_sag(const WulffShape& wulff, double d, double theta);

struct EnlargeSequence {
    std::vector<double> r;  // r_0 = 1/2, r_{k+1} = r_k a + (ell/sqrt2) y
    double fixed_point = 0; // ell * ell_tau / 2
    double rate = 0;        // a = 1 - sqrt2 * y_diag / ell_tau, in [0,1)
};

// Contraction of the square-to-shape enlargement recursion; requires
// ell_c(lambda) < ell < 1/ell_tau.
EnlargeSequence enlarge_sequence(const WulffShape& wulff, double lambda,
                                 double ell, int k_max);

} // namespace sos
