#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace sos {

enum class TauSource { DirectedWalk, Table, SquareLimit };

// Angle-dependent surface tension tau(theta), even and pi/2-periodic, with
// tau(theta) = tau(pi/2 - theta).  Queries at any angle are folded into the
// fundamental domain [0, pi/4] and extended by these symmetries.
//
// The directed-walk model comes from the scaled cumulant generating function
// Lambda(s) = -beta + log sum_{xi in Z} e^{-beta|xi| + s xi} of a single
// column step (closed form via geometric sums, |s| < beta), through the
// Legendre transform I(u) = sup_s (s u - Lambda(s)):
//   tau(theta) = cos(theta) I(tan(theta)) / beta,
//   tau + tau'' = 1 / (beta Lambda''(s*) cos^3 theta)  with Lambda'(s*) = tan theta.
// A small C^2 symmetrization correction is applied near pi/4 (see the .cpp)
// so that the reflected extension has no corner on the diagonal; tau and its
// low-order jet at theta = 0 and the value tau(pi/4) are the raw Legendre ones.
class SurfaceTensionModel {
public:
    static SurfaceTensionModel directed_walk(double beta); // requires beta >= 1
    // tau values tabulated at increasing angles spanning [0, pi/4]; natural
    // cubic spline between knots, extended by symmetry
    static SurfaceTensionModel from_table(double beta, std::vector<double> theta,
                                          std::vector<double> tau);
    // beta -> infinity limit tau(theta) = |cos theta| + |sin theta|
    static SurfaceTensionModel square_limit(double beta);

    double tau(double theta) const;
    double tau_prime(double theta) const;      // d tau / d theta
    double stiffness(double theta) const;      // tau + tau''
    double tau_second(double theta) const { return stiffness(theta) - tau(theta); }

    // Lambda''(s*) at the folded angle; directed-walk only
    double lambda_pp_at(double theta) const;

    double beta() const { return beta_; }
    TauSource source() const { return source_; }
    // the square limit has flat sides (tau + tau'' = 0 away from the corners)
    bool strictly_convex() const { return source_ != TauSource::SquareLimit; }

private:
    SurfaceTensionModel(double beta, TauSource source) : beta_(beta), source_(source) {}

    struct Eval { double tau, dtau, stiff; };
    struct Folded { double t; double sign; };
    static Folded fold(double theta);
    Eval eval_folded(double t) const;           // t in [0, pi/4]
    double corr(double t, int deriv) const;     // symmetrization polynomial

    double beta_;
    TauSource source_;
    std::array<double, 6> corr_{};              // coefficients of theta^4 .. theta^9

    // natural-spline data for TauSource::Table
    std::vector<double> knots_x_, knots_y_, knots_m_;
};

} // namespace sos
