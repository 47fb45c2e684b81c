#pragma once

#include "sos/geometry.hpp"
#include "sos/surface_tension.hpp"

namespace sos {

struct ProfilePoint {
    double y = 0;       // predicted mean height of the level line above (x, 0)
    double sigma = 0;   // predicted Gaussian std of the height at x
};

// Mean and fluctuation profile of a level line pinned at A = (x_A, a) and
// B = (x_B, b) under an area tilt mu/L:
//   Y(x)      = linear interpolation of (a, b)
//               + mu (x - x_A)(x_B - x) / (2 beta L (tau+tau'') cos^3 theta)
//   sigma^2(x) = (x - x_A)(x_B - x) / (beta d_AB (tau+tau'') cos^3 theta)
// with theta = atan(|b - a| / d_AB) the chord inclination.
ProfilePoint local_profile(double mu, double a, double b, double x_A, double x_B,
                           double x, double beta, double L,
                           const SurfaceTensionModel& model);

// Free energy of an optimally curved line of chord length ell at angle theta:
//   G_mu(ell, theta) = -beta tau(theta) ell + mu^2 ell^3 / (24 beta (tau+tau'') L^2)
double free_energy_G(double mu, double ell, double theta, double beta, double L,
                     const SurfaceTensionModel& model);

// The optimal curve between A and B: the straight segment plus the quadratic
// bulge with coefficient mu ell^3 / (2 beta L (tau+tau'') d^3), sampled at
// n_samples + 1 points.
Polyline optimal_curve(double mu, Vec2 A, Vec2 B, double beta, double L,
                       const SurfaceTensionModel& model, int n_samples = 256);

} // namespace sos
