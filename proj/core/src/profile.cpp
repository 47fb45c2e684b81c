#include "sos/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace sos {

namespace {

double chord_angle(double a, double b, double d) {
    return std::atan(std::abs(b - a) / d);
}

} // namespace

ProfilePoint local_profile(double mu, double a, double b, double x_A, double x_B,
                           double x, double beta, double L,
                           const SurfaceTensionModel& model) {
    const double d = x_B - x_A;
    if (!(d > 0) || !(beta > 0) || !(L > 0))
        throw std::invalid_argument("local_profile: need x_B > x_A, beta > 0, L > 0");
    const double lo = x - x_A, hi = x_B - x;
    const double eps = 1e-12 * d;
    if (lo < -eps || hi < -eps)
        throw std::invalid_argument("local_profile: x outside [x_A, x_B]");
    // exact endpoints are fine; otherwise the expansion needs x away from them
    if ((lo > eps && lo < d / 10.0 - eps) || (hi > eps && hi < d / 10.0 - eps))
        throw std::invalid_argument("local_profile: x too close to an endpoint");

    const double theta = chord_angle(a, b, d);
    const double stiff = model.stiffness(theta);
    const double c3 = std::pow(std::cos(theta), 3);
    ProfilePoint p;
    p.y = (a * hi + b * lo) / d + mu * lo * hi / (2.0 * beta * L * stiff * c3);
    const double var = lo * hi / (beta * d * stiff * c3);
    p.sigma = std::sqrt(std::max(0.0, var));
    return p;
}

double free_energy_G(double mu, double ell, double theta, double beta, double L,
                     const SurfaceTensionModel& model) {
    if (!(beta > 0) || !(L > 0) || !(ell >= 0))
        throw std::invalid_argument("free_energy_G: bad arguments");
    const double stiff = model.stiffness(theta);
    if (!(stiff > 0))
        throw std::invalid_argument("free_energy_G: model not strictly convex at theta");
    return -beta * model.tau(theta) * ell +
           mu * mu * ell * ell * ell / (24.0 * beta * stiff * L * L);
}

Polyline optimal_curve(double mu, Vec2 A, Vec2 B, double beta, double L,
                       const SurfaceTensionModel& model, int n_samples) {
    if (n_samples < 1) throw std::invalid_argument("optimal_curve: n_samples < 1");
    const double d = B.x - A.x;
    if (!(d > 0)) throw std::invalid_argument("optimal_curve: need B.x > A.x");
    const double theta = chord_angle(A.y, B.y, d);
    const double stiff = model.stiffness(theta);
    const double ell = (B - A).norm();
    const double coef = mu * ell * ell * ell / (2.0 * beta * L * stiff * d * d * d);
    Polyline out;
    out.reserve(static_cast<std::size_t>(n_samples + 1));
    for (int i = 0; i <= n_samples; ++i) {
        const double x = A.x + d * i / n_samples;
        const double base = A.y + (B.y - A.y) * (x - A.x) / d;
        out.push_back({x, base + coef * (x - A.x) * (B.x - x)});
    }
    return out;
}

} // namespace sos
