#include "sos/params.hpp"

#include <cmath>

namespace sos {

std::string to_string(Regime r) {
    switch (r) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
    default: return "unknown";
    }
}

double ModelParams::lambda_n(int n) const {
    return lambda * std::exp(4.0 * beta * n);
}

Regime ModelParams::classify(double lambda_c, double rel_margin) const {
    if (!(lambda_c > 0) || !std::isfinite(lambda_c)) return Regime::Unknown;
    if (std::abs(lambda - lambda_c) <= rel_margin * lambda_c) return Regime::Critical;
    return lambda > lambda_c ? Regime::Supercritical : Regime::Subcritical;
}

ModelParams derive_params(double beta, int L, double c_inf_estimate,
                          double c_inf_halfwidth) {
    if (!(beta > 0) || !std::isfinite(beta))
        throw std::invalid_argument("derive_params: beta must be finite and > 0");
    if (L < 2)
        throw std::invalid_argument("derive_params: L must be >= 2");
    if (!(c_inf_estimate > 0) || !std::isfinite(c_inf_estimate))
        throw std::invalid_argument("derive_params: c_inf estimate must be finite and > 0");

    ModelParams p;
    p.beta = beta;
    p.L = L;
    const double x = std::log(static_cast<double>(L)) / (4.0 * beta);
    p.H = static_cast<int>(std::floor(x));
    p.alpha = x - p.H;
    // floor() can land on the wrong side when x is within rounding of an
    // integer; snap so that H + alpha == x holds exactly.
    if (p.alpha >= 1.0) { p.H += 1; p.alpha -= 1.0; }
    p.c_inf = c_inf_estimate;
    p.c_inf_halfwidth = c_inf_halfwidth;
    p.lambda = std::exp(4.0 * beta * p.alpha) * c_inf_estimate * (1.0 - std::exp(-4.0 * beta));
    return p;
}

} // namespace sos
