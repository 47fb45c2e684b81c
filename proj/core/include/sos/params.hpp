#pragma once

#include <stdexcept>
#include <string>

namespace sos {

enum class Regime { Subcritical, Critical, Supercritical, Unknown };

std::string to_string(Regime r);

// Model parameters for the SOS surface on an L x L box with floor.
//
// H and alpha are the integer and fractional parts of log(L)/(4 beta);
// lambda = exp(4 beta alpha) * c_inf * (1 - exp(-4 beta)) is the entropic
// repulsion strength, and lambda_n(n) = lambda * exp(4 beta n) its level-n
// rescaling.
struct ModelParams {
    double beta = 0;
    int L = 0;
    int H = 0;
    double alpha = 0;
    double c_inf = 0;          // estimate of c_infinity
    double c_inf_halfwidth = 0; // confidence half-width of the estimate
    double lambda = 0;

    double lambda_n(int n) const;

    // Classification against a critical threshold lambda_c computed by the
    // shape-theory module.  rel_margin is the dead band around lambda_c
    // inside which we refuse to call a side.
    Regime classify(double lambda_c, double rel_margin = 0.0) const;
};

// Throws std::invalid_argument on non-finite or out-of-range inputs.
ModelParams derive_params(double beta, int L, double c_inf_estimate,
                          double c_inf_halfwidth = 0.0);

} // namespace sos
