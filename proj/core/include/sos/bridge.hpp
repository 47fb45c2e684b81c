#pragma once

#include <cstdint>
#include <vector>

#include "sos/rng.hpp"

namespace sos {

// Exact transfer-matrix model of an area-tilted open contour: a height path
// h_0 = a, h_1, ..., h_d = b with per-column weight
//   e^{-beta (1 + |h_i - h_{i-1}|)} * e^{(mu/L) h_i}
// (the tilt accumulates the signed area under the path as a left Riemann sum;
// the constant e^{-beta d} and the endpoint tilts drop out of the law).
// Heights live in a finite window; marginals are exact within the truncation.
class TiltedBridgeModel {
public:
    TiltedBridgeModel(double beta, double mu_over_L, int d, int a, int b, int M,
                      bool floor_at_zero = false);

    double beta() const { return beta_; }
    double mu_over_L() const { return mu_over_L_; }
    int d() const { return d_; }
    int a() const { return a_; }
    int b() const { return b_; }
    int h_min() const { return h_min_; }
    int h_max() const { return h_max_; }
    bool floor_at_zero() const { return floor_; }

    // total probability mass sitting on the window edges, max over columns
    double boundary_mass() const { return boundary_mass_; }

    // exact marginal distribution of h_i over [h_min, h_max]
    const std::vector<double>& marginal(int i) const { return marginals_[static_cast<std::size_t>(i)]; }
    double mean(int i) const;
    double variance(int i) const;

    // one path h_0..h_d drawn from the exact law (backward sampling)
    std::vector<int> sample_path(SequentialRng& rng) const;

private:
    double beta_, mu_over_L_;
    int d_, a_, b_, h_min_, h_max_;
    bool floor_;
    int xi_max_;
    std::vector<double> step_;                 // e^{-beta |xi|}, xi = -xi_max..xi_max
    std::vector<std::vector<double>> forward_; // f_i, normalized per column
    std::vector<std::vector<double>> marginals_;
    double boundary_mass_ = 0;
};

// Builds the model, doubling the window (up to a few retries) until the
// boundary mass is below 1e-10.
TiltedBridgeModel build_bridge(double beta, double mu_over_L, int d, int a, int b,
                               int M, bool floor_at_zero = false);

struct ScalingFit {
    std::vector<double> sizes;     // L values used
    std::vector<double> sup_mean;  // E[sup over columns of h] per size
    double slope = 0;
    double intercept = 0;
    double stderr_slope = 0;
};

// For each L: bridge with d = L columns, a = b = 0, floor at zero, tilt
// mu_base / L (mu_base < 0 penalizes area and confines the path; mu_base = 0
// gives the diffusive control).  Samples n_paths paths per size and fits the
// log-log slope of E[sup].
ScalingFit sup_fluctuation_scaling(double beta, double mu_base,
                                   const std::vector<int>& L_list, int n_paths,
                                   std::uint64_t seed);

} // namespace sos
