#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sos {

// a_h = e^{4 beta h} * Phat(eta_center >= h) with a batch-means confidence
// interval, from a no-floor box with 0 boundary conditions.
struct TailEstimate {
    int h = 0;
    double prob = 0;       // Phat(eta_0 >= h)
    double a = 0;          // e^{4 beta h} * prob
    double a_halfwidth = 0; // 95% CI half-width on a
    bool reliable = false;  // CI half-width < 10% of the value
};

struct CInfinityEstimate {
    double beta = 0;
    int box_side = 0;
    std::uint64_t sweeps = 0;
    std::vector<TailEstimate> a; // h = 0 .. h_max
    double c_inf = 0;
    double c_inf_halfwidth = 0;
    int h_used = -1;      // largest h that entered the extrapolation
    bool reliable = false;
    std::string message;  // set when the request could not be met
};

// Monte Carlo estimator for c_infinity = lim_h e^{4 beta h} P(eta_0 >= h) in
// the no-floor model.  Extrapolates from the reliable a_h, weighting by the
// statistical error combined with the e^{-2 beta h} convergence-rate model.
CInfinityEstimate estimate_c_infinity(double beta, int box_side, int h_max,
                                      std::uint64_t num_sweeps, std::uint64_t seed,
                                      std::uint64_t burn_in = 0);

} // namespace sos
