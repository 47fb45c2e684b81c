#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sos/height_field.hpp"
#include "sos/rng.hpp"

namespace sos {

// Exact single-site conditional of the Gibbs measure,
// P(k) proportional to exp(-beta * sum_i |k - n_i|), restricted to a window
// chosen so the truncated tail mass is below 1e-12 (and to k >= 0 when the
// floor is active).
struct ConditionalDist {
    int k_min = 0;
    std::vector<double> p; // normalized probabilities for k_min, k_min+1, ...

    double prob(int k) const {
        int i = k - k_min;
        if (i < 0 || i >= static_cast<int>(p.size())) return 0.0;
        return p[static_cast<std::size_t>(i)];
    }
    // Inverse-CDF sampling from a uniform u in [0,1).
    int sample(double u) const;
    double mean() const;
};

ConditionalDist heat_bath_conditional(const std::array<int, 4>& neighbors,
                                      double beta, bool floor_active);

enum class Schedule { Checkerboard, Raster };

// Heat-bath sweep kernel.  One sweep resamples every interior site exactly
// once from its conditional given the current neighbors.  Randomness is
// keyed by (seed, sweep index, site index), so the result is independent of
// the update order within a parity class.
class SweepEngine {
public:
    SweepEngine(double beta, bool floor_active);

    double beta() const { return beta_; }

    void sweep(HeightField& field, const CounterRng& rng,
               std::uint64_t sweep_index,
               Schedule schedule = Schedule::Checkerboard) const;

    void run(HeightField& field, const CounterRng& rng,
             std::uint64_t first_sweep, std::uint64_t n_sweeps,
             Schedule schedule = Schedule::Checkerboard) const;

    // Draws one height given the 4 neighbor heights; identical in law to
    // heat_bath_conditional(...).sample(u).
    int sample_site(int n0, int n1, int n2, int n3, double u) const;

private:
    int sample_flat(int n, double u) const;
    int sample_general(int lo, int hi, int n0, int n1, int n2, int n3, double u) const;

    double beta_;
    bool floor_;
    int margin_;             // window extension beyond the neighbor range
    double q4_;              // exp(-4 beta)
    double log_q4_;
    std::vector<double> expe_;  // exp(-beta * e) for integer energies e
    // Per-center-height CDF tables for the all-neighbors-equal case with an
    // active floor (the hot path at equilibrium).
    static constexpr int kFlatTableMax = 48;
    std::vector<std::vector<double>> flat_cdf_; // [n][k], k = 0..n+margin
};

} // namespace sos
