#pragma once

#include <cstdint>
#include <vector>

#include "sos/height_field.hpp"

namespace sos {

// Brute-force enumeration of the truncated Gibbs measure on a tiny box.
// Heights range over [0, K] with the floor, [-K, K] without; the boundary
// ring is fixed at `boundary`.
struct ExactOracleSpec {
    int side = 2;
    int K = 3;
    double beta = 1.0;
    int boundary = 0;
    bool floor = true;

    int h_min() const { return floor ? 0 : -K; }
    int h_max() const { return K; }
    int n_levels() const { return h_max() - h_min() + 1; }
    double state_count() const;
};

struct ExactGibbs {
    ExactOracleSpec spec;
    double logZ = 0;
    // marginal[site][h - h_min] with site = y * side + x
    std::vector<std::vector<double>> marginal;
    // Upper bound on the probability mass excluded by the height truncation.
    double truncation_bound = 0;

    double site_mean(int site) const;
    double marginal_prob(int site, int h) const;
    // Exact probability of a full configuration (row-major heights).
    double config_probability(const std::vector<int>& heights) const;
};

// Throws std::invalid_argument when the state space exceeds 1e8.
ExactGibbs exact_gibbs_oracle(const ExactOracleSpec& spec);

int max_height(const HeightField& field);

} // namespace sos
