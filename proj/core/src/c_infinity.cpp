#include "sos/c_infinity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sos/heat_bath.hpp"

namespace sos {

namespace {

// Exact single-site quantities given the four neighbor heights: the local
// partition function Z = sum_k e^{-beta sum_i |k - n_i|} and the upper tails
// T_h = sum_{k >= h} e^{-beta sum_i |k - n_i|}, with the geometric tails
// outside [min n, max n] summed in closed form.  Averaging T_h / Z over
// equilibrium neighbor configurations gives P(eta_0 >= h) exactly
// (Rao-Blackwellized), so even tails of order e^{-4 beta h} carry O(1)
// relative statistical error.
struct LocalTails {
    double z = 0;
    std::vector<double> scaled_tail; // e^{4 beta h} * T_h for h = 0..h_max
};

LocalTails local_tails(int n0, int n1, int n2, int n3, double beta, int h_max) {
    const int lo = std::min(std::min(n0, n1), std::min(n2, n3));
    const int hi = std::max(std::max(n0, n1), std::max(n2, n3));
    const int s = n0 + n1 + n2 + n3;
    const double q4 = std::exp(-4.0 * beta);
    const double geom = 1.0 / (1.0 - q4);

    auto energy = [&](int k) {
        return std::abs(k - n0) + std::abs(k - n1) + std::abs(k - n2) +
               std::abs(k - n3);
    };

    // Z = bulk [lo, hi] + geometric tails on both sides
    double z = 0;
    for (int k = lo; k <= hi; ++k) z += std::exp(-beta * energy(k));
    z += std::exp(-beta * (s - 4.0 * (lo - 1))) * geom;       // k <= lo - 1
    z += std::exp(beta * (s - 4.0 * (hi + 1))) * geom;        // k >= hi + 1

    LocalTails out;
    out.z = z;
    out.scaled_tail.resize(static_cast<std::size_t>(h_max + 1));
    const double upper = std::exp(beta * static_cast<double>(s)) * geom;
    for (int h = 0; h <= h_max; ++h) {
        if (h > hi) {
            // pure geometric tail: e^{4 beta h} T_h = e^{beta s} / (1 - q4)
            out.scaled_tail[static_cast<std::size_t>(h)] = upper;
        } else {
            double t = 0;
            const int start = std::max(h, lo);
            for (int k = start; k <= hi; ++k)
                t += std::exp(beta * (4.0 * h - energy(k)));
            if (h < lo) {
                // also the geometric piece between h and lo - 1
                for (int k = h; k < lo; ++k)
                    t += std::exp(beta * (4.0 * h - (s - 4.0 * k)));
            }
            t += std::exp(beta * (s + 4.0 * (h - hi - 1))) * geom;
            out.scaled_tail[static_cast<std::size_t>(h)] = t;
        }
    }
    return out;
}

} // namespace

CInfinityEstimate estimate_c_infinity(double beta, int box_side, int h_max,
                                      std::uint64_t num_sweeps, std::uint64_t seed,
                                      std::uint64_t burn_in) {
    if (box_side < 32)
        throw std::invalid_argument("estimate_c_infinity: box_side must be >= 32");
    if (h_max < 0 || num_sweeps == 0)
        throw std::invalid_argument("estimate_c_infinity: bad h_max / num_sweeps");
    if (burn_in == 0) burn_in = std::max<std::uint64_t>(64, 4ull * box_side);

    HeightField field(box_side, 0, 0, /*floor=*/false);
    SweepEngine engine(beta, /*floor_active=*/false);
    CounterRng rng{seed};

    engine.run(field, rng, 0, burn_in);

    // probe sites: a stride-3 sublattice away from the boundary, so probes
    // share no neighbors and sit in the bulk
    const int margin = box_side / 4;
    std::vector<std::pair<int, int>> probes;
    for (int y = margin; y < box_side - margin; y += 3)
        for (int x = margin; x < box_side - margin; x += 3) probes.emplace_back(x, y);

    constexpr int kBatches = 64;
    const std::uint64_t batch_len = std::max<std::uint64_t>(1, num_sweeps / kBatches);
    const std::uint64_t total = batch_len * kBatches;

    std::vector<std::vector<double>> batch_means(
        static_cast<std::size_t>(h_max + 1));
    std::vector<double> batch_acc(static_cast<std::size_t>(h_max + 1), 0.0);

    for (std::uint64_t sweep = 0; sweep < total; ++sweep) {
        engine.sweep(field, rng, burn_in + sweep);
        for (const auto& [x, y] : probes) {
            const LocalTails lt =
                local_tails(field.at_ext(x - 1, y), field.at_ext(x + 1, y),
                            field.at_ext(x, y - 1), field.at_ext(x, y + 1), beta,
                            h_max);
            for (int h = 0; h <= h_max; ++h)
                batch_acc[static_cast<std::size_t>(h)] +=
                    lt.scaled_tail[static_cast<std::size_t>(h)] / lt.z;
        }
        if ((sweep + 1) % batch_len == 0) {
            const double norm =
                static_cast<double>(batch_len) * static_cast<double>(probes.size());
            for (int h = 0; h <= h_max; ++h) {
                batch_means[static_cast<std::size_t>(h)].push_back(
                    batch_acc[static_cast<std::size_t>(h)] / norm);
                batch_acc[static_cast<std::size_t>(h)] = 0.0;
            }
        }
    }

    CInfinityEstimate out;
    out.beta = beta;
    out.box_side = box_side;
    out.sweeps = total;
    for (int h = 0; h <= h_max; ++h) {
        const auto& b = batch_means[static_cast<std::size_t>(h)];
        double mean = 0;
        for (double f : b) mean += f;
        mean /= static_cast<double>(b.size());
        double var = 0;
        for (double f : b) var += (f - mean) * (f - mean);
        var /= static_cast<double>(b.size() - 1) * static_cast<double>(b.size());

        TailEstimate t;
        t.h = h;
        t.a = mean;
        t.prob = mean * std::exp(-4.0 * beta * h);
        t.a_halfwidth = 1.96 * std::sqrt(var);
        t.reliable = t.a > 0 && t.a_halfwidth < 0.10 * t.a;
        out.a.push_back(t);
    }

    // a_h converges to c_inf at rate e^{-2 beta h}; combine the reliable
    // levels weighted by statistical error plus that systematic model error
    double wsum = 0, wa = 0, wvar = 0;
    for (const auto& t : out.a) {
        if (!t.reliable) continue;
        const double model_err = t.a * std::exp(-2.0 * beta * t.h);
        const double se = t.a_halfwidth / 1.96;
        const double w = 1.0 / (se * se + model_err * model_err);
        wsum += w;
        wa += w * t.a;
        wvar += w * w * (se * se + model_err * model_err);
        out.h_used = std::max(out.h_used, t.h);
    }
    if (wsum > 0 && out.h_used >= 1) {
        out.c_inf = wa / wsum;
        out.c_inf_halfwidth = 1.96 * std::sqrt(wvar) / wsum;
        out.reliable = true;
    } else {
        out.c_inf = out.a.empty() ? 0.0 : out.a.back().a;
        out.c_inf_halfwidth = out.a.empty() ? 0.0 : out.a.back().a_halfwidth;
        out.h_used = h_max;
        out.reliable = false;
        out.message = "tail estimates too noisy; reporting the deepest level";
    }
    return out;
}

} // namespace sos
