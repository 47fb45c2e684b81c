#include "sos/heat_bath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sos {

namespace {

inline int energy4(int k, int n0, int n1, int n2, int n3) {
    return std::abs(k - n0) + std::abs(k - n1) + std::abs(k - n2) + std::abs(k - n3);
}

// window margin so that the neglected tail mass is < 1e-12 of the total:
// beyond the extreme neighbor the conditional decays by exp(-4 beta) per unit.
inline int window_margin(double beta) {
    return std::max(2, static_cast<int>(std::ceil(34.5 / (4.0 * beta))));
}

} // namespace

int ConditionalDist::sample(double u) const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return k_min + static_cast<int>(i);
    }
    return k_min + static_cast<int>(p.size()) - 1;
}

double ConditionalDist::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) m += (k_min + static_cast<int>(i)) * p[i];
    return m;
}

ConditionalDist heat_bath_conditional(const std::array<int, 4>& neighbors,
                                      double beta, bool floor_active) {
    if (!(beta > 0) || !std::isfinite(beta))
        throw std::invalid_argument("heat_bath_conditional: beta must be > 0");
    const int m = window_margin(beta);
    int nmin = neighbors[0], nmax = neighbors[0];
    for (int v : neighbors) { nmin = std::min(nmin, v); nmax = std::max(nmax, v); }
    int lo = nmin - m, hi = nmax + m;
    if (floor_active) lo = std::max(lo, 0);
    if (hi < lo) hi = lo;

    ConditionalDist d;
    d.k_min = lo;
    d.p.resize(static_cast<std::size_t>(hi - lo + 1));
    double z = 0.0;
    // subtract the minimal energy for numerical range
    int emin = energy4(std::clamp((neighbors[0] + neighbors[1] + neighbors[2] + neighbors[3]) / 4, lo, hi),
                       neighbors[0], neighbors[1], neighbors[2], neighbors[3]);
    for (int k = lo; k <= hi; ++k)
        emin = std::min(emin, energy4(k, neighbors[0], neighbors[1], neighbors[2], neighbors[3]));
    for (int k = lo; k <= hi; ++k) {
        double w = std::exp(-beta * (energy4(k, neighbors[0], neighbors[1], neighbors[2], neighbors[3]) - emin));
        d.p[static_cast<std::size_t>(k - lo)] = w;
        z += w;
    }
    for (double& w : d.p) w /= z;
    return d;
}

SweepEngine::SweepEngine(double beta, bool floor_active)
    : beta_(beta), floor_(floor_active), margin_(window_margin(beta)),
      q4_(std::exp(-4.0 * beta)), log_q4_(-4.0 * beta) {
    if (!(beta > 0) || !std::isfinite(beta))
        throw std::invalid_argument("SweepEngine: beta must be > 0");
    expe_.resize(1025);
    for (std::size_t e = 0; e < expe_.size(); ++e)
        expe_[e] = std::exp(-beta * static_cast<double>(e));
    if (floor_) {
        flat_cdf_.resize(kFlatTableMax);
        for (int n = 0; n < kFlatTableMax; ++n) {
            const int hi = n + margin_;
            std::vector<double> cdf(static_cast<std::size_t>(hi + 1));
            double z = 0.0;
            for (int k = 0; k <= hi; ++k) {
                z += std::exp(-4.0 * beta * std::abs(k - n));
                cdf[static_cast<std::size_t>(k)] = z;
            }
            for (double& c : cdf) c /= z;
            flat_cdf_[static_cast<std::size_t>(n)] = std::move(cdf);
        }
    }
}

int SweepEngine::sample_flat(int n, double u) const {
    if (floor_ && n < kFlatTableMax) {
        const auto& cdf = flat_cdf_[static_cast<std::size_t>(n)];
        // start the scan at the mode
        if (u < cdf[static_cast<std::size_t>(n)]) {
            int k = n;
            while (k > 0 && u < cdf[static_cast<std::size_t>(k - 1)]) --k;
            return k;
        }
        int k = n + 1;
        const int last = static_cast<int>(cdf.size()) - 1;
        while (k < last && u >= cdf[static_cast<std::size_t>(k)]) ++k;
        return k;
    }
    // untruncated two-sided geometric around n
    const double pc = (1.0 - q4_) / (1.0 + q4_);
    if (u < pc) return n;
    double v = (u - pc) / (1.0 - pc) * 2.0; // [0,2)
    const bool up = v < 1.0;
    double w = up ? v : v - 1.0;
    if (w <= 0.0) w = 0x1.0p-53;
    int j = 1 + static_cast<int>(std::log(w) / log_q4_);
    if (j < 1) j = 1;
    if (!up && floor_ && j > n) j = n; // unreachable in practice, keep the floor hard
    return up ? n + j : n - j;
}

int SweepEngine::sample_general(int lo, int hi, int n0, int n1, int n2, int n3,
                                double u) const {
    double cum[192];
    const int width = hi - lo + 1;
    // minimal energy over the window is attained at any median of the
    // neighbors clamped into [lo, hi]
    int a = n0, b = n1, c = n2, d = n3;
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    const int med = std::clamp(std::max(a, c), lo, hi);
    const int emin = energy4(med, n0, n1, n2, n3);
    double z = 0.0;
    for (int i = 0; i < width; ++i) {
        const int e = energy4(lo + i, n0, n1, n2, n3) - emin;
        const double w = e < static_cast<int>(expe_.size())
                             ? expe_[static_cast<std::size_t>(e)]
                             : std::exp(-beta_ * e);
        z += w;
        cum[i] = z;
    }
    const double target = u * z;
    int i = 0;
    while (i + 1 < width && cum[i] <= target) ++i;
    return lo + i;
}

int SweepEngine::sample_site(int n0, int n1, int n2, int n3, double u) const {
    if (n0 == n1 && n1 == n2 && n2 == n3) return sample_flat(n0, u);
    int nmin = std::min(std::min(n0, n1), std::min(n2, n3));
    int nmax = std::max(std::max(n0, n1), std::max(n2, n3));
    int lo = nmin - margin_, hi = nmax + margin_;
    if (floor_) lo = std::max(lo, 0);
    if (hi < lo) hi = lo;
    if (hi - lo + 1 > 192) {
        // window wider than the stack buffer: fall back to the reference path
        ConditionalDist d = heat_bath_conditional({n0, n1, n2, n3}, beta_, floor_);
        return d.sample(u);
    }
    return sample_general(lo, hi, n0, n1, n2, n3, u);
}

void SweepEngine::sweep(HeightField& field, const CounterRng& rng,
                        std::uint64_t sweep_index, Schedule schedule) const {
    const int L = field.side();
    auto& h = field.data();
    const int bc = field.boundary_height();
    auto update = [&](int x, int y) {
        const int i = y * L + x;
        const int n0 = x > 0 ? h[i - 1] : bc;
        const int n1 = x < L - 1 ? h[i + 1] : bc;
        const int n2 = y > 0 ? h[i - L] : bc;
        const int n3 = y < L - 1 ? h[i + L] : bc;
        const double u = rng.uniform(sweep_index, static_cast<std::uint64_t>(i));
        h[static_cast<std::size_t>(i)] = sample_site(n0, n1, n2, n3, u);
    };
    if (schedule == Schedule::Raster) {
        for (int y = 0; y < L; ++y)
            for (int x = 0; x < L; ++x) update(x, y);
    } else {
        for (int parity = 0; parity < 2; ++parity)
            for (int y = 0; y < L; ++y)
                for (int x = (y + parity) & 1; x < L; x += 2) update(x, y);
    }
}

void SweepEngine::run(HeightField& field, const CounterRng& rng,
                      std::uint64_t first_sweep, std::uint64_t n_sweeps,
                      Schedule schedule) const {
    for (std::uint64_t s = 0; s < n_sweeps; ++s)
        sweep(field, rng, first_sweep + s, schedule);
}

} // namespace sos
