#include "sos/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sos {

namespace {

void normalize(std::vector<double>& v) {
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    if (s > 0)
        for (double& x : v) x /= s;
}

} // namespace

TiltedBridgeModel::TiltedBridgeModel(double beta, double mu_over_L, int d, int a,
                                     int b, int M, bool floor_at_zero)
    : beta_(beta), mu_over_L_(mu_over_L), d_(d), a_(a), b_(b), floor_(floor_at_zero) {
    if (d < 2) throw std::invalid_argument("TiltedBridgeModel: need d >= 2");
    if (!(beta > 0)) throw std::invalid_argument("TiltedBridgeModel: need beta > 0");
    if (M < 4) throw std::invalid_argument("TiltedBridgeModel: window too small");
    h_min_ = floor_at_zero ? 0 : -M;
    h_max_ = M;
    if (a < h_min_ || a > h_max_ || b < h_min_ || b > h_max_)
        throw std::invalid_argument("TiltedBridgeModel: endpoints outside window");

    // step weights e^{-beta |xi|}, truncated where they fall below 1e-16
    xi_max_ = std::max(2, static_cast<int>(std::ceil(37.0 / beta)));
    step_.assign(static_cast<std::size_t>(2 * xi_max_ + 1), 0.0);
    for (int xi = -xi_max_; xi <= xi_max_; ++xi)
        step_[static_cast<std::size_t>(xi + xi_max_)] = std::exp(-beta * std::abs(xi));

    const int W = h_max_ - h_min_ + 1;
    std::vector<double> tilt(static_cast<std::size_t>(W));
    for (int k = 0; k < W; ++k)
        tilt[static_cast<std::size_t>(k)] = std::exp(mu_over_L * (h_min_ + k));

    // forward pass: f_0 = delta_a; interior columns carry the tilt
    forward_.assign(static_cast<std::size_t>(d + 1),
                    std::vector<double>(static_cast<std::size_t>(W), 0.0));
    forward_[0][static_cast<std::size_t>(a - h_min_)] = 1.0;
    std::vector<double> conv(static_cast<std::size_t>(W));
    for (int i = 1; i <= d; ++i) {
        const auto& prev = forward_[static_cast<std::size_t>(i - 1)];
        std::fill(conv.begin(), conv.end(), 0.0);
        for (int k = 0; k < W; ++k) {
            const double w = prev[static_cast<std::size_t>(k)];
            if (w == 0.0) continue;
            const int lo = std::max(0, k - xi_max_);
            const int hi = std::min(W - 1, k + xi_max_);
            for (int k2 = lo; k2 <= hi; ++k2)
                conv[static_cast<std::size_t>(k2)] +=
                    w * step_[static_cast<std::size_t>(k2 - k + xi_max_)];
        }
        auto& cur = forward_[static_cast<std::size_t>(i)];
        if (i < d) {
            for (int k = 0; k < W; ++k)
                cur[static_cast<std::size_t>(k)] =
                    conv[static_cast<std::size_t>(k)] * tilt[static_cast<std::size_t>(k)];
        } else {
            cur = conv; // the fixed endpoint carries no tilt
        }
        normalize(cur);
    }

    // backward pass combined into marginals on the fly
    marginals_.assign(static_cast<std::size_t>(d + 1),
                      std::vector<double>(static_cast<std::size_t>(W), 0.0));
    std::vector<double> g(static_cast<std::size_t>(W), 0.0);
    g[static_cast<std::size_t>(b - h_min_)] = 1.0;
    marginals_[static_cast<std::size_t>(d)] = g;
    for (int i = d - 1; i >= 0; --i) {
        std::fill(conv.begin(), conv.end(), 0.0);
        for (int k2 = 0; k2 < W; ++k2) {
            const double w = g[static_cast<std::size_t>(k2)] *
                             (i + 1 < d ? tilt[static_cast<std::size_t>(k2)] : 1.0);
            if (w == 0.0) continue;
            const int lo = std::max(0, k2 - xi_max_);
            const int hi = std::min(W - 1, k2 + xi_max_);
            for (int k = lo; k <= hi; ++k)
                conv[static_cast<std::size_t>(k)] +=
                    w * step_[static_cast<std::size_t>(k2 - k + xi_max_)];
        }
        g = conv;
        normalize(g);
        auto& m = marginals_[static_cast<std::size_t>(i)];
        const auto& f = forward_[static_cast<std::size_t>(i)];
        for (int k = 0; k < W; ++k)
            m[static_cast<std::size_t>(k)] =
                f[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
        normalize(m);
    }

    boundary_mass_ = 0;
    for (int i = 0; i <= d; ++i) {
        const auto& m = marginals_[static_cast<std::size_t>(i)];
        double edge = m.back();
        if (!floor_) edge += m.front();
        boundary_mass_ = std::max(boundary_mass_, edge);
    }
}

double TiltedBridgeModel::mean(int i) const {
    const auto& m = marginal(i);
    double acc = 0;
    for (std::size_t k = 0; k < m.size(); ++k)
        acc += m[k] * (h_min_ + static_cast<int>(k));
    return acc;
}

double TiltedBridgeModel::variance(int i) const {
    const auto& m = marginal(i);
    const double mu = mean(i);
    double acc = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double dev = (h_min_ + static_cast<int>(k)) - mu;
        acc += m[k] * dev * dev;
    }
    return acc;
}

std::vector<int> TiltedBridgeModel::sample_path(SequentialRng& rng) const {
    const int W = h_max_ - h_min_ + 1;
    std::vector<int> path(static_cast<std::size_t>(d_ + 1));
    path[static_cast<std::size_t>(d_)] = b_;
    std::vector<double> w(static_cast<std::size_t>(2 * xi_max_ + 1));
    for (int i = d_ - 1; i >= 0; --i) {
        const int next = path[static_cast<std::size_t>(i + 1)];
        const auto& f = forward_[static_cast<std::size_t>(i)];
        double total = 0;
        const int lo = std::max(h_min_, next - xi_max_);
        const int hi = std::min(h_max_, next + xi_max_);
        for (int h = lo; h <= hi; ++h) {
            const double v = f[static_cast<std::size_t>(h - h_min_)] *
                             step_[static_cast<std::size_t>(next - h + xi_max_)];
            w[static_cast<std::size_t>(h - lo)] = v;
            total += v;
        }
        double u = rng.uniform() * total;
        int h = lo;
        for (; h < hi; ++h) {
            u -= w[static_cast<std::size_t>(h - lo)];
            if (u <= 0) break;
        }
        path[static_cast<std::size_t>(i)] = h;
    }
    (void)W;
    return path;
}

TiltedBridgeModel build_bridge(double beta, double mu_over_L, int d, int a, int b,
                               int M, bool floor_at_zero) {
    constexpr double kMassLimit = 1e-10;
    for (int attempt = 0; attempt < 5; ++attempt) {
        TiltedBridgeModel model(beta, mu_over_L, d, a, b, M, floor_at_zero);
        if (model.boundary_mass() < kMassLimit) return model;
        M *= 2;
    }
    throw std::runtime_error(
        "build_bridge: boundary mass above 1e-10 even after enlarging the window");
}

ScalingFit sup_fluctuation_scaling(double beta, double mu_base,
                                   const std::vector<int>& L_list, int n_paths,
                                   std::uint64_t seed) {
    if (L_list.size() < 3)
        throw std::invalid_argument("sup_fluctuation_scaling: need >= 3 sizes");
    if (n_paths < 1)
        throw std::invalid_argument("sup_fluctuation_scaling: need n_paths >= 1");
    ScalingFit fit;
    std::uint64_t stream = 0;
    for (int L : L_list) {
        // initial window: diffusive scale for the control, cube-root scale
        // with margin for the tilted runs; build_bridge enlarges if short
        const int M0 = std::max<int>(
            32, static_cast<int>(4.0 * std::sqrt(static_cast<double>(L))));
        TiltedBridgeModel model =
            build_bridge(beta, mu_base / L, L, 0, 0, M0, /*floor_at_zero=*/true);
        double acc = 0;
        for (int p = 0; p < n_paths; ++p) {
            SequentialRng rng(seed, stream++);
            const std::vector<int> path = model.sample_path(rng);
            acc += *std::max_element(path.begin(), path.end());
        }
        fit.sizes.push_back(static_cast<double>(L));
        fit.sup_mean.push_back(acc / n_paths);
    }
    // unweighted least squares on log-log
    const std::size_t n = fit.sizes.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(fit.sizes[i]);
        const double y = std::log(std::max(1e-300, fit.sup_mean[i]));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(fit.sizes[i]);
        const double y = std::log(std::max(1e-300, fit.sup_mean[i]));
        const double r = y - (fit.intercept + fit.slope * x);
        ss += r * r;
    }
    if (n > 2)
        fit.stderr_slope = std::sqrt(ss / (n - 2) * n / denom);
    return fit;
}

} // namespace sos
