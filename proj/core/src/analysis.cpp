#include "sos/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sos {

double ConcentrationReport::fraction_at(int h) const {
    for (const auto& [height, frac] : fractions)
        if (height == h) return frac;
    return 0.0;
}

ConcentrationReport height_concentration(const HeightField& field,
                                         const ModelParams& params,
                                         double relaxed_threshold) {
    ConcentrationReport rep;
    rep.H = params.H;
    rep.relaxed_threshold = relaxed_threshold;
    std::map<int, long> counts;
    for (int v : field.data()) ++counts[v];
    const double n = static_cast<double>(field.side()) * field.side();
    for (const auto& [h, c] : counts)
        rep.fractions.emplace_back(h, static_cast<double>(c) / n);
    const double fH = rep.fraction_at(params.H);
    const double fHm1 = rep.fraction_at(params.H - 1);
    rep.e_strict_H = fH >= rep.strict_threshold;
    rep.e_strict_Hm1 = fHm1 >= rep.strict_threshold;
    rep.e_relaxed_H = fH >= relaxed_threshold;
    rep.e_relaxed_Hm1 = fHm1 >= relaxed_threshold;
    return rep;
}

FlatFluctuation flat_fluctuation(const ContourLoop& loop, int L, double eps,
                                 double a_flat) {
    if (L < 4 || !(eps >= 0) || !(a_flat > 0))
        throw std::invalid_argument("flat_fluctuation: bad arguments");
    FlatFluctuation out;
    const double lo = a_flat * (1.0 + eps) * L;
    const double hi = (1.0 - a_flat * (1.0 + eps)) * L;
    out.x_begin = static_cast<int>(std::ceil(lo));
    out.x_end = static_cast<int>(std::floor(hi));
    if (out.x_end < out.x_begin)
        throw std::invalid_argument("flat_fluctuation: empty interval I_eps");

    const int ncols = out.x_end - out.x_begin + 1;
    out.rho.assign(static_cast<std::size_t>(ncols), FlatFluctuation::kMissing);
    // dual vertex (i, j) sits at plane point (i - 1/2, j - 1/2); keep points in
    // the lower half y <= L/2
    for (const DualVertex& v : loop.vertices) {
        if (v.x < out.x_begin || v.x > out.x_end) continue;
        if (v.y - 0.5 > L / 2.0) continue;
        int& r = out.rho[static_cast<std::size_t>(v.x - out.x_begin)];
        r = std::max(r, v.y);
    }
    out.sup = FlatFluctuation::kMissing;
    for (int r : out.rho) {
        if (r == FlatFluctuation::kMissing) ++out.missing_count;
        else out.sup = std::max(out.sup, r);
    }
    if (out.sup == FlatFluctuation::kMissing) {
        out.applicable = false; // loop never enters the lower half over I_eps
        return out;
    }
    out.applicable = true;

    out.window_len = std::max(
        1, static_cast<int>(std::llround(std::pow(L, 2.0 / 3.0 - eps))));
    out.min_window_sup = INT32_MAX;
    for (int start = 0; start + out.window_len <= ncols; start += out.window_len) {
        int wsup = FlatFluctuation::kMissing;
        for (int k = 0; k < out.window_len; ++k) {
            const int r = out.rho[static_cast<std::size_t>(start + k)];
            if (r != FlatFluctuation::kMissing) wsup = std::max(wsup, r);
        }
        out.window_sups.push_back(wsup);
        if (wsup != FlatFluctuation::kMissing)
            out.min_window_sup = std::min(out.min_window_sup, wsup);
    }
    if (out.window_sups.empty()) {
        out.window_sups.push_back(out.sup);
        out.min_window_sup = out.sup;
    }
    return out;
}

RegressionFit exponent_regression(const std::vector<std::pair<double, double>>& xy,
                                  const std::vector<double>& weights) {
    if (xy.size() < 3)
        throw std::invalid_argument("exponent_regression: need >= 3 points");
    if (!weights.empty() && weights.size() != xy.size())
        throw std::invalid_argument("exponent_regression: weight size mismatch");
    const std::size_t n = xy.size();
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xy[i].first > 0) || !(xy[i].second > 0))
            throw std::invalid_argument("exponent_regression: need positive data");
        const double w = weights.empty() ? 1.0 : weights[i];
        const double x = std::log(xy[i].first);
        const double y = std::log(xy[i].second);
        sw += w; sx += w * x; sy += w * y; sxx += w * x * x; sxy += w * x * y;
    }
    const double denom = sw * sxx - sx * sx;
    if (!(denom > 0))
        throw std::invalid_argument("exponent_regression: degenerate abscissae");
    RegressionFit fit;
    fit.slope = (sw * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / sw;
    double ss = 0, wsum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const double r = std::log(xy[i].second) -
                         (fit.intercept + fit.slope * std::log(xy[i].first));
        fit.residuals.push_back(r);
        ss += w * r * r;
        wsum += w;
    }
    fit.stderr_slope = std::sqrt(ss / (n - 2.0) * sw / denom);
    (void)wsum;
    return fit;
}

namespace {

struct MeanCi {
    double mean = 0, ci = 0;
};

MeanCi mean_ci(const std::vector<int>& xs) {
    MeanCi r;
    if (xs.empty()) return r;
    double s = 0;
    for (int x : xs) s += x;
    r.mean = s / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double v = 0;
        for (int x : xs) v += (x - r.mean) * (x - r.mean);
        v /= static_cast<double>(xs.size() - 1);
        r.ci = 1.96 * std::sqrt(v / static_cast<double>(xs.size()));
    }
    return r;
}

} // namespace

MaximaReport maxima_report(const std::vector<int>& maxima_with_floor,
                           const std::vector<int>& maxima_without_floor,
                           double beta, int L, double window) {
    if (!(beta > 0) || L < 2)
        throw std::invalid_argument("maxima_report: bad beta / L");
    MaximaReport rep;
    rep.beta = beta;
    rep.L = L;
    rep.window = window;
    rep.center_floor = (3.0 / (4.0 * beta)) * std::log(static_cast<double>(L));
    rep.center_nofloor = (1.0 / (2.0 * beta)) * std::log(static_cast<double>(L));
    const MeanCi f = mean_ci(maxima_with_floor);
    const MeanCi nf = mean_ci(maxima_without_floor);
    rep.mean_floor = f.mean;
    rep.ci_floor = f.ci;
    rep.mean_nofloor = nf.mean;
    rep.ci_nofloor = nf.ci;
    rep.dev_floor = f.mean - rep.center_floor;
    rep.dev_nofloor = nf.mean - rep.center_nofloor;
    rep.pass_floor = !maxima_with_floor.empty() && std::abs(rep.dev_floor) <= window;
    rep.pass_nofloor =
        !maxima_without_floor.empty() && std::abs(rep.dev_nofloor) <= window;
    rep.floor_dominates = !maxima_with_floor.empty() &&
                          !maxima_without_floor.empty() &&
                          f.mean - f.ci > nf.mean + nf.ci;
    return rep;
}

Polyline loop_to_unit_polyline(const ContourLoop& loop, int L) {
    Polyline out;
    out.reserve(loop.vertices.size());
    for (const DualVertex& v : loop.vertices)
        out.push_back({(v.x - 0.5) / L, (v.y - 0.5) / L});
    return out;
}

} // namespace sos
