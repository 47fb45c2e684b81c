#include "sos/geometry.hpp"

#include <algorithm>
#include <limits>

namespace sos {

double polygon_area(const Polyline& p) {
    if (p.size() < 3) return 0.0;
    double acc = 0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = p[i];
        const Vec2& b = p[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    return 0.5 * acc;
}

Polyline densify(const Polyline& p, double max_spacing) {
    Polyline out;
    if (p.empty()) return out;
    out.push_back(p.front());
    for (std::size_t i = 1; i < p.size(); ++i) {
        const Vec2 a = p[i - 1], b = p[i];
        const double len = (b - a).norm();
        const int n = std::max(1, static_cast<int>(std::ceil(len / max_spacing)));
        for (int k = 1; k <= n; ++k) {
            const double t = static_cast<double>(k) / n;
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    if (len2 == 0) return (p - a).norm();
    double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return (p - Vec2{a.x + t * ab.x, a.y + t * ab.y}).norm();
}

namespace {

double directed_hausdorff(const Polyline& pts, const Polyline& segs) {
    double worst = 0;
    for (const Vec2& p : pts) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < segs.size(); ++i) {
            best = std::min(best, point_segment_distance(p, segs[i - 1], segs[i]));
            if (best <= worst) break; // cannot raise the sup
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

double hausdorff_distance(const Polyline& p, const Polyline& q, double resolution) {
    if (p.empty() || q.empty())
        return std::numeric_limits<double>::infinity();
    if (p.size() == 1 && q.size() == 1) return (p.front() - q.front()).norm();
    // boundaries are closed curves: include the wrap-around segment when the
    // first point is not repeated
    auto closed = [](const Polyline& v) {
        Polyline out = v;
        if (out.size() > 2 && (out.front() - out.back()).norm() > 0)
            out.push_back(out.front());
        return out;
    };
    const Polyline pc = closed(p);
    const Polyline qc = closed(q);
    const Polyline pd = densify(pc, resolution);
    const Polyline qd = densify(qc, resolution);
    return std::max(directed_hausdorff(pd, qc.size() > 1 ? qc : qd),
                    directed_hausdorff(qd, pc.size() > 1 ? pc : pd));
}

} // namespace sos
