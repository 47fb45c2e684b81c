#pragma once

#include <cmath>
#include <vector>

namespace sos {

struct Vec2 {
    double x = 0, y = 0;
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
};

using Polyline = std::vector<Vec2>;

// signed area of a closed polyline (first point repeated or not)
double polygon_area(const Polyline& p);

// resample so consecutive points are at most max_spacing apart
Polyline densify(const Polyline& p, double max_spacing);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// symmetric Hausdorff distance between two closed curves; the wrap-around
// segment is included even when the first point is not repeated, and both
// curves are densified internally at the given resolution
double hausdorff_distance(const Polyline& p, const Polyline& q,
                          double resolution = 1e-3);

} // namespace sos
