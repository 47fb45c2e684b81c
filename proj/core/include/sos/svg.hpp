#pragma once

#include <string>
#include <vector>

#include "sos/contour.hpp"
#include "sos/wulff.hpp"

namespace sos {

// Level-line rendering of a snapshot's loop ensemble: one polyline per loop
// with at least min_length bonds, colored by level.
std::string loops_svg(const std::vector<ContourLoop>& loops, int side,
                      long min_length = 100);

// Overlay of limit shapes (e.g. L_c(lambda e^{4 beta n}) for n = 0..n_max)
// in the unit square.
std::string shapes_svg(const std::vector<LimitShape>& shapes);

} // namespace sos
