#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sos/contour.hpp"
#include "sos/geometry.hpp"
#include "sos/height_field.hpp"
#include "sos/params.hpp"

namespace sos {

// Exact height histogram of a snapshot with the concentration events
// E_h = { #{x : eta_x = h} >= threshold * L^2 } at h = H and H-1.
struct ConcentrationReport {
    std::vector<std::pair<int, double>> fractions; // (height, fraction), sorted
    int H = 0;
    double strict_threshold = 0.9;
    double relaxed_threshold = 0.8;
    bool e_strict_H = false, e_strict_Hm1 = false;
    bool e_relaxed_H = false, e_relaxed_Hm1 = false;

    double fraction_at(int h) const;
};

ConcentrationReport height_concentration(const HeightField& field,
                                         const ModelParams& params,
                                         double relaxed_threshold = 0.8);

// Flat-part fluctuation profile rho(x) = max{ y <= L/2 : (x, y) on the loop }
// over the interval I_eps = [a(1+eps) L, (1 - a(1+eps)) L], in dual-lattice
// units; plus local sups on disjoint windows of length L^{2/3 - eps}.
struct FlatFluctuation {
    bool applicable = false;
    int x_begin = 0, x_end = 0;      // dual-column range [x_begin, x_end]
    std::vector<int> rho;            // per column; kMissing where the loop is absent
    int missing_count = 0;
    int sup = 0;
    int window_len = 0;
    std::vector<int> window_sups;    // local sup per full window
    int min_window_sup = 0;

    static constexpr int kMissing = INT32_MIN;
};

FlatFluctuation flat_fluctuation(const ContourLoop& loop, int L, double eps,
                                 double a_flat);

// Weighted least squares of log(y) on log(x).
struct RegressionFit {
    double slope = 0, intercept = 0, stderr_slope = 0;
    std::vector<double> residuals;
};

RegressionFit exponent_regression(const std::vector<std::pair<double, double>>& xy,
                                  const std::vector<double>& weights = {});

// Comparison of observed surface maxima against the predicted centerings
// (3/4beta) log L (with floor) and (1/2beta) log L (without floor).
struct MaximaReport {
    double beta = 0;
    int L = 0;
    double center_floor = 0, center_nofloor = 0;
    double mean_floor = 0, ci_floor = 0;       // 95% CI half-width
    double mean_nofloor = 0, ci_nofloor = 0;
    double dev_floor = 0, dev_nofloor = 0;     // mean - center
    double window = 3.0;                       // additive pass window
    bool pass_floor = false, pass_nofloor = false;
    bool floor_dominates = false;              // CI-separated mean ordering
};

MaximaReport maxima_report(const std::vector<int>& maxima_with_floor,
                           const std::vector<int>& maxima_without_floor,
                           double beta, int L, double window = 3.0);

// Loop rescaled by 1/L into the unit square (dual vertex (i,j) at plane point
// ((i-1/2)/L, (j-1/2)/L)), for Hausdorff comparison against limit shapes.
Polyline loop_to_unit_polyline(const ContourLoop& loop, int L);

} // namespace sos
