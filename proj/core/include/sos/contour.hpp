#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sos/height_field.hpp"
#include "sos/params.hpp"

namespace sos {

// Dual-lattice conventions.  Dual vertex (i, j), i,j in [0, L], sits at the
// plane point (i - 1/2, j - 1/2); primal site (x, y) sits at (x, y).
// A horizontal bond (i,j)-(i+1,j) separates primal (i, j-1) from (i, j);
// a vertical bond (i,j)-(i,j+1) separates primal (i-1, j) from (i, j).
struct DualVertex {
    int x = 0, y = 0;
    bool operator==(const DualVertex&) const = default;
};

struct DualBond {
    DualVertex a, b;          // endpoints, axis-aligned, length 1
    int px0 = 0, py0 = 0;     // separated primal pair
    int px1 = 0, py1 = 0;
    bool operator==(const DualBond&) const = default;
};

// Set of level-h bonds as bitmaps over the dual lattice of an L x L box.
class BondSet {
public:
    explicit BondSet(int side);
    int side() const { return side_; }

    bool h_bond(int i, int j) const { return hb_[static_cast<std::size_t>(j * side_ + i)]; }
    bool v_bond(int i, int j) const { return vb_[static_cast<std::size_t>(j * (side_ + 1) + i)]; }
    void set_h(int i, int j, bool v = true) { hb_[static_cast<std::size_t>(j * side_ + i)] = v; }
    void set_v(int i, int j, bool v = true) { vb_[static_cast<std::size_t>(j * (side_ + 1) + i)] = v; }

    std::size_t count() const;
    std::vector<DualBond> to_bonds() const;

private:
    int side_;
    std::vector<std::uint8_t> hb_; // [j in 0..L][i in 0..L-1]
    std::vector<std::uint8_t> vb_; // [j in 0..L-1][i in 0..L]
};

// Closed dual-lattice loop with its interior described by per-row intervals.
struct ContourLoop {
    std::vector<DualVertex> vertices; // closed: first == last
    int level = 0;
    int sign = +1;                    // +1 positive h-contour, -1 negative
    long length = 0;                  // bond count
    long area = 0;                    // |Lambda_gamma|, interior site count
    int bbox_x0 = 0, bbox_y0 = 0, bbox_x1 = -1, bbox_y1 = -1; // interior bbox

    // interior rows: for row y, sorted pairs [x_begin, x_end) of interior runs
    struct Row { int y; std::vector<std::pair<int, int>> runs; };
    std::vector<Row> interior_rows; // sorted by y

    bool interior_contains(int x, int y) const;
    // some interior site, if the interior is non-empty
    std::optional<std::pair<int, int>> representative() const;
};

struct LoopEnsemble {
    ModelParams params;
    long macroscopic_threshold = 0;   // ceil((log L)^2)
    // gamma[n] = macroscopic loops at level H - n, n = 0..n_max
    std::vector<std::vector<ContourLoop>> gamma;
    std::vector<ContourLoop> all_loops; // every loop at the scanned levels
    bool has_macroscopic_above_H = false; // any macroscopic (H+1)-loop?
};

// All dual bonds where the height crosses level h (boundary ring included).
BondSet level_bonds(const HeightField& field, int h);

// Partition of the bond set into closed loops using the {N,E}/{S,W}
// linked-pair convention at degree-4 dual vertices.  `swap_pairing` selects
// the alternative {N,W}/{S,E} convention for sensitivity checks.
std::vector<ContourLoop> assemble_contours(const BondSet& bonds, bool swap_pairing = false);

// Sets sign / length / area / bbox on a loop assembled at level h.
void classify_and_measure(ContourLoop& loop, const HeightField& field, int h);

// Full level-line extraction at levels H, H-1, ..., H-n_max (and the
// macroscopic check at H+1).
LoopEnsemble extract_ensemble(const HeightField& field, const ModelParams& params,
                              int n_max, bool swap_pairing = false);

// parent[i] = index of the smallest loop strictly containing loop i, or -1.
std::vector<int> nesting_forest(const std::vector<ContourLoop>& loops);

struct IsoperimetricResult {
    bool applicable = false;
    bool bound_holds = false;
    double bound = 0;        // ((1-2d)^2/(1+d)^2) L^2
    long largest_area = 0;
    int sub_square_side = 0; // largest axis-aligned square inside the largest loop
};

IsoperimetricResult isoperimetric_check(const std::vector<ContourLoop>& loops,
                                        int L, double delta);

} // namespace sos
