#include "sos/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sos {

BondSet::BondSet(int side)
    : side_(side),
      hb_(static_cast<std::size_t>(side) * (side + 1), 0),
      vb_(static_cast<std::size_t>(side + 1) * side, 0) {}

std::size_t BondSet::count() const {
    auto nz = [](const std::vector<std::uint8_t>& v) {
        return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
    };
    return nz(hb_) + nz(vb_);
}

std::vector<DualBond> BondSet::to_bonds() const {
    std::vector<DualBond> out;
    for (int j = 0; j <= side_; ++j)
        for (int i = 0; i < side_; ++i)
            if (h_bond(i, j))
                out.push_back({{i, j}, {i + 1, j}, i, j - 1, i, j});
    for (int j = 0; j < side_; ++j)
        for (int i = 0; i <= side_; ++i)
            if (v_bond(i, j))
                out.push_back({{i, j}, {i, j + 1}, i - 1, j, i, j});
    return out;
}

BondSet level_bonds(const HeightField& field, int h) {
    const int L = field.side();
    BondSet bs(L);
    // horizontal bonds: vertical height crossings between (i, j-1) and (i, j)
    for (int j = 0; j <= L; ++j)
        for (int i = 0; i < L; ++i)
            if ((field.at_ext(i, j - 1) >= h) != (field.at_ext(i, j) >= h))
                bs.set_h(i, j);
    // vertical bonds: horizontal crossings between (i-1, j) and (i, j)
    for (int j = 0; j < L; ++j)
        for (int i = 0; i <= L; ++i)
            if ((field.at_ext(i - 1, j) >= h) != (field.at_ext(i, j) >= h))
                bs.set_v(i, j);
    return bs;
}

namespace {

// slots at a dual vertex
enum Slot : int { N = 0, E = 1, S = 2, W = 3 };

struct Tracer {
    const BondSet& bs;
    int L;
    bool swap_pairing;
    std::vector<std::uint8_t> h_seen, v_seen;

    Tracer(const BondSet& b, bool swap)
        : bs(b), L(b.side()), swap_pairing(swap),
          h_seen(static_cast<std::size_t>(L) * (L + 1), 0),
          v_seen(static_cast<std::size_t>(L + 1) * L, 0) {}

    bool has(int x, int y, int slot) const {
        switch (slot) {
        case N: return y < L && bs.v_bond(x, y);
        case S: return y > 0 && bs.v_bond(x, y - 1);
        case E: return x < L && bs.h_bond(x, y);
        case W: return x > 0 && bs.h_bond(x - 1, y);
        }
        return false;
    }

    // canonical bond key: (is_vertical, i, j)
    std::uint8_t& seen(int x, int y, int slot) {
        switch (slot) {
        case N: return v_seen[static_cast<std::size_t>(y * (L + 1) + x)];
        case S: return v_seen[static_cast<std::size_t>((y - 1) * (L + 1) + x)];
        case E: return h_seen[static_cast<std::size_t>(y * L + x)];
        default: return h_seen[static_cast<std::size_t>(y * L + x - 1)];
        }
    }

    int degree(int x, int y) const {
        return has(x, y, N) + has(x, y, E) + has(x, y, S) + has(x, y, W);
    }

    int exit_slot(int x, int y, int in) const {
        const int deg = degree(x, y);
        if (deg == 2) {
            for (int s = 0; s < 4; ++s)
                if (s != in && has(x, y, s)) return s;
            throw std::logic_error("contour tracer: lost the second bond");
        }
        if (deg == 4) {
            // linked pairs: {N,E} and {S,W} (or {N,W} / {S,E} when swapped)
            if (!swap_pairing) {
                switch (in) { case N: return E; case E: return N; case S: return W; default: return S; }
            }
            switch (in) { case N: return W; case W: return N; case S: return E; default: return S; }
        }
        throw std::logic_error("assemble_contours: odd-degree dual vertex");
    }

    ContourLoop trace(int x0, int y0, int start_slot) {
        ContourLoop loop;
        int x = x0, y = y0, in = start_slot;
        seen(x, y, in) = 1;
        loop.vertices.push_back({x, y});
        loop.length = 1;
        for (;;) {
            const int out = exit_slot(x, y, in);
            // does `out` traverse the start bond?
            std::uint8_t& mark = seen(x, y, out);
            if (mark) {
                // must be the start bond, closing the loop
                loop.vertices.push_back({x + dx(out), y + dy(out)});
                break;
            }
            mark = 1;
            x += dx(out);
            y += dy(out);
            in = opposite(out);
            loop.vertices.push_back({x, y});
            ++loop.length;
        }
        return loop;
    }

    static int dx(int slot) { return slot == E ? 1 : slot == W ? -1 : 0; }
    static int dy(int slot) { return slot == N ? 1 : slot == S ? -1 : 0; }
    static int opposite(int slot) { return (slot + 2) & 3; }
};

void build_interior(ContourLoop& loop) {
    // vertical bonds of the loop, bucketed by the primal row they cross
    std::vector<std::pair<int, int>> vbonds; // (row j, dual x)
    const auto& v = loop.vertices;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        if (v[k].x == v[k + 1].x) {
            const int j = std::min(v[k].y, v[k + 1].y);
            vbonds.emplace_back(j, v[k].x);
        }
    }
    std::sort(vbonds.begin(), vbonds.end());
    loop.interior_rows.clear();
    loop.area = 0;
    loop.bbox_x0 = loop.bbox_y0 = 0;
    loop.bbox_x1 = loop.bbox_y1 = -1;
    bool first = true;
    std::size_t k = 0;
    while (k < vbonds.size()) {
        const int row = vbonds[k].first;
        ContourLoop::Row r;
        r.y = row;
        while (k + 1 < vbonds.size() && vbonds[k + 1].first == row) {
            const int x0 = vbonds[k].second, x1 = vbonds[k + 1].second;
            r.runs.emplace_back(x0, x1); // sites x0 .. x1-1
            loop.area += x1 - x0;
            if (first) {
                loop.bbox_x0 = x0; loop.bbox_x1 = x1 - 1;
                loop.bbox_y0 = loop.bbox_y1 = row;
                first = false;
            } else {
                loop.bbox_x0 = std::min(loop.bbox_x0, x0);
                loop.bbox_x1 = std::max(loop.bbox_x1, x1 - 1);
                loop.bbox_y0 = std::min(loop.bbox_y0, row);
                loop.bbox_y1 = std::max(loop.bbox_y1, row);
            }
            k += 2;
        }
        if (r.runs.empty())
            throw std::logic_error("build_interior: odd crossing count in a row");
        if (k < vbonds.size() && vbonds[k].first == row)
            throw std::logic_error("build_interior: odd crossing count in a row");
        loop.interior_rows.push_back(std::move(r));
    }
}

} // namespace

bool ContourLoop::interior_contains(int x, int y) const {
    auto it = std::lower_bound(interior_rows.begin(), interior_rows.end(), y,
                               [](const Row& r, int yy) { return r.y < yy; });
    if (it == interior_rows.end() || it->y != y) return false;
    for (const auto& [x0, x1] : it->runs)
        if (x >= x0 && x < x1) return true;
    return false;
}

std::optional<std::pair<int, int>> ContourLoop::representative() const {
    if (interior_rows.empty()) return std::nullopt;
    const auto& r = interior_rows.front();
    return std::make_pair(r.runs.front().first, r.y);
}

std::vector<ContourLoop> assemble_contours(const BondSet& bonds, bool swap_pairing) {
    Tracer tr(bonds, swap_pairing);
    const int L = bonds.side();
    std::vector<ContourLoop> loops;
    for (int j = 0; j <= L; ++j)
        for (int i = 0; i < L; ++i)
            if (bonds.h_bond(i, j) && !tr.h_seen[static_cast<std::size_t>(j * L + i)]) {
                // start at the east endpoint, arriving through the W slot
                loops.push_back(tr.trace(i + 1, j, W));
                build_interior(loops.back());
            }
    for (int j = 0; j < L; ++j)
        for (int i = 0; i <= L; ++i)
            if (bonds.v_bond(i, j) && !tr.v_seen[static_cast<std::size_t>(j * (L + 1) + i)]) {
                loops.push_back(tr.trace(i, j + 1, S));
                build_interior(loops.back());
            }
    return loops;
}

void classify_and_measure(ContourLoop& loop, const HeightField& field, int h) {
    loop.level = h;
    if (loop.interior_rows.empty())
        throw std::logic_error("classify_and_measure: loop with empty interior");
    int sign = 0;
    for (const auto& r : loop.interior_rows) {
        // the first site of each run touches a loop bond, so it is on the
        // inner boundary ring Delta+
        const int x = r.runs.front().first;
        const int s = field.at_ext(x, r.y) >= h ? +1 : -1;
        if (sign == 0) sign = s;
        else if (sign != s)
            throw std::logic_error("classify_and_measure: inconsistent contour sign");
    }
    loop.sign = sign;
}

LoopEnsemble extract_ensemble(const HeightField& field, const ModelParams& params,
                              int n_max, bool swap_pairing) {
    LoopEnsemble ens;
    ens.params = params;
    const double logL = std::log(static_cast<double>(params.L));
    ens.macroscopic_threshold = static_cast<long>(std::ceil(logL * logL));
    ens.gamma.resize(static_cast<std::size_t>(n_max + 1));

    // macroscopic check one level above H
    {
        BondSet bs = level_bonds(field, params.H + 1);
        auto loops = assemble_contours(bs, swap_pairing);
        for (auto& lp : loops) {
            classify_and_measure(lp, field, params.H + 1);
            if (lp.length >= ens.macroscopic_threshold && lp.sign > 0)
                ens.has_macroscopic_above_H = true;
            ens.all_loops.push_back(std::move(lp));
        }
    }
    for (int n = 0; n <= n_max; ++n) {
        const int h = params.H - n;
        BondSet bs = level_bonds(field, h);
        auto loops = assemble_contours(bs, swap_pairing);
        for (auto& lp : loops) {
            classify_and_measure(lp, field, h);
            if (lp.length >= ens.macroscopic_threshold && lp.sign > 0)
                ens.gamma[static_cast<std::size_t>(n)].push_back(lp);
            ens.all_loops.push_back(std::move(lp));
        }
    }
    return ens;
}

std::vector<int> nesting_forest(const std::vector<ContourLoop>& loops) {
    const int n = static_cast<int>(loops.size());
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        auto rep = loops[static_cast<std::size_t>(i)].representative();
        if (!rep) continue;
        int best = -1;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const auto& a = loops[static_cast<std::size_t>(j)];
            const auto& b = loops[static_cast<std::size_t>(i)];
            // containment in a nested-or-disjoint family; equal interiors
            // order by level (the deeper level is the child)
            if (a.area < b.area) continue;
            if (a.area == b.area && !(a.level < b.level)) continue;
            if (!a.interior_contains(rep->first, rep->second)) continue;
            if (best < 0) { best = j; continue; }
            const auto& c = loops[static_cast<std::size_t>(best)];
            if (a.area < c.area || (a.area == c.area && a.level > c.level)) best = j;
        }
        parent[static_cast<std::size_t>(i)] = best;
    }
    return parent;
}

IsoperimetricResult isoperimetric_check(const std::vector<ContourLoop>& loops,
                                        int L, double delta) {
    IsoperimetricResult res;
    if (loops.empty()) return res;
    double len_sum = 0, area_sum = 0;
    const ContourLoop* largest = &loops.front();
    for (const auto& lp : loops) {
        len_sum += static_cast<double>(lp.length);
        area_sum += static_cast<double>(lp.area);
        if (lp.area > largest->area) largest = &lp;
    }
    const double L2 = static_cast<double>(L) * L;
    if (!(len_sum <= (1 + delta) * 4 * L && area_sum >= (1 - 2 * delta) * L2))
        return res; // hypothesis not met
    res.applicable = true;
    res.bound = (1 - 2 * delta) * (1 - 2 * delta) / ((1 + delta) * (1 + delta)) * L2;
    res.largest_area = largest->area;
    res.bound_holds = static_cast<double>(largest->area) >= res.bound - 1e-9;

    // largest inscribed axis-aligned square via the classic all-ones-square DP
    const int w = largest->bbox_x1 - largest->bbox_x0 + 1;
    const int h = largest->bbox_y1 - largest->bbox_y0 + 1;
    if (w > 0 && h > 0) {
        std::vector<int> prev(static_cast<std::size_t>(w), 0), cur(static_cast<std::size_t>(w), 0);
        int best = 0;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!largest->interior_contains(largest->bbox_x0 + x, largest->bbox_y0 + y)) {
                    cur[static_cast<std::size_t>(x)] = 0;
                    continue;
                }
                const int left = x > 0 ? cur[static_cast<std::size_t>(x - 1)] : 0;
                const int up = prev[static_cast<std::size_t>(x)];
                const int diag = x > 0 ? prev[static_cast<std::size_t>(x - 1)] : 0;
                cur[static_cast<std::size_t>(x)] = 1 + std::min({left, up, diag});
                best = std::max(best, cur[static_cast<std::size_t>(x)]);
            }
            std::swap(prev, cur);
        }
        res.sub_square_side = best;
    }
    return res;
}

} // namespace sos
