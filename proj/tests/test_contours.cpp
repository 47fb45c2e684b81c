#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <vector>

#include "sos/contour.hpp"
#include "sos/height_field.hpp"
#include "sos/rng.hpp"

namespace {

sos::HeightField random_field(int side, int h_max, std::uint64_t seed,
                              bool allow_negative = false) {
    sos::HeightField f(side, 0, 0, !allow_negative);
    sos::SequentialRng rng(seed);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x) {
            int h = static_cast<int>(rng.below(static_cast<std::uint64_t>(h_max + 1)));
            if (allow_negative && rng.uniform() < 0.5) h = -h;
            f.set(x, y, h);
        }
    return f;
}

// point-in-polygon via ray casting on the loop's vertex chain, at the plane
// point of primal site (x, y)
bool pip(const sos::ContourLoop& loop, int x, int y) {
    const double px = x, py = y;
    bool in = false;
    const auto& v = loop.vertices;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double ax = v[i].x - 0.5, ay = v[i].y - 0.5;
        const double bx = v[i + 1].x - 0.5, by = v[i + 1].y - 0.5;
        if ((ay > py) != (by > py)) {
            const double t = (py - ay) / (by - ay);
            if (px < ax + t * (bx - ax)) in = !in;
        }
    }
    return in;
}

using BondKey = std::tuple<int, int, int, int>;

BondKey key(const sos::DualBond& b) { return {b.a.x, b.a.y, b.b.x, b.b.y}; }

} // namespace

TEST_CASE("level bonds are exactly the height-crossing dual bonds") {
    const sos::HeightField f = random_field(12, 3, 99);
    for (int h = 1; h <= 3; ++h) {
        const sos::BondSet bonds = sos::level_bonds(f, h);
        for (const sos::DualBond& b : bonds.to_bonds()) {
            const int u = f.at_ext(b.px0, b.py0);
            const int v = f.at_ext(b.px1, b.py1);
            CHECK(((u >= h) != (v >= h)));
        }
        // count check: every separating primal pair produces exactly one bond
        // (pairs into the boundary ring included; ring-ring pairs never cross)
        std::size_t expected = 0;
        for (int y = -1; y <= 12; ++y)
            for (int x = -1; x <= 12; ++x) {
                const int u = f.at_ext(x, y);
                if ((u >= h) != (f.at_ext(x + 1, y) >= h)) ++expected;
                if ((u >= h) != (f.at_ext(x, y + 1) >= h)) ++expected;
            }
        CHECK(bonds.count() == expected);
    }
}

TEST_CASE("contours partition the bond set into closed loops") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const sos::HeightField f = random_field(16, 2, seed);
        for (int h = 1; h <= 2; ++h) {
            const sos::BondSet bonds = sos::level_bonds(f, h);
            const auto loops = sos::assemble_contours(bonds);
            std::set<BondKey> seen;
            std::size_t total = 0;
            for (const sos::ContourLoop& loop : loops) {
                REQUIRE(loop.vertices.size() >= 5);
                CHECK(loop.vertices.front() == loop.vertices.back());
                for (std::size_t i = 0; i + 1 < loop.vertices.size(); ++i) {
                    const auto& a = loop.vertices[i];
                    const auto& b = loop.vertices[i + 1];
                    CHECK(std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1);
                    sos::DualBond db;
                    db.a = a.x < b.x || a.y < b.y ? a : b;
                    db.b = a.x < b.x || a.y < b.y ? b : a;
                    const bool inserted = seen.insert(key(db)).second;
                    CHECK(inserted); // no bond used twice
                    ++total;
                }
            }
            CHECK(total == bonds.count());
        }
    }
}

TEST_CASE("signed interiors reconstruct the excursion set exactly") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const sos::HeightField f = random_field(16, 3, seed * 31 + 7);
        for (int h = 1; h <= 3; ++h) {
            const sos::BondSet bonds = sos::level_bonds(f, h);
            auto loops = sos::assemble_contours(bonds);
            for (auto& loop : loops) sos::classify_and_measure(loop, f, h);
            for (int y = 0; y < 16; ++y)
                for (int x = 0; x < 16; ++x) {
                    int depth = 0;
                    for (const auto& loop : loops)
                        if (loop.interior_contains(x, y)) depth += loop.sign;
                    // boundary is 0 < h, so the signed nesting depth is the
                    // excursion indicator itself
                    CHECK(depth == (f.at(x, y) >= h ? 1 : 0));
                }
        }
    }
}

TEST_CASE("interior runs agree with the point-in-polygon oracle") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const sos::HeightField f = random_field(14, 2, seed * 101 + 3);
        const sos::BondSet bonds = sos::level_bonds(f, 1);
        auto loops = sos::assemble_contours(bonds);
        for (auto& loop : loops) sos::classify_and_measure(loop, f, 1);
        for (const auto& loop : loops)
            for (int y = 0; y < 14; ++y)
                for (int x = 0; x < 14; ++x)
                    CHECK(loop.interior_contains(x, y) == pip(loop, x, y));
    }
}

TEST_CASE("nesting forest matches containment of representatives") {
    for (std::uint64_t seed = 2; seed <= 20; ++seed) {
        const sos::HeightField f = random_field(16, 4, seed * 977);
        const sos::BondSet bonds = sos::level_bonds(f, 2);
        auto loops = sos::assemble_contours(bonds);
        for (auto& loop : loops) sos::classify_and_measure(loop, f, 2);
        const std::vector<int> parent = sos::nesting_forest(loops);
        REQUIRE(parent.size() == loops.size());
        for (std::size_t i = 0; i < loops.size(); ++i) {
            const auto rep = loops[i].representative();
            if (!rep) continue;
            // the declared parent contains i's representative; and it is the
            // smallest-area such loop
            long best_area = -1;
            int best = -1;
            for (std::size_t j = 0; j < loops.size(); ++j) {
                if (j == i) continue;
                if (loops[j].area <= loops[i].area) continue;
                if (loops[j].interior_contains(rep->first, rep->second)) {
                    if (best_area < 0 || loops[j].area < best_area) {
                        best_area = loops[j].area;
                        best = static_cast<int>(j);
                    }
                }
            }
            CHECK(parent[i] == best);
        }
    }
}

TEST_CASE("180-degree rotation maps the loop ensemble onto itself") {
    const int side = 13;
    const sos::HeightField f = random_field(side, 3, 4242);
    sos::HeightField g(side, 0, 0, true);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x) g.set(side - 1 - x, side - 1 - y, f.at(x, y));
    for (int h = 1; h <= 3; ++h) {
        auto lf = sos::assemble_contours(sos::level_bonds(f, h));
        auto lg = sos::assemble_contours(sos::level_bonds(g, h));
        for (auto& l : lf) sos::classify_and_measure(l, f, h);
        for (auto& l : lg) sos::classify_and_measure(l, g, h);
        auto sig = [](const std::vector<sos::ContourLoop>& ls) {
            std::vector<std::tuple<long, long, int>> v;
            for (const auto& l : ls) v.emplace_back(l.length, l.area, l.sign);
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sig(lf) == sig(lg));
    }
}

TEST_CASE("constructed nested plateaus produce exactly the drawn squares") {
    // heights: 3 on [4,11]^2, 2 on [2,13]^2, 0 elsewhere, L = 16, H := 3
    const int side = 16;
    sos::HeightField f(side, 0, 0, true);
    for (int y = 2; y <= 13; ++y)
        for (int x = 2; x <= 13; ++x) f.set(x, y, 2);
    for (int y = 4; y <= 11; ++y)
        for (int x = 4; x <= 11; ++x) f.set(x, y, 3);
    sos::ModelParams p = sos::derive_params(1.0, side, 1.0);
    p.H = 3; // force the inspection levels
    const sos::LoopEnsemble ens = sos::extract_ensemble(f, p, 1);
    REQUIRE(ens.gamma.size() >= 2);
    // (log 16)^2 = 7.69 -> threshold 8; both squares are macroscopic
    CHECK(ens.macroscopic_threshold == 8);
    REQUIRE(ens.gamma[0].size() == 1); // level 3: the 8x8 plateau
    REQUIRE(ens.gamma[1].size() == 1); // level 2: the 12x12 plateau
    CHECK(ens.gamma[0][0].area == 64);
    CHECK(ens.gamma[0][0].length == 32);
    CHECK(ens.gamma[1][0].area == 144);
    CHECK(ens.gamma[1][0].length == 48);
    CHECK(!ens.has_macroscopic_above_H);
}

TEST_CASE("fields with only short loops yield empty macroscopic classes") {
    sos::HeightField f(32, 0, 0, true);
    f.set(5, 5, 2);
    f.set(20, 11, 1);
    sos::ModelParams p = sos::derive_params(1.0, 32, 1.0);
    p.H = 1;
    const sos::LoopEnsemble ens = sos::extract_ensemble(f, p, 1);
    for (const auto& cls : ens.gamma) CHECK(cls.empty());
    CHECK(!ens.has_macroscopic_above_H);
    CHECK(ens.all_loops.size() == 3); // two level-1 loops, one level-2
}

TEST_CASE("the alternative vertex pairing preserves bonds and areas") {
    const sos::HeightField f = random_field(16, 3, 555);
    const sos::BondSet bonds = sos::level_bonds(f, 1);
    auto a = sos::assemble_contours(bonds, false);
    auto b = sos::assemble_contours(bonds, true);
    std::size_t la = 0, lb = 0;
    for (const auto& l : a) la += l.vertices.size() - 1;
    for (const auto& l : b) lb += l.vertices.size() - 1;
    CHECK(la == bonds.count());
    CHECK(lb == bonds.count());
}
