#pragma once

#include <cstdint>
#include <vector>

namespace sos {

// Integer height field on an L x L box.  Interior sites are mutable; the
// one-site ring outside the box holds the boundary condition and never
// changes.  When the floor is active every interior height is >= 0.
class HeightField {
public:
    HeightField(int side, int init_height, int boundary_height, bool floor);

    int side() const { return side_; }
    bool floor() const { return floor_; }
    int boundary_height() const { return boundary_; }

    int at(int x, int y) const { return h_[idx(x, y)]; }
    void set(int x, int y, int v) { h_[idx(x, y)] = v; }

    // Height at (x, y) where coordinates may step one site outside the box.
    int at_ext(int x, int y) const {
        if (x < 0 || y < 0 || x >= side_ || y >= side_) return boundary_;
        return h_[idx(x, y)];
    }

    const std::vector<std::int32_t>& data() const { return h_; }
    std::vector<std::int32_t>& data() { return h_; }

    int max_height() const;
    int min_height() const;

    // FNV-1a over the raw heights; used by determinism checks.
    std::uint64_t checksum() const;

    bool satisfies_floor() const;

private:
    int idx(int x, int y) const { return y * side_ + x; }

    int side_;
    int boundary_;
    bool floor_;
    std::vector<std::int32_t> h_;
};

} // namespace sos
