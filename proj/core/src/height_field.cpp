#include "sos/height_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace sos {

HeightField::HeightField(int side, int init_height, int boundary_height, bool floor)
    : side_(side), boundary_(boundary_height), floor_(floor),
      h_(static_cast<std::size_t>(side) * side, init_height) {
    if (side < 1) throw std::invalid_argument("HeightField: side must be >= 1");
    if (floor && init_height < 0)
        throw std::invalid_argument("HeightField: initial height below floor");
}

int HeightField::max_height() const {
    return *std::max_element(h_.begin(), h_.end());
}

int HeightField::min_height() const {
    return *std::min_element(h_.begin(), h_.end());
}

std::uint64_t HeightField::checksum() const {
    std::uint64_t hash = 1469598103934665603ULL;
    for (std::int32_t v : h_) {
        auto u = static_cast<std::uint32_t>(v);
        for (int i = 0; i < 4; ++i) {
            hash ^= (u >> (8 * i)) & 0xff;
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

bool HeightField::satisfies_floor() const {
    if (!floor_) return true;
    return std::all_of(h_.begin(), h_.end(), [](std::int32_t v) { return v >= 0; });
}

} // namespace sos
