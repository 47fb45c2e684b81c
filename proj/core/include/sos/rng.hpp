#pragma once

#include <cstdint>

namespace sos {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter).  Sweeps key the stream by sweep index and the
// counter by site index, so checkerboard updates can run in any order (or
// in parallel) and still produce identical fields.
struct CounterRng {
    std::uint64_t seed = 0;

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const noexcept {
        std::uint64_t z = mix(seed ^ 0x6a09e667f3bcc908ULL);
        z = mix(z ^ stream);
        return mix(z ^ counter);
    }

    // uniform in [0, 1)
    double uniform(std::uint64_t stream, std::uint64_t counter) const noexcept {
        return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
    }
};

// Sequential stream view for consumers that just need a plain generator
// (path sampling, test fixtures).
class SequentialRng {
public:
    explicit SequentialRng(std::uint64_t seed, std::uint64_t stream = 0)
        : rng_{seed}, stream_(stream) {}

    double uniform() { return rng_.uniform(stream_, counter_++); }
    std::uint64_t bits() { return rng_.bits(stream_, counter_++); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return bits() % n; }

private:
    CounterRng rng_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

} // namespace sos
