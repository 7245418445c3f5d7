#pragma once

#include <cstdint>

namespace forge {

// splitmix64 (Steele/Lea/Flood mixing constants).  Chosen as the seeded
// generator because the whole sequence is pinned by three multiplies and
// shifts, so sampled artifacts can be reproduced from any language.
// uniform(n) reduces by modulo; determinism matters here, not bias.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, n); n must be positive.
    std::uint64_t uniform(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

}  // namespace forge
