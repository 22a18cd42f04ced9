#pragma once

#include <cstdint>

namespace texbench {

// SplitMix64 (Steele/Lea/Flood mixing constants). Every stochastic step in
// the toolkit (noise corpora, salt-and-pepper masks) draws from this
// generator so that a given seed reproduces identical bytes on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Draw in [0, bound) by modulo reduction; bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace texbench
