#ifndef TEMPUS_RNG_HPP
#define TEMPUS_RNG_HPP

#include <cstdint>

// Seeded generator used by all instance generators so that every seed maps
// to one instance on every platform.  This is the public splitmix64 mixer
// (Steele/Lea/Flood); the three 64-bit constants below are part of that
// algorithm's published definition, not tuning knobs of this project.

namespace tempus {

struct SplitMix64 {
    std::uint64_t state;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform-enough draw from [0, bound); the modulo bias is negligible for
    // the small bounds used here.  bound must be positive.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // True with probability roughly p.
    bool coin(double p) {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0) < p;
    }
};

} // namespace tempus

#endif // TEMPUS_RNG_HPP
