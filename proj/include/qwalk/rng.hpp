#pragma once

#include <cstdint>

namespace qwalk {

/// splitmix64; used for seed derivation and as a small deterministic generator
/// so outputs do not depend on the standard library's distribution internals.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// uniform in [-half_width, half_width]
    double uniform_centered(double half_width) {
        return (2.0 * uniform() - 1.0) * half_width;
    }
};

/// Derive an independent stream seed for (seed, index) pairs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
    g.next();
    return g.next();
}

}  // namespace qwalk
