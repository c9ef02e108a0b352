#pragma once

#include <cstdint>

namespace ree2g2 {

/*
 * splitmix64 stream. Used everywhere randomness is needed so that runs are
 * reproducible from a seed across platforms and across serial/parallel
 * execution (a fresh stream can be derived per sample index).
 */
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /* value in [0, bound), bound > 0; modulo bias is irrelevant at our sizes */
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /* independent stream for a sample index (used by the parallel sweeps) */
    static SplitMix64 for_index(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        g.next();
        return g;
    }
};

}  // namespace ree2g2
