#pragma once

#include <cstdint>

namespace tiler {

// Stateless splitmix64-style finalizer; the only randomness primitive in the
// library. Every random quantity is a pure function of (seed, stream indices),
// so runs are reproducible regardless of evaluation order or parallelism.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t draw_u64(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0,
                                 std::uint64_t d = 0) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    h = mix64(h ^ d);
    return h;
}

// Maps a uniform 64-bit draw into [0, n) by multiply-high. The modulo bias is
// below 2^-40 for every n used here, far beneath the Monte Carlo tolerances.
constexpr std::uint64_t draw_below(std::uint64_t h, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(h) * n) >> 64);
}

}  // namespace tiler
