// rng.hpp — splitmix64 mixing and counter-based draw helpers.
//
// Everything that must be reproducible bit-for-bit across runs goes through
// these functions: walk steps, per-site particle counts, per-replica seeds.
#pragma once

#include <cstdint>

namespace frog {

// SplitMix64 finalizer. Full-period 64-bit mixer with good avalanche.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derive the k-th child seed from a master seed. Used for per-replica
// streams; children of distinct (seed, k) are statistically independent.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t k) {
    return splitmix64(seed ^ splitmix64(k + 0x632be59bd9b4e019ULL));
}

// Map a 64-bit draw to [0, bound) without modulo bias worth speaking of
// (Lemire multiply-shift; bias < bound / 2^64).
inline std::uint32_t bounded(std::uint64_t r, std::uint32_t bound) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(r) * bound) >> 64);
}

// Uniform double in (0, 1]: 53 random bits, never exactly 0.
inline double u01(std::uint64_t r) {
    return (static_cast<double>(r >> 11) + 1.0) * 0x1p-53;
}

}  // namespace frog
