#pragma once

#include <cstdint>
#include <random>

namespace unlearn {

// splitmix64; used to turn (master seed, index) pairs into decorrelated
// per-trial seeds so trials stay reproducible independent of ordering.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x51ed270b7a64ef15ULL));
}

// Uniform double in [0, 1) with 53 random bits. std::mt19937_64 output is
// specified by the standard, so this is bit-reproducible across platforms,
// unlike std::uniform_real_distribution.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) via rejection sampling.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
    return uniform_unit(rng) < p;
}

} // namespace unlearn
