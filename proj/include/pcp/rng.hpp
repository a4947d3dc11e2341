#pragma once

#include <cstdint>

namespace pcp {

// splitmix64 (Steele, Lea, Flood 2014). Chosen for portability: the particle
// perturbations must reproduce bit-for-bit across platforms and thread
// counts, which rules out distribution adapters from <random>.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Keyed draw: one independent stream per (seed, key) pair.
inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t key) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ key;
    return splitmix64(s);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform double in [-1, 1].
inline double symmetric_unit(std::uint64_t seed, std::uint64_t key) {
    return 2.0 * unit_double(keyed_u64(seed, key)) - 1.0;
}

}  // namespace pcp
