#pragma once

#include <cstdint>
#include <random>

namespace rmtcross::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based substream: the engine state depends only on
/// (seed, index), so realizations can be generated in any order or from
/// any number of workers with bit-identical results.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    const std::uint64_t whitened = splitmix64(s);
    std::uint64_t t = whitened ^ (index * 0xD1B54A32D192ED03ull);
    return std::mt19937_64(splitmix64(t));
}

/// Deterministic child seed for a named sub-task of a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed ^ (salt * 0x9E3779B97F4A7C15ull);
    return splitmix64(s);
}

}  // namespace rmtcross::rng
