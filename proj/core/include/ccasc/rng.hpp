#pragma once
// Splittable counter-based random numbers keyed by (seed, stream, step, draw).
// Every value is a pure function of its key, so simulated paths reproduce
// exactly regardless of scheduling or thread count.

#include <cstdint>

namespace ccasc {
namespace rng {

// 64-bit finalizer (splitmix64-style avalanche).
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t step, std::uint64_t draw) {
    constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t h = mix64(seed + gamma);
    h = mix64(h ^ (stream + gamma));
    h = mix64(h ^ (step + gamma));
    h = mix64(h ^ (draw + gamma));
    return h;
}

// Uniform draw in the open interval (0,1).
inline double uniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t step, std::uint64_t draw) {
    const std::uint64_t bits = key(seed, stream, step, draw) >> 11;  // 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

// Standard normal draw via the inverse cdf.
double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t step,
              std::uint64_t draw);

}  // namespace rng
}  // namespace ccasc
