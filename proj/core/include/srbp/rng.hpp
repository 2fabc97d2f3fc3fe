#ifndef SRBP_RNG_HPP
#define SRBP_RNG_HPP

#include <cmath>
#include <cstdint>

namespace srbp {

/// Counter-based random numbers. Every draw is a pure function of
/// (key, counter), so streams can be consumed in any order and from any
/// worker without coordination, and a run is reproducible from its seeds
/// alone.
namespace rng {

// SplitMix64 finalizer, used as the mixing core.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash2(std::uint64_t key, std::uint64_t ctr) {
    return mix64(mix64(key ^ 0x6a09e667f3bcc909ULL) + ctr);
}

/// Stream keys: derive independent substreams from one master seed.
inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag));
}

// Stream tags (arbitrary fixed constants).
inline constexpr std::uint64_t kTagFieldModes = 0x4649454c44ULL;   // initial field coefficients
inline constexpr std::uint64_t kTagIncrements = 0x53544550ULL;     // Brownian increments
inline constexpr std::uint64_t kTagPath       = 0x50415448ULL;     // per-path seed derivation
inline constexpr std::uint64_t kTagKernel     = 0x4b45524eULL;     // random test kernels

inline double uniform01(std::uint64_t key, std::uint64_t ctr) {
    // 53-bit mantissa in (0, 1]; never returns 0 so log() is safe.
    return static_cast<double>((hash2(key, ctr) >> 11) + 1) * 0x1p-53;
}

/// i-th standard normal of the stream `key` (Box-Muller, cosine branch).
inline double normal(std::uint64_t key, std::uint64_t i) {
    const double u1 = uniform01(key, 2 * i);
    const double u2 = uniform01(key, 2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

/// Seed for path `index` of an ensemble keyed by `master`.
inline std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) {
    return hash2(derive_key(master, kTagPath), index);
}

} // namespace rng
} // namespace srbp

#endif
