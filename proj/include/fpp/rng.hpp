#ifndef FPP_RNG_HPP
#define FPP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace fpp {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for replica `index` of a stream. Counter-based: no shared state,
/// so replica r sees the same stream regardless of scheduling.
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t index, std::uint64_t stream = 0) {
    return mix64(mix64(master ^ mix64(stream + 0x5851f42d4c957f2dULL)) + index);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index, std::uint64_t stream = 0) {
    return Rng(child_seed(master, index, stream));
}

/// Uniform on the open interval (0,1), 53-bit resolution.
inline double uniform01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

inline double exponential(Rng& rng, double rate = 1.0) {
    return -std::log(uniform01(rng)) / rate;
}

}  // namespace fpp

#endif
