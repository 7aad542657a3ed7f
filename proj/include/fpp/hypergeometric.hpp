#ifndef FPP_HYPERGEOMETRIC_HPP
#define FPP_HYPERGEOMETRIC_HPP

#include <cstdint>

#include "fpp/rng.hpp"

namespace fpp {

/// Number of "good" items in a uniform sample of `sample` items drawn without
/// replacement from `good + bad` items. Exact for every parameter range: direct
/// selection sampling when min(good, sample) is small, otherwise ratio-of-uniforms
/// (Stadlober's HRUA) with cancellation-free log-factorial differences.
std::uint64_t sample_hypergeometric(std::uint64_t good, std::uint64_t bad, std::uint64_t sample, Rng& rng);

/// log(a!) - log(b!), accurate when a and b are large and close.
double log_factorial_diff(double a, double b);

}  // namespace fpp

#endif
