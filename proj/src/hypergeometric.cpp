#include "fpp/hypergeometric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpp {

namespace {

constexpr std::uint64_t kDirectLimit = 16;

// Selection sampling over the smaller of the two index sets.
std::uint64_t hypergeometric_direct(std::uint64_t good, std::uint64_t pop, std::uint64_t sample, Rng& rng) {
    std::uint64_t hits = 0;
    if (good <= sample) {
        std::uint64_t slots = sample;
        for (std::uint64_t k = 0; k < good; ++k, --pop) {
            if (uniform01(rng) * static_cast<double>(pop) < static_cast<double>(slots)) {
                ++hits;
                --slots;
            }
        }
    } else {
        std::uint64_t remaining_good = good;
        for (std::uint64_t k = 0; k < sample; ++k, --pop) {
            if (uniform01(rng) * static_cast<double>(pop) < static_cast<double>(remaining_good)) {
                ++hits;
                --remaining_good;
            }
        }
    }
    return hits;
}

// HRUA for good <= bad, sample <= pop / 2.
std::uint64_t hypergeometric_hrua(std::uint64_t good, std::uint64_t bad, std::uint64_t sample, Rng& rng) {
    constexpr double d1 = 1.7155277699214135;
    constexpr double d2 = 0.8989161620588988;

    const double g = static_cast<double>(good);
    const double b = static_cast<double>(bad);
    const double s = static_cast<double>(sample);
    const double pop = g + b;

    const double p = g / pop;
    const double q = b / pop;
    const double mu = s * p;
    const double a = mu + 0.5;
    const double var = (pop - s) * s * p * q / (pop - 1.0);
    const double c = std::sqrt(var + 0.5);
    const double h = d1 * c + d2;
    const double mode = std::floor((s + 1.0) * (g + 1.0) / (pop + 2.0));
    const double upper = std::min(std::min(s, g) + 1.0, std::floor(a + 16.0 * c));

    for (;;) {
        const double u = uniform01(rng);
        const double v = uniform01(rng);
        const double x = a + h * (v - 0.5) / u;
        if (x < 0.0 || x >= upper) continue;
        const double k = std::floor(x);

        // log f(k) - log f(mode), summed as four paired differences.
        const double t = log_factorial_diff(mode, k) + log_factorial_diff(g - mode, g - k) +
                         log_factorial_diff(s - mode, s - k) +
                         log_factorial_diff(b - s + mode, b - s + k);

        if (u * (4.0 - u) - 3.0 <= t) return static_cast<std::uint64_t>(k);
        if (u * (u - t) >= 1.0) continue;
        if (2.0 * std::log(u) <= t) return static_cast<std::uint64_t>(k);
    }
}

}  // namespace

double log_factorial_diff(double a, double b) {
    if (a == b) return 0.0;
    if (a < 1e5 || b < 1e5) return std::lgamma(a + 1.0) - std::lgamma(b + 1.0);
    // Stirling: lgamma(x) = (x - 1/2) log x - x + log(2 pi)/2 + 1/(12x) - 1/(360x^3) + ...
    const double x = a + 1.0;
    const double y = b + 1.0;
    const double d = x - y;
    const double main = d * std::log(x) + (y - 0.5) * std::log1p(d / y) - d;
    const double corr = (1.0 / (12.0 * x) - 1.0 / (12.0 * y)) - (1.0 / (360.0 * x * x * x) - 1.0 / (360.0 * y * y * y));
    return main + corr;
}

std::uint64_t sample_hypergeometric(std::uint64_t good, std::uint64_t bad, std::uint64_t sample, Rng& rng) {
    const std::uint64_t pop = good + bad;
    if (sample > pop) throw std::invalid_argument("sample_hypergeometric: sample exceeds population");
    if (sample == 0 || good == 0) return 0;
    if (bad == 0) return sample;
    if (sample == pop) return good;

    // Reduce to good <= bad and sample <= pop / 2.
    if (sample > pop / 2) return good - sample_hypergeometric(good, bad, pop - sample, rng);
    if (good > bad) return sample - sample_hypergeometric(bad, good, sample, rng);

    if (std::min(good, sample) <= kDirectLimit) return hypergeometric_direct(good, pop, sample, rng);
    return hypergeometric_hrua(good, bad, sample, rng);
}

}  // namespace fpp
