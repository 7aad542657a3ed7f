#ifndef FPP_STATS_HPP
#define FPP_STATS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace fpp::stats {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased
double stderr_of_mean(std::span<const double> xs);
double median(std::vector<double> xs);
double correlation(std::span<const double> xs, std::span<const double> ys);

/// Proportion estimate with its binomial standard error.
struct Proportion {
    double p = 0.0;
    double stderr_ = 0.0;
};
Proportion proportion(std::size_t hits, std::size_t trials);

/// sup |F_n - G_m| between two empirical distributions.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// sup |F_n - F| against a continuous reference CDF.
double ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf);

/// Empirical pmf of integer outcomes.
std::map<std::int64_t, double> histogram(std::span<const std::uint32_t> xs);
/// Total variation distance between the empirical pmfs restricted to outcomes <= cap
/// (mass above cap is lumped into one bucket).
double tv_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::uint32_t cap);

}  // namespace fpp::stats

#endif
