#include <doctest.h>

#include <cmath>
#include <vector>

#include "fpp/rng.hpp"
#include "fpp/stats.hpp"

using namespace fpp::stats;

TEST_SUITE("stats") {

TEST_CASE("moments and median") {
    const std::vector<double> xs{1, 2, 3, 4, 10};
    CHECK(mean(xs) == doctest::Approx(4.0));
    CHECK(variance(xs) == doctest::Approx(12.5));
    CHECK(stderr_of_mean(xs) == doctest::Approx(std::sqrt(12.5 / 5)));
    CHECK(median(xs) == 3.0);
    CHECK(median({4, 1, 3, 2}) == 2.5);
    const std::vector<double> ys{2, 4, 6, 8, 20};
    CHECK(correlation(xs, ys) == doctest::Approx(1.0));
}

TEST_CASE("proportion") {
    const auto p = proportion(30, 100);
    CHECK(p.p == doctest::Approx(0.3));
    CHECK(p.stderr_ == doctest::Approx(std::sqrt(0.3 * 0.7 / 100)));
}

TEST_CASE("KS statistics") {
    CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(ks_two_sample({1, 2, 3}, {4, 5, 6}) == doctest::Approx(1.0));
    fpp::Rng rng(1);
    std::vector<double> u(20000);
    for (auto& x : u) x = fpp::uniform01(rng);
    CHECK(ks_one_sample(u, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.015);
    CHECK(ks_one_sample(u, [](double x) { return std::clamp(x * x, 0.0, 1.0); }) > 0.2);
}

TEST_CASE("histogram and TV with a lumped tail") {
    const std::vector<std::uint32_t> a{2, 2, 4, 9}, b{2, 4, 4, 12};
    const auto h = histogram(a);
    CHECK(h.at(2) == doctest::Approx(0.5));
    CHECK(tv_distance(a, b, 8) == doctest::Approx(0.25));
    CHECK(tv_distance(a, b, 20) == doctest::Approx(0.5));
    CHECK(tv_distance(a, a, 3) == 0.0);
}

}
