#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpp/degrees.hpp"
#include "fpp/rng.hpp"

using namespace fpp;

TEST_SUITE("degrees") {

TEST_CASE("inversion draws match the lattice law at hand-computed points") {
    const DegreeLaw law(1.5);
    CHECK(sample_degree(law, 0.3) == 12);  // 0.3^-2 = 11.1
    CHECK(sample_degree(law, 0.5) == 4);
    CHECK(sample_degree(law, 0.75) == 2);  // 1.78 -> 2
    CHECK(sample_degree(law, 0.999) == 2);
    CHECK(sample_degree(law, 1e-30) == kMaxDegree);
}

TEST_CASE("survival, pmf and the clamp for c > 1") {
    const DegreeLaw law(1.5);
    CHECK(law.survival(0.5) == 1.0);
    CHECK(law.survival(4.0) == doctest::Approx(0.5));
    CHECK(law.survival(4.9) == doctest::Approx(0.5));
    CHECK(law.pmf(1) == 0.0);
    CHECK(law.pmf(2) == doctest::Approx(1.0 - std::sqrt(0.5)));

    const DegreeLaw wide(1.5, 2.0);
    CHECK(wide.survival(1.0) == 1.0);
    CHECK(wide.survival(3.0) == 1.0);
    CHECK(wide.survival(5.0) < 1.0);
    CHECK(wide.pmf(1) == 0.0);
    for (int i = 0; i < 1000; ++i) CHECK(sample_degree(wide, (i + 0.5) / 1000.0) >= 5);
}

TEST_CASE("constructor rejects tau outside (1,2) and non-positive c") {
    CHECK_THROWS_AS(DegreeLaw(1.0), std::invalid_argument);
    CHECK_THROWS_AS(DegreeLaw(2.0), std::invalid_argument);
    CHECK_THROWS_AS(DegreeLaw(1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DegreeLaw(1.5, -1.0), std::invalid_argument);
}

TEST_CASE("empirical survival agrees with c k^(1-tau)") {
    for (double tau : {1.2, 1.5, 1.8}) {
        const DegreeLaw law(tau);
        Rng rng(11);
        const std::size_t draws = 1'000'000;
        const std::vector<Degree> ks{1, 2, 5, 10, 100};
        std::vector<std::size_t> above(ks.size(), 0);
        for (std::size_t i = 0; i < draws; ++i) {
            const Degree d = sample_degree(law, uniform01(rng));
            for (std::size_t j = 0; j < ks.size(); ++j) above[j] += d > ks[j];
        }
        for (std::size_t j = 0; j < ks.size(); ++j) {
            const double p = law.survival(static_cast<double>(ks[j]));
            const double se = std::sqrt(p * (1 - p) / draws);
            CHECK(std::abs(double(above[j]) / draws - p) <= 4 * se + 1e-12);
        }
        if (tau == 1.5) CHECK(std::abs(double(above[3]) / draws - std::pow(10.0, -0.5)) <= 0.002);
    }
}

TEST_CASE("odd totals get the last degree incremented") {
    const DegreeLaw law(1.5);
    int found = 0;
    for (std::uint64_t seed = 0; seed < 200000 && found < 3; ++seed) {
        Rng rng(seed);
        const Degree a = sample_degree(law, uniform01(rng));
        const Degree b = sample_degree(law, uniform01(rng));
        if (a != 3 || b != 4) continue;
        const auto seq = sample_degree_sequence(law, 2, seed);
        CHECK(seq.degree(0) == 3);
        CHECK(seq.degree(1) == 5);
        CHECK(seq.total() == 8);
        ++found;
    }
    CHECK(found > 0);
    for (std::uint64_t seed = 0; seed < 200; ++seed) CHECK(sample_degree_sequence(law, 101, seed).total() % 2 == 0);
}

TEST_CASE("same seed gives the same sequence") {
    const DegreeLaw law(1.5);
    const auto a = sample_degree_sequence(law, 5000, 42);
    const auto b = sample_degree_sequence(law, 5000, 42);
    CHECK(std::equal(a.degrees().begin(), a.degrees().end(), b.degrees().begin()));
    const auto c = sample_degree_sequence(law, 5000, 43);
    CHECK(!std::equal(a.degrees().begin(), a.degrees().end(), c.degrees().begin()));
}

TEST_CASE("order statistics are consistent") {
    const DegreeLaw law(1.5);
    const auto seq = sample_degree_sequence(law, 2000, 5);
    const auto order = seq.sorted_desc();
    for (std::size_t i = 1; i < order.size(); ++i) {
        CHECK(seq.degree(order[i - 1]) >= seq.degree(order[i]));
        if (seq.degree(order[i - 1]) == seq.degree(order[i])) CHECK(order[i - 1] < order[i]);
    }
    for (std::size_t i = 1; i <= 20; ++i) CHECK(seq.rank_of(seq.ranked(i)) == i);
}

TEST_CASE("maximum degree is of order n^(1/(tau-1))") {
    const DegreeLaw law(1.5);
    const std::size_t n = 10000;
    int inside = 0;
    for (std::uint64_t r = 0; r < 100; ++r) {
        const auto seq = sample_degree_sequence(law, n, child_seed(7, r));
        const double m = static_cast<double>(seq.degree(seq.ranked(1)));
        const double scale = double(n) * double(n);
        inside += (m >= scale / 10 && m <= 10 * scale);
    }
    // P(M <= x) = (1 - P(D > x))^n, so the window has probability below 0.7 here.
    const auto below = [&](double x) { return std::pow(1.0 - law.survival(x), double(n)); };
    const double exact = below(10.0 * double(n) * double(n)) - below(double(n) * double(n) / 10.0);
    CHECK(std::abs(inside / 100.0 - exact) <= 4 * std::sqrt(exact * (1 - exact) / 100));
}

TEST_CASE("u_n solves 1 - F(u) = 1/n") {
    const DegreeLaw law(1.5);
    CHECK(u_n(law, 100) == doctest::Approx(1e4));
    CHECK(law.survival(u_n(law, 100)) == doctest::Approx(0.01));
    const DegreeLaw law2(1.8, 0.5);
    CHECK(law2.survival(u_n(law2, 1000)) == doctest::Approx(1e-3).epsilon(0.01));
    CHECK_THROWS(u_n(law, 0));
}

TEST_CASE("restricted moments") {
    const DegreeLaw law(1.5);
    // With c = 1 the law puts no mass on 1, so the first term is 2 P(D = 2).
    CHECK(restricted_moment(law, 1.0, 1.0) == 0.0);
    CHECK(restricted_moment(law, 1.0, 2.0) == doctest::Approx(2 * 0.29289).epsilon(1e-4));
    CHECK(restricted_moment(DegreeLaw(1.5, 0.5), 1.0, 1.0) == doctest::Approx(0.5));
    // E[D^a 1{D <= x}] <= C x^(a - (tau-1)) for a > tau - 1.
    for (double tau : {1.2, 1.5, 1.8}) {
        const DegreeLaw l(tau);
        for (double a : {1.0, 2.0})
            for (double x : {10.0, 100.0, 1000.0, 10000.0})
                CHECK(restricted_moment(l, a, x) <= 4.0 * std::pow(x, a - l.alpha()));
    }
    // a = 2(tau-1) coincides with a = 1 at tau = 1.5.
    CHECK(restricted_moment(law, 2 * law.alpha(), 500.0) == doctest::Approx(restricted_moment(law, 1.0, 500.0)));
    double prev = 0.0;
    for (double x : {2.0, 3.0, 8.0, 64.0}) {
        const double m = restricted_moment(law, 1.0, x);
        CHECK(m > prev);
        prev = m;
    }
    CHECK_THROWS(restricted_moment(law, 0.0, 5.0));
}

}
