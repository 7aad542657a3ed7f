#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fpp/pdlaw.hpp"
#include "fpp/rng.hpp"
#include "fpp/stats.hpp"
#include "oracles/oracles.hpp"

using namespace fpp;

TEST_SUITE("pdlaw") {

TEST_CASE("a sample is ordered and sums to one with its tail") {
    for (double tau : {1.2, 1.5, 1.8}) {
        Rng rng(1);
        for (int d = 0; d < 50; ++d) {
            const auto pd = sample_pd(tau, 300, rng);
            CHECK(std::is_sorted(pd.P.rbegin(), pd.P.rend()));
            CHECK(pd.P[0] < 1.0);
            CHECK(pd.tail_mass > 0.0);
            CHECK(pd.cumulative.back() + pd.tail_mass == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::accumulate(pd.P.begin(), pd.P.end(), 0.0) == doctest::Approx(pd.cumulative.back()));
        }
    }
    Rng rng(2);
    CHECK_THROWS(sample_pd(1.5, 0, rng));
    CHECK_THROWS(sample_pd(2.0, 10, rng));
    CHECK(sample_pd(1.5, 1, rng).P.size() == 1);
}

TEST_CASE("points follow Gamma_i^(-1/alpha)") {
    const double tau = 1.5, alpha = 0.5;
    const std::size_t K = 200, i = K / 2;
    std::vector<double> scaled;
    for (std::uint64_t r = 0; r < 2000; ++r) {
        Rng rng = make_rng(3, r);
        const auto pd = sample_pd(tau, K, rng);
        scaled.push_back(pd.xi[i - 1] * std::pow(double(i), 1.0 / alpha));
    }
    const double med = stats::median(scaled);
    CHECK(med > 0.9);
    CHECK(med < 1.1);
}

TEST_CASE("eta is insensitive to doubling K") {
    std::vector<double> change, tail_ratio;
    for (std::uint64_t r = 0; r < 200; ++r) {
        Rng a = make_rng(4, r), b = make_rng(4, r);
        const auto small = sample_pd(1.5, 1000, a);
        const auto big = sample_pd(1.5, 2000, b);
        CHECK(small.xi[999] == big.xi[999]);
        change.push_back(std::abs(big.eta / small.eta - 1.0));
        tail_ratio.push_back(big.tail_mass / small.tail_mass);
    }
    CHECK(stats::median(change) < 0.005);
    CHECK(stats::median(tail_ratio) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("exact moments agree with quadrature") {
    for (double tau : {1.2, 1.5, 1.8})
        for (int r : {2, 3, 4}) CHECK(pd_moment_exact(tau, r) == doctest::Approx(oracle::pd_moment_quadrature(tau, r)).epsilon(1e-8));
    CHECK(pd_moment_exact(1.5, 2) == doctest::Approx(0.5));
    CHECK(pd_moment_exact(1.5, 3) == doctest::Approx(0.375));
    CHECK(pd_moment_exact(1.0001, 2) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS(pd_moment_exact(1.5, 1));
}

TEST_CASE("simulated power sums match the exact moments") {
    for (double tau : {1.2, 1.5, 1.8}) {
        const std::size_t draws = 20000;
        std::vector<std::vector<double>> sums(3, std::vector<double>(draws));
        for (std::size_t d = 0; d < draws; ++d) {
            Rng rng = make_rng(5, d);
            const auto pd = sample_pd(tau, 500, rng);
            for (int r = 2; r <= 4; ++r) {
                double s = 0.0;
                for (double p : pd.P) s += std::pow(p, r);
                sums[r - 2][d] = s;
            }
        }
        for (int r = 2; r <= 4; ++r) {
            const auto& v = sums[r - 2];
            CAPTURE(tau);
            CAPTURE(r);
            CHECK(std::abs(stats::mean(v) - pd_moment_exact(tau, r)) <= 3 * stats::stderr_of_mean(v) + 1e-3);
        }
    }
}

TEST_CASE("size-biased tail cell stays below the last explicit point") {
    Rng rng(6);
    const auto pd = sample_pd(1.5, 100, rng);
    std::vector<double> u;
    for (int i = 0; i < 20000; ++i) {
        const double x = sample_tail_xi(pd, rng);
        CHECK(x > 0.0);
        CHECK(x < pd.xi.back());
        u.push_back(x / pd.xi.back());
    }
    // Density proportional to x^(-alpha) on (0,1): CDF x^(1-alpha).
    CHECK(stats::ks_one_sample(u, [](double x) { return std::sqrt(std::clamp(x, 0.0, 1.0)); }) < 0.015);
}

TEST_CASE("pair-selection probability f") {
    const DegreeLaw law(1.5);
    const DegreePgf pgf(law);
    CHECK(pgf.f_joint(0.0, 0.3) == doctest::Approx(0.0));
    CHECK(pgf.f_joint(0.2, 0.3) == doctest::Approx(pgf.f_joint(0.3, 0.2)).epsilon(1e-12));
    CHECK_THROWS_AS(pgf.f_joint(0.6, 0.6), std::domain_error);

    const double half = pgf.f_joint(0.5, 0.5);
    CHECK(half == doctest::Approx(1.0 - 2.0 * pgf_pmf_series(law, 0.5)).epsilon(1e-9));
    CHECK(std::abs(half - oracle::f_joint_mc(law, 0.5, 0.5, 1'000'000, 7)) < 0.003);
    CHECK(std::abs(pgf.f_joint(0.1, 0.3) - oracle::f_joint_mc(law, 0.1, 0.3, 1'000'000, 8)) < 0.003);

    const std::vector<double> grid{1e-6, 1e-4, 1e-2, 0.1, 0.3, 0.49};
    for (std::size_t a = 0; a < grid.size(); ++a)
        for (std::size_t b = 0; b + 1 < grid.size(); ++b) {
            CHECK(pgf.f_joint(grid[a], grid[b]) <= pgf.f_joint(grid[a], grid[b + 1]) + 1e-15);
            CHECK(pgf.f_joint(grid[a], grid[b]) >= 0.0);
        }
    CHECK(f_joint(0.2, 0.3, law) == doctest::Approx(pgf.f_joint(0.2, 0.3)));
}

TEST_CASE("complement routes agree") {
    for (double tau : {1.2, 1.5, 1.8})
        for (double c : {0.5, 1.0, 3.0}) {
            const DegreeLaw law(tau, c);
            const DegreePgf pgf(law);
            for (double s : {0.9, 0.5, 0.2, 0.05}) CHECK(pgf.complement(s) == doctest::Approx(1.0 - pgf_pmf_series(law, 1.0 - s)).epsilon(1e-8));
            for (double s : {0.2, 0.05, 0.01, 1e-3})
                CHECK(pgf.complement_series(s) == doctest::Approx(pgf.complement_polylog(s)).epsilon(1e-7));
        }
    // Small-s behaviour: c Gamma(1 - alpha) s^alpha.
    const DegreeLaw law(1.5);
    const DegreePgf pgf(law);
    const double s = 1e-10;
    CHECK(pgf.complement(s) == doctest::Approx(std::tgamma(0.5) * std::sqrt(s)).epsilon(0.01));
    CHECK(pgf.complement(0.0) == 0.0);
    CHECK(pgf.complement(1.0) == doctest::Approx(1.0));
}

TEST_CASE("erased degree and the cell of a uniform edge") {
    const DegreeLaw law(1.5, 0.5);  // half the mass on D = 1
    Rng rng(9);
    const auto pd = sample_pd(1.5, 200, rng);
    std::size_t ones = 0, top = 0, second = 0;
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) {
        const auto s = sample_Der_I(pd, law, rng);
        CHECK(s.D_er <= s.D);
        CHECK(s.D_er == s.head_cells.size() + s.tail_cells);
        CHECK(std::is_sorted(s.head_cells.begin(), s.head_cells.end()));
        if (s.D == 1) {
            ++ones;
            CHECK(s.D_er == 1);
        }
        if (s.I.synthetic)
            CHECK(s.I.index >= pd.K);
        else
            CHECK(std::binary_search(s.head_cells.begin(), s.head_cells.end(), s.I.index));
        top += (!s.I.synthetic && s.I.index == 0);
        second += (!s.I.synthetic && s.I.index == 1);
    }
    CHECK(ones > 0);
    CHECK(top >= second);

    std::size_t hits0 = 0;
    for (int i = 0; i < draws; ++i) {
        const auto c = sample_cell(pd, rng);
        hits0 += (!c.synthetic && c.index == 0);
        if (!c.synthetic) CHECK(c.P == pd.P[c.index]);
    }
    CHECK(std::abs(double(hits0) / draws - pd.P[0]) < 4 * std::sqrt(pd.P[0] * (1 - pd.P[0]) / draws) + 1e-3);
}

TEST_CASE("tail bound on f") {
    const DegreeLaw law(1.5);
    int held = 0;
    for (std::uint64_t r = 0; r < 100; ++r) {
        Rng rng = make_rng(10, r);
        const auto pd = sample_pd(1.5, 200, rng);
        const auto rep = f_tail_bound_check(pd, law, 10.0);
        held += rep.holds;
        const auto loose = f_tail_bound_check(pd, law, 20.0);
        CHECK(loose.max_ratio == doctest::Approx(rep.max_ratio / 2));
        CHECK(rep.max_complement_ratio < 3.0);
    }
    CHECK(held >= 95);
    Rng rng(1);
    CHECK_THROWS(f_tail_bound_check(sample_pd(1.5, 50, rng), law, 1.0));
}

}
