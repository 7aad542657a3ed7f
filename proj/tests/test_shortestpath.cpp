#include <doctest.h>

#include <cmath>
#include <limits>

#include "fpp/cmgraph.hpp"
#include "fpp/rng.hpp"
#include "fpp/shortestpath.hpp"
#include "fpp/stats.hpp"
#include "oracles/oracles.hpp"

using namespace fpp;

namespace {

using Matrix = std::vector<std::vector<double>>;

WeightedGraph from_matrix(const Matrix& w, GraphMode mode = GraphMode::erased) {
    std::vector<std::size_t> offsets{0};
    std::vector<Vertex> targets;
    std::vector<double> weights;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (i == j || !std::isfinite(w[i][j])) continue;
            targets.push_back(static_cast<Vertex>(j));
            weights.push_back(w[i][j]);
        }
        offsets.push_back(targets.size());
    }
    return WeightedGraph(mode, offsets, targets, weights);
}

Matrix random_graph(std::size_t n, double p, Rng& rng) {
    const double inf = std::numeric_limits<double>::infinity();
    Matrix w(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (uniform01(rng) < p) w[i][j] = w[j][i] = exponential(rng);
    return w;
}

const DegreeLaw kLaw(1.5);

}  // namespace

TEST_SUITE("shortestpath") {

TEST_CASE("weight laws") {
    Rng rng(1);
    std::vector<double> e(100000);
    for (auto& x : e) x = exponential(rng, 3.0);
    CHECK(std::abs(stats::mean(e) - 1.0 / 3.0) < 0.01);

    const auto u = EdgeWeightLaw::parse("uniform:2");
    CHECK(u.kind() == EdgeWeightLaw::Kind::uniform_0_b);
    CHECK(u.zeta() == doctest::Approx(0.5));
    for (int i = 0; i < 10000; ++i) {
        const double x = u.draw(rng);
        CHECK(x > 0.0);
        CHECK(x < 2.0);
    }
    CHECK(EdgeWeightLaw::parse("exp").zeta() == 1.0);
    CHECK_THROWS(EdgeWeightLaw::parse("gamma"));
    CHECK_THROWS(EdgeWeightLaw::uniform(0.0));
}

TEST_CASE("draw_min equals an explicit minimum in law") {
    for (const auto& law : {EdgeWeightLaw::exponential(), EdgeWeightLaw::uniform(2.0)}) {
        for (std::uint64_t m : {1, 2, 5}) {
            Rng r1(m), r2(m + 100);
            std::vector<double> fast(100000), slow(100000);
            for (auto& x : fast) x = law.draw_min(r1, m);
            for (auto& x : slow) {
                x = std::numeric_limits<double>::infinity();
                for (std::uint64_t k = 0; k < m; ++k) x = std::min(x, law.draw(r2));
            }
            CAPTURE(m);
            CHECK(stats::ks_two_sample(fast, slow) < 0.01);
        }
    }
}

TEST_CASE("original-mode weight on a double edge is the minimum of two draws") {
    const DegreeSequence seq(kLaw, {2, 2});
    const MultiGraph mg(seq, {{0, 1, 2}}, {0, 0});
    Rng r1(4), r2(5);
    std::vector<double> assigned(100000), explicit_min(100000);
    for (auto& x : assigned) x = *assign_weights(mg, EdgeWeightLaw::exponential(), r1).weight(0, 1);
    for (auto& x : explicit_min) x = std::min(exponential(r2), exponential(r2));
    CHECK(stats::ks_two_sample(assigned, explicit_min) < 0.01);
}

TEST_CASE("dijkstra on hand-made graphs") {
    const double inf = std::numeric_limits<double>::infinity();
    const auto single = from_matrix({{inf, 0.7}, {0.7, inf}});
    const auto p = extract_path(dijkstra(single, 0), 1);
    REQUIRE(p);
    CHECK(p->weight == 0.7);
    CHECK(p->hopcount == 1);

    // Triangle where the two-edge route is lighter.
    const auto tri = from_matrix({{inf, 3.0, 1.0}, {3.0, inf, 1.0}, {1.0, 1.0, inf}});
    const auto q = extract_path(dijkstra(tri, 0), 1);
    REQUIRE(q);
    CHECK(q->weight == 2.0);
    CHECK(q->hopcount == 2);
    CHECK(q->path == std::vector<Vertex>{0, 2, 1});

    const auto split = from_matrix({{inf, 1.0, inf}, {1.0, inf, inf}, {inf, inf, inf}});
    CHECK_FALSE(extract_path(dijkstra(split, 0), 2).has_value());
}

TEST_CASE("dijkstra agrees with simple-path enumeration") {
    Rng rng(17);
    for (int g = 0; g < 100; ++g) {
        const auto w = random_graph(8, 0.45, rng);
        const auto wg = from_matrix(w);
        for (Vertex s = 0; s < 8; ++s) {
            const auto tree = dijkstra(wg, s);
            for (Vertex t = 0; t < 8; ++t) {
                if (s == t) continue;
                const auto best = oracle::best_simple_path(w, s, t);
                const auto got = extract_path(tree, t);
                if (!std::isfinite(best.weight)) {
                    CHECK_FALSE(got.has_value());
                    continue;
                }
                REQUIRE(got.has_value());
                CHECK(got->weight == doctest::Approx(best.weight).epsilon(1e-12));
                CHECK(got->hopcount == best.hops);
                CHECK(got->hopcount + 1 == got->path.size());
                CHECK(tree.hops[t] == got->hopcount);
                // Symmetry of the undirected problem.
                CHECK(extract_path(dijkstra(wg, t), s)->weight == doctest::Approx(got->weight).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("early stop returns the same target distance") {
    Rng rng(23);
    const auto wg = from_matrix(random_graph(30, 0.2, rng));
    const auto full = dijkstra(wg, 0);
    for (Vertex t = 1; t < 30; ++t) CHECK(dijkstra(wg, 0, t).distance[t] == full.distance[t]);
}

TEST_CASE("pair sampling on two components") {
    // Components of sizes 3 and 2: P(disconnected) = 2 * 3 * 2 / (5 * 4) = 0.6.
    const double inf = std::numeric_limits<double>::infinity();
    Matrix w(5, std::vector<double>(5, inf));
    w[0][1] = w[1][0] = 1.0;
    w[1][2] = w[2][1] = 1.0;
    w[3][4] = w[4][3] = 1.0;
    const auto wg = from_matrix(w);
    Rng rng(3);
    int disconnected = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto s = sample_pair_fpp(wg, rng);
        CHECK(s.a1 != s.a2);
        disconnected += !s.connected();
    }
    CHECK(std::abs(double(disconnected) / draws - 0.6) < 0.01);
}

TEST_CASE("minimal weight is at least the sum of the minimal incident weights") {
    for (std::uint64_t r = 0; r < 10; ++r) {
        Rng rng = make_rng(71, r);
        const auto seq = sample_degree_sequence(kLaw, 1000, rng);
        const auto sg = erase(pair_stubs(seq, rng));
        const auto wg = assign_weights(sg, EdgeWeightLaw::exponential(), rng);
        for (int k = 0; k < 20; ++k) {
            const auto s = sample_pair_fpp(wg, rng);
            if (!s.connected() || wg.weight(s.a1, s.a2)) continue;
            CHECK(s.path->weight >= wg.min_incident(s.a1) + wg.min_incident(s.a2));
        }
    }
}

TEST_CASE("two-edge minimum") {
    const double inf = std::numeric_limits<double>::infinity();
    const auto wg = from_matrix({{inf, inf, 1.0, 2.0}, {inf, inf, 5.0, 0.5}, {1.0, 5.0, inf, inf}, {2.0, 0.5, inf, inf}});
    const auto t = two_edge_min(wg, 0, 1);
    CHECK(t.paths == 2);
    CHECK(t.weight == 2.5);
    CHECK(t.via == 3);
    CHECK(t.scaled == doctest::Approx(2.0 * 2.5));
    const auto none = two_edge_min(wg, 0, 3);
    CHECK(none.paths == 0);
    CHECK(none.weight == inf);
    CHECK_THROWS(two_edge_min(from_matrix({{inf, 1.0}, {1.0, inf}}, GraphMode::original), 0, 1));
}

TEST_CASE("mode dispatch needs the matching graph") {
    const DegreeSequence seq(kLaw, {1, 1});
    const MultiGraph mg(seq, {{0, 1, 1}}, {0, 0});
    Rng rng(1);
    CHECK_THROWS_AS(assign_weights(&mg, nullptr, EdgeWeightLaw::exponential(), GraphMode::erased, rng),
                    std::invalid_argument);
    const auto sg = erase(mg);
    CHECK_THROWS_AS(assign_weights(nullptr, &sg, EdgeWeightLaw::exponential(), GraphMode::original, rng),
                    std::invalid_argument);
    CHECK(assign_weights(&mg, nullptr, EdgeWeightLaw::exponential(), GraphMode::original, rng).mode() ==
          GraphMode::original);
}

TEST_CASE("scaled minimum of exponential pairs has Rayleigh survival") {
    const std::vector<double> grid{0.0, 0.5, 1.0, 1.5};
    Rng rng(8);
    const auto two = min_gamma_trial(2.0, 100, grid, rng, 100);
    CHECK(two[0] == 1.0);
    const auto s = min_gamma_trial(1.0, 10000, grid, rng, 10000);
    for (std::size_t g = 0; g < grid.size(); ++g) CHECK(std::abs(s[g] - std::exp(-grid[g] * grid[g] / 2)) < 0.02);

    const auto joint = min_gamma_joint(2000, 4000, rng);
    CHECK(std::abs(stats::correlation(joint.eta, joint.kappa)) < 0.05);
    CHECK(std::abs(stats::correlation(joint.eta, joint.rho)) < 0.05);
    CHECK(stats::ks_one_sample(joint.rho, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x * x / 2); }) < 0.03);
}

}
