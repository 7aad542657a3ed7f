#ifndef FPP_RESILIENCE_HPP
#define FPP_RESILIENCE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fpp/cmgraph.hpp"
#include "fpp/pdlaw.hpp"
#include "fpp/rng.hpp"

namespace fpp {

class UnionFind {
public:
    explicit UnionFind(std::size_t n);
    std::size_t find(std::size_t v);
    void unite(std::size_t a, std::size_t b);
    std::size_t size_of(std::size_t v) { return size_[find(v)]; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

struct AttackOutcome {
    double parameter = 0.0;  // kept fraction p (random) or number removed (targeted)
    std::size_t giant_size = 0;
    std::size_t second_size = 0;
    double giant_fraction = 0.0;  // giant_size / n
    double connect_prob = 0.0;    // P(A1 <-> A2) for uniform A1 != A2 among all n vertices
    double connect_stderr = 0.0;  // 0 when computed exactly
};

/// Component sizes of the subgraph induced by the vertices with keep[v] != 0,
/// largest first.
std::vector<std::size_t> component_sizes(const SimpleGraph& sg, std::span<const char> keep);

/// Keeps each vertex independently with probability p.
AttackOutcome percolate_giant(const SimpleGraph& sg, double p, Rng& rng);
/// Coupled version: vertex v is kept iff uniforms[v] < p, so the kept set grows with p.
AttackOutcome percolate_coupled(const SimpleGraph& sg, double p, std::span<const double> uniforms);

/// p * mean(1 - (1-p)^D_er).
double lambda_theory(double p, std::span<const std::uint64_t> der_samples);

struct DerTriple {
    std::uint64_t D1er = 0;
    std::uint64_t D2er = 0;
    std::uint64_t N12 = 0;  // explicit cells hit by both; tail draws are never shared
};

/// p^2 (E[(1-p)^(D1+D2-N12)] - E[(1-p)^D1] E[(1-p)^D2]).
double beta_estimate(double p, std::span<const DerTriple> triples);

/// D_er draws: a fresh PD sample every `per_pd` draws, replicas seeded from (seed, batch).
std::vector<std::uint64_t> sample_der_batch(double tau, std::size_t K, std::size_t count, std::size_t per_pd,
                                            std::uint64_t seed);
/// (D1er, D2er, N12) triples, the two sides sharing one PD sample.
std::vector<DerTriple> sample_der_triples(double tau, std::size_t K, std::size_t count, std::size_t per_pd,
                                          std::uint64_t seed);

/// Vertices ordered by decreasing `score`, ties by increasing id.
std::vector<Vertex> rank_by(std::span<const double> score);

/// Removes the first k_remove vertices of `order` (default: decreasing erased
/// degree). With pair_trials == 0 the connection probability is exact
/// (sum over components of s(s-1) / (n(n-1))); otherwise it is estimated from
/// pair_trials uniform pairs.
AttackOutcome targeted_attack(const SimpleGraph& sg, std::size_t k_remove, std::size_t pair_trials, Rng& rng,
                              std::span<const Vertex> order = {});

}  // namespace fpp

#endif
