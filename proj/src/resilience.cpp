#include "fpp/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fpp/parallel.hpp"

namespace fpp {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

std::size_t UnionFind::find(std::size_t v) {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
}

std::vector<std::size_t> component_sizes(const SimpleGraph& sg, std::span<const char> keep) {
    const std::size_t n = sg.n();
    UnionFind uf(n);
    for (Vertex v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        for (Vertex w : sg.adjacency(v))
            if (w > v && keep[w]) uf.unite(v, w);
    }
    std::vector<std::size_t> sizes;
    for (Vertex v = 0; v < n; ++v)
        if (keep[v] && uf.find(v) == v) sizes.push_back(uf.size_of(v));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

namespace {

AttackOutcome summarize(const SimpleGraph& sg, std::span<const char> keep, double parameter) {
    const auto sizes = component_sizes(sg, keep);
    const double n = static_cast<double>(sg.n());
    AttackOutcome out;
    out.parameter = parameter;
    out.giant_size = sizes.empty() ? 0 : sizes[0];
    out.second_size = sizes.size() > 1 ? sizes[1] : 0;
    out.giant_fraction = n > 0 ? static_cast<double>(out.giant_size) / n : 0.0;
    double pairs = 0.0;
    for (auto s : sizes) pairs += static_cast<double>(s) * static_cast<double>(s - 1);
    out.connect_prob = n > 1 ? pairs / (n * (n - 1.0)) : 0.0;
    return out;
}

}  // namespace

AttackOutcome percolate_coupled(const SimpleGraph& sg, double p, std::span<const double> uniforms) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("percolate: p must lie in [0,1]");
    if (uniforms.size() != sg.n()) throw std::invalid_argument("percolate: one uniform per vertex required");
    std::vector<char> keep(sg.n());
    for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = uniforms[v] < p;
    return summarize(sg, keep, p);
}

AttackOutcome percolate_giant(const SimpleGraph& sg, double p, Rng& rng) {
    std::vector<double> u(sg.n());
    for (auto& x : u) x = uniform01(rng);
    return percolate_coupled(sg, p, u);
}

double lambda_theory(double p, std::span<const std::uint64_t> der_samples) {
    if (der_samples.empty()) throw std::invalid_argument("lambda_theory: no samples");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("lambda_theory: p must lie in [0,1]");
    double sum = 0.0;
    for (auto d : der_samples) sum += -std::expm1(static_cast<double>(d) * std::log1p(-p));
    return p * sum / static_cast<double>(der_samples.size());
}

double beta_estimate(double p, std::span<const DerTriple> triples) {
    if (triples.empty()) throw std::invalid_argument("beta_estimate: no samples");
    if (p <= 0.0 || p >= 1.0) return 0.0;
    const double lq = std::log1p(-p);
    double joint = 0.0, m1 = 0.0, m2 = 0.0;
    for (const auto& t : triples) {
        joint += std::exp(static_cast<double>(t.D1er + t.D2er - t.N12) * lq);
        m1 += std::exp(static_cast<double>(t.D1er) * lq);
        m2 += std::exp(static_cast<double>(t.D2er) * lq);
    }
    const double n = static_cast<double>(triples.size());
    return p * p * (joint / n - (m1 / n) * (m2 / n));
}

std::vector<std::uint64_t> sample_der_batch(double tau, std::size_t K, std::size_t count, std::size_t per_pd,
                                            std::uint64_t seed) {
    if (per_pd == 0) throw std::invalid_argument("sample_der_batch: per_pd must be >= 1");
    const DegreeLaw law(tau);
    std::vector<std::uint64_t> out(count);
    const std::size_t batches = (count + per_pd - 1) / per_pd;
    for_replicas(batches, [&](std::size_t b) {
        Rng rng = make_rng(seed, b);
        const PDRealization pd = sample_pd(tau, K, rng);
        for (std::size_t i = b * per_pd; i < std::min(count, (b + 1) * per_pd); ++i)
            out[i] = sample_Der_I(pd, law, rng).D_er;
    });
    return out;
}

std::vector<DerTriple> sample_der_triples(double tau, std::size_t K, std::size_t count, std::size_t per_pd,
                                          std::uint64_t seed) {
    if (per_pd == 0) throw std::invalid_argument("sample_der_triples: per_pd must be >= 1");
    const DegreeLaw law(tau);
    std::vector<DerTriple> out(count);
    const std::size_t batches = (count + per_pd - 1) / per_pd;
    for_replicas(batches, [&](std::size_t b) {
        Rng rng = make_rng(seed, b);
        const PDRealization pd = sample_pd(tau, K, rng);
        for (std::size_t i = b * per_pd; i < std::min(count, (b + 1) * per_pd); ++i) {
            const DerSample a = sample_Der_I(pd, law, rng);
            const DerSample c = sample_Der_I(pd, law, rng);
            std::vector<std::uint32_t> shared;
            std::set_intersection(a.head_cells.begin(), a.head_cells.end(), c.head_cells.begin(), c.head_cells.end(),
                                  std::back_inserter(shared));
            out[i] = {a.D_er, c.D_er, shared.size()};
        }
    });
    return out;
}

std::vector<Vertex> rank_by(std::span<const double> score) {
    std::vector<Vertex> order(score.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return score[a] > score[b]; });
    return order;
}

AttackOutcome targeted_attack(const SimpleGraph& sg, std::size_t k_remove, std::size_t pair_trials, Rng& rng,
                              std::span<const Vertex> order) {
    const std::size_t n = sg.n();
    if (k_remove >= n) throw std::invalid_argument("targeted_attack: k_remove must be < n");
    std::vector<Vertex> own;
    if (order.empty()) {
        std::vector<double> deg(n);
        for (Vertex v = 0; v < n; ++v) deg[v] = static_cast<double>(sg.erased_degree(v));
        own = rank_by(deg);
        order = own;
    }
    if (order.size() < k_remove) throw std::invalid_argument("targeted_attack: ranking shorter than k_remove");
    std::vector<char> keep(n, 1);
    for (std::size_t i = 0; i < k_remove; ++i) keep[order[i]] = 0;
    AttackOutcome out = summarize(sg, keep, static_cast<double>(k_remove));
    if (pair_trials == 0) return out;

    UnionFind uf(n);
    for (Vertex v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        for (Vertex w : sg.adjacency(v))
            if (w > v && keep[w]) uf.unite(v, w);
    }
    std::size_t hits = 0;
    for (std::size_t t = 0; t < pair_trials; ++t) {
        const Vertex a = static_cast<Vertex>(uniform_below(rng, n));
        Vertex b = a;
        while (b == a) b = static_cast<Vertex>(uniform_below(rng, n));
        if (keep[a] && keep[b] && uf.find(a) == uf.find(b)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(pair_trials);
    out.connect_prob = p;
    out.connect_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(pair_trials));
    return out;
}

}  // namespace fpp
