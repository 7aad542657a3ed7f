#include "fpp/shortestpath.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>

namespace fpp {

EdgeWeightLaw EdgeWeightLaw::uniform(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("EdgeWeightLaw: uniform bound must be positive");
    return EdgeWeightLaw(Kind::uniform_0_b, b);
}

EdgeWeightLaw EdgeWeightLaw::parse(const std::string& text) {
    if (text == "exp" || text == "exponential") return exponential();
    if (text.rfind("uniform:", 0) == 0) return uniform(std::stod(text.substr(8)));
    throw std::invalid_argument("EdgeWeightLaw: unknown law '" + text + "' (expected exp or uniform:<b>)");
}

std::string EdgeWeightLaw::name() const {
    if (kind_ == Kind::exponential_rate1) return "exp";
    std::string s = std::to_string(b_);
    return "uniform:" + s;
}

double EdgeWeightLaw::draw(Rng& rng) const {
    if (kind_ == Kind::exponential_rate1) return fpp::exponential(rng);
    return b_ * uniform01(rng);
}

double EdgeWeightLaw::draw_min(Rng& rng, std::uint64_t m) const {
    if (m == 0) throw std::invalid_argument("EdgeWeightLaw::draw_min: m must be >= 1");
    const double md = static_cast<double>(m);
    if (kind_ == Kind::exponential_rate1) return fpp::exponential(rng, md);
    // P(min > x) = (1 - x/b)^m.
    return -b_ * std::expm1(std::log(uniform01(rng)) / md);
}

WeightedGraph::WeightedGraph(GraphMode mode, std::vector<std::size_t> offsets, std::vector<Vertex> targets,
                             std::vector<double> weights)
    : mode_(mode), offsets_(std::move(offsets)), targets_(std::move(targets)), weights_(std::move(weights)) {
    if (offsets_.empty() || targets_.size() != weights_.size() || offsets_.back() != targets_.size())
        throw std::invalid_argument("WeightedGraph: inconsistent CSR arrays");
    for (double w : weights_)
        if (!(w > 0.0)) throw std::invalid_argument("WeightedGraph: weights must be strictly positive");
}

std::optional<double> WeightedGraph::weight(Vertex i, Vertex j) const {
    const auto nb = neighbors(i);
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return std::nullopt;
    return weights(i)[static_cast<std::size_t>(it - nb.begin())];
}

double WeightedGraph::min_incident(Vertex v) const {
    const auto w = weights(v);
    return w.empty() ? kInfinity : *std::min_element(w.begin(), w.end());
}

namespace {

// Fills the weight array for a CSR whose adjacency lists are sorted; each
// undirected edge is drawn once (from its lower endpoint) and mirrored.
template <typename NeighborsFn, typename DrawFn>
WeightedGraph build_csr(GraphMode mode, std::size_t n, NeighborsFn neighbors, DrawFn draw) {
    std::vector<std::size_t> offsets(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + neighbors(v).size();
    std::vector<Vertex> targets(offsets[n]);
    std::vector<double> weights(offsets[n], 0.0);
    for (Vertex v = 0; v < n; ++v) {
        const auto nb = neighbors(v);
        std::copy(nb.begin(), nb.end(), targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]));
    }
    for (Vertex v = 0; v < n; ++v) {
        for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) {
            const Vertex w = targets[k];
            if (w < v) continue;
            const double x = draw(v, k - offsets[v]);
            weights[k] = x;
            const auto begin = targets.begin() + static_cast<std::ptrdiff_t>(offsets[w]);
            const auto end = targets.begin() + static_cast<std::ptrdiff_t>(offsets[w + 1]);
            weights[static_cast<std::size_t>(std::lower_bound(begin, end, v) - targets.begin())] = x;
        }
    }
    return WeightedGraph(mode, std::move(offsets), std::move(targets), std::move(weights));
}

}  // namespace

WeightedGraph assign_weights(const MultiGraph& g, const EdgeWeightLaw& law, Rng& rng) {
    return build_csr(
        GraphMode::original, g.n(), [&](Vertex v) { return g.neighbors(v); },
        [&](Vertex v, std::size_t idx) { return law.draw_min(rng, g.neighbor_multiplicities(v)[idx]); });
}

WeightedGraph assign_weights(const SimpleGraph& g, const EdgeWeightLaw& law, Rng& rng) {
    return build_csr(
        GraphMode::erased, g.n(), [&](Vertex v) { return g.adjacency(v); },
        [&](Vertex, std::size_t) { return law.draw(rng); });
}

WeightedGraph assign_weights(const MultiGraph* mg, const SimpleGraph* sg, const EdgeWeightLaw& law, GraphMode mode,
                             Rng& rng) {
    if (mode == GraphMode::original) {
        if (mg == nullptr) throw std::invalid_argument("assign_weights: original mode requires a MultiGraph");
        return assign_weights(*mg, law, rng);
    }
    if (sg == nullptr) throw std::invalid_argument("assign_weights: erased mode requires a SimpleGraph");
    return assign_weights(*sg, law, rng);
}

ShortestPathTree dijkstra(const WeightedGraph& wg, Vertex src, std::optional<Vertex> target) {
    const std::size_t n = wg.n();
    if (src >= n) throw std::out_of_range("dijkstra: source out of range");
    ShortestPathTree tree;
    tree.source = src;
    tree.distance.assign(n, kInfinity);
    tree.hops.assign(n, 0);
    tree.predecessor.assign(n, kNoVertex);
    std::vector<char> settled(n, 0);

    using Entry = std::pair<double, Vertex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    tree.distance[src] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        if (target && u == *target) break;
        const auto nb = wg.neighbors(u);
        const auto w = wg.weights(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const Vertex v = nb[k];
            if (settled[v]) continue;
            const double nd = d + w[k];
            if (nd < tree.distance[v] || (nd == tree.distance[v] && u < tree.predecessor[v])) {
                const bool improved = nd < tree.distance[v];
                tree.distance[v] = nd;
                tree.predecessor[v] = u;
                tree.hops[v] = tree.hops[u] + 1;
                if (improved) heap.emplace(nd, v);
            }
        }
    }
    return tree;
}

std::optional<PathResult> extract_path(const ShortestPathTree& tree, Vertex v) {
    if (!tree.reached(v)) return std::nullopt;
    PathResult res;
    res.weight = tree.distance[v];
    res.hopcount = tree.hops[v];
    for (Vertex cur = v; cur != kNoVertex; cur = tree.predecessor[cur]) res.path.push_back(cur);
    std::reverse(res.path.begin(), res.path.end());
    return res;
}

PairSample sample_pair_fpp(const WeightedGraph& wg, Rng& rng) {
    const std::size_t n = wg.n();
    if (n < 2) throw std::invalid_argument("sample_pair_fpp: need at least two vertices");
    PairSample s;
    s.a1 = static_cast<Vertex>(uniform_below(rng, n));
    do {
        s.a2 = static_cast<Vertex>(uniform_below(rng, n));
    } while (s.a2 == s.a1);
    const auto tree = dijkstra(wg, s.a1, s.a2);
    s.path = extract_path(tree, s.a2);
    return s;
}

TwoEdgeMin two_edge_min(const WeightedGraph& wg, Vertex i, Vertex j) {
    if (wg.mode() != GraphMode::erased) throw std::invalid_argument("two_edge_min: requires an erased-mode graph");
    if (i == j) throw std::invalid_argument("two_edge_min: i == j");
    TwoEdgeMin out;
    const auto a = wg.neighbors(i);
    const auto b = wg.neighbors(j);
    const auto wa = wg.weights(i);
    const auto wb = wg.weights(j);
    std::size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
        if (a[x] < b[y]) {
            ++x;
        } else if (b[y] < a[x]) {
            ++y;
        } else {
            ++out.paths;
            const double w = wa[x] + wb[y];
            if (w < out.weight) {
                out.weight = w;
                out.via = a[x];
            }
            ++x;
            ++y;
        }
    }
    out.scaled = std::sqrt(static_cast<double>(wg.n())) * out.weight;
    return out;
}

std::vector<double> min_gamma_trial(double beta, std::size_t n, std::span<const double> x_grid, Rng& rng,
                                    std::size_t replicas) {
    if (!(beta > 0.0)) throw std::invalid_argument("min_gamma_trial: beta must be positive");
    const auto m = static_cast<std::size_t>(std::floor(beta * static_cast<double>(n)));
    if (m == 0) throw std::invalid_argument("min_gamma_trial: floor(beta n) must be >= 1");
    const double root_n = std::sqrt(static_cast<double>(n));
    std::vector<std::size_t> above(x_grid.size(), 0);
    for (std::size_t r = 0; r < replicas; ++r) {
        double best = kInfinity;
        for (std::size_t s = 0; s < m; ++s) best = std::min(best, exponential(rng) + exponential(rng));
        const double scaled = root_n * best;
        for (std::size_t g = 0; g < x_grid.size(); ++g)
            if (scaled > x_grid[g]) ++above[g];
    }
    std::vector<double> survival(x_grid.size());
    for (std::size_t g = 0; g < x_grid.size(); ++g)
        survival[g] = static_cast<double>(above[g]) / static_cast<double>(replicas);
    return survival;
}

MinGammaJoint min_gamma_joint(std::size_t m, std::size_t replicas, Rng& rng) {
    if (m == 0) throw std::invalid_argument("min_gamma_joint: m must be >= 1");
    const double root_m = std::sqrt(static_cast<double>(m));
    MinGammaJoint out;
    out.eta.reserve(replicas);
    out.kappa.reserve(replicas);
    out.rho.reserve(replicas);
    for (std::size_t r = 0; r < replicas; ++r) {
        double xy = kInfinity, xz = kInfinity, yz = kInfinity;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = exponential(rng);
            const double y = exponential(rng);
            const double z = exponential(rng);
            xy = std::min(xy, x + y);
            xz = std::min(xz, x + z);
            yz = std::min(yz, y + z);
        }
        out.eta.push_back(root_m * xy);
        out.kappa.push_back(root_m * xz);
        out.rho.push_back(root_m * yz);
    }
    return out;
}

}  // namespace fpp
