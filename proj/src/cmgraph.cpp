#include "fpp/cmgraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "fpp/fenwick.hpp"
#include "fpp/hypergeometric.hpp"

namespace fpp {

namespace {

// Rows with at most this many stubs are paired one stub at a time.
constexpr std::uint64_t kSmallRow = 32;

class PairAccumulator {
public:
    explicit PairAccumulator(std::size_t n) : self_loops_(n, 0) { counts_.reserve(4 * n); }

    void add(Vertex a, Vertex b, std::uint64_t count) {
        if (count == 0) return;
        if (a == b) {
            self_loops_[a] += count;
            return;
        }
        if (a > b) std::swap(a, b);
        counts_[(static_cast<std::uint64_t>(a) << 32) | b] += count;
    }

    MultiGraph finish(const DegreeSequence& seq) && {
        std::vector<MultiEdge> edges;
        edges.reserve(counts_.size());
        for (const auto& [key, mult] : counts_) {
            edges.push_back({static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu), mult});
        }
        std::sort(edges.begin(), edges.end(),
                  [](const MultiEdge& x, const MultiEdge& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
        return MultiGraph(seq, std::move(edges), std::move(self_loops_));
    }

private:
    std::unordered_map<std::uint64_t, std::uint64_t> counts_;
    std::vector<std::uint64_t> self_loops_;
};

}  // namespace

MultiGraph::MultiGraph(DegreeSequence seq, std::vector<MultiEdge> edges, std::vector<std::uint64_t> self_loops)
    : seq_(std::move(seq)), edges_(std::move(edges)), self_loops_(std::move(self_loops)) {
    const std::size_t nv = seq_.n();
    if (self_loops_.size() != nv) throw std::invalid_argument("MultiGraph: self_loops size mismatch");
    offsets_.assign(nv + 1, 0);
    for (const auto& e : edges_) {
        if (e.u >= e.v || e.v >= nv) throw std::invalid_argument("MultiGraph: edges must satisfy u < v < n");
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < nv; ++v) offsets_[v + 1] += offsets_[v];
    nbr_.resize(offsets_[nv]);
    nbr_mult_.resize(offsets_[nv]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        nbr_[fill[e.u]] = e.v;
        nbr_mult_[fill[e.u]++] = e.multiplicity;
        nbr_[fill[e.v]] = e.u;
        nbr_mult_[fill[e.v]++] = e.multiplicity;
    }
    // Edges are sorted by (u, v), so each list is already increasing: lower ids
    // arrive first as "u" partners, then higher ids as "v" partners.
}

std::uint64_t MultiGraph::multiplicity(Vertex i, Vertex j) const {
    const auto nb = neighbors(i);
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return 0;
    return neighbor_multiplicities(i)[static_cast<std::size_t>(it - nb.begin())];
}

SimpleGraph::SimpleGraph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    arcs.reserve(2 * edges.size());
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw std::invalid_argument("SimpleGraph: vertex out of range");
        if (a == b) continue;
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    offsets_.assign(n + 1, 0);
    adj_.reserve(arcs.size());
    for (auto [a, b] : arcs) {
        ++offsets_[a + 1];
        adj_.push_back(b);
    }
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
}

MultiGraph pair_stubs(const DegreeSequence& seq, Rng& rng) {
    if (seq.total() % 2 != 0) throw std::invalid_argument("pair_stubs: total degree must be even");
    const std::size_t n = seq.n();
    const auto order = seq.sorted_desc();

    // Stub counts at odd (rows) and even (columns) positions, in degree order.
    std::vector<std::uint64_t> rows(n), cols(n);
    std::uint64_t pop = seq.total();
    std::uint64_t draws = seq.total() / 2;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const Degree d = seq.degree(order[pos]);
        const std::uint64_t a = sample_hypergeometric(d, pop - d, draws, rng);
        rows[pos] = a;
        cols[pos] = d - a;
        pop -= d;
        draws -= a;
    }

    Fenwick<std::uint64_t> remaining{std::span<const std::uint64_t>(cols)};
    std::uint64_t col_total = seq.total() / 2;
    PairAccumulator acc(n);

    auto draw_single = [&](std::uint64_t base, Vertex row_vertex) {
        const std::uint64_t target = base + uniform_below(rng, col_total - base);
        const std::size_t pos = remaining.find(target);
        remaining.add(pos, ~std::uint64_t{0});  // -1
        --cols[pos];
        --col_total;
        acc.add(row_vertex, order[pos], 1);
    };

    for (std::size_t rpos = 0; rpos < n; ++rpos) {
        std::uint64_t r = rows[rpos];
        const Vertex rv = order[rpos];
        if (r == 0) continue;
        if (r <= kSmallRow) {
            for (; r > 0; --r) draw_single(0, rv);
            continue;
        }
        // Walk columns until the residue is small; the residue is then drawn
        // stub by stub from the columns not yet visited.
        std::uint64_t unvisited = col_total;
        std::size_t cpos = 0;
        for (; cpos < n && r > kSmallRow; ++cpos) {
            const std::uint64_t c = cols[cpos];
            if (c == 0) continue;
            const std::uint64_t x = sample_hypergeometric(c, unvisited - c, r, rng);
            unvisited -= c;
            if (x == 0) continue;
            cols[cpos] -= x;
            remaining.add(cpos, ~x + 1);  // -x
            col_total -= x;
            r -= x;
            acc.add(rv, order[cpos], x);
        }
        if (r > 0) {
            const std::uint64_t base = remaining.prefix(cpos);
            for (; r > 0; --r) draw_single(base, rv);
        }
    }
    return std::move(acc).finish(seq);
}

MultiGraph pair_stubs_sequential(const DegreeSequence& seq, Rng& rng) {
    if (seq.total() % 2 != 0) throw std::invalid_argument("pair_stubs_sequential: total degree must be even");
    const std::size_t n = seq.n();
    std::vector<std::uint64_t> residual(seq.degrees().begin(), seq.degrees().end());
    Fenwick<std::uint64_t> free_stubs{std::span<const std::uint64_t>(residual)};
    std::uint64_t total = seq.total();
    PairAccumulator acc(n);
    Vertex cursor = 0;
    while (total > 0) {
        while (residual[cursor] == 0) ++cursor;
        --residual[cursor];
        free_stubs.add(cursor, ~std::uint64_t{0});
        --total;
        const auto partner = static_cast<Vertex>(free_stubs.find(uniform_below(rng, total)));
        --residual[partner];
        free_stubs.add(partner, ~std::uint64_t{0});
        --total;
        acc.add(cursor, partner, 1);
    }
    return std::move(acc).finish(seq);
}

SimpleGraph erase(const MultiGraph& mg) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(mg.edges().size());
    for (const auto& e : mg.edges()) edges.emplace_back(e.u, e.v);
    return SimpleGraph(mg.n(), edges);
}

SimpleGraph erase(const SimpleGraph& sg) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(sg.edge_count());
    for (Vertex v = 0; v < sg.n(); ++v)
        for (Vertex w : sg.adjacency(v))
            if (v < w) edges.emplace_back(v, w);
    return SimpleGraph(sg.n(), edges);
}

double default_eps_n(std::size_t n) { return std::pow(static_cast<double>(n), -1.0 / 8.0); }

std::vector<Vertex> super_vertices(const DegreeSequence& seq, double eps_n) {
    if (!(eps_n > 0.0)) throw std::invalid_argument("super_vertices: eps_n must be positive");
    const double threshold = eps_n * std::pow(static_cast<double>(seq.n()), 1.0 / seq.law().alpha());
    std::vector<Vertex> out;
    for (Vertex v : seq.sorted_desc()) {
        if (static_cast<double>(seq.degree(v)) > threshold)
            out.push_back(v);
        else
            break;
    }
    return out;
}

double multiplicity_ratio(const MultiGraph& mg, Vertex i, Vertex j) {
    if (i == j) throw std::invalid_argument("multiplicity_ratio: i == j");
    const auto& seq = mg.degrees();
    const double total = static_cast<double>(seq.total());
    const double expected = static_cast<double>(seq.degree(i)) * static_cast<double>(seq.degree(j)) / total;
    return static_cast<double>(mg.multiplicity(i, j)) / expected;
}

std::size_t common_neighbors(const SimpleGraph& sg, Vertex i, Vertex j) {
    if (i == j) throw std::invalid_argument("common_neighbors: i == j");
    const auto a = sg.adjacency(i);
    const auto b = sg.adjacency(j);
    std::size_t count = 0;
    auto x = a.begin();
    auto y = b.begin();
    while (x != a.end() && y != b.end()) {
        if (*x < *y)
            ++x;
        else if (*y < *x)
            ++y;
        else {
            ++count;
            ++x;
            ++y;
        }
    }
    return count;
}

GoodEventReport check_good_event(const DegreeSequence& seq, const SimpleGraph& sg, double a, double C, double C_er) {
    if (!(a > 0.0) || !(C > 0.0) || !(C_er > 0.0)) throw std::invalid_argument("check_good_event: parameters must be positive");
    GoodEventReport rep;
    const double n = static_cast<double>(seq.n());
    const double inv_alpha = 1.0 / seq.law().alpha();
    rep.scaled_total = static_cast<double>(seq.total()) * std::pow(n, -inv_alpha);
    rep.g1 = rep.scaled_total >= a && rep.scaled_total <= 1.0 / a;
    rep.g2 = true;
    rep.g3 = true;
    for (std::size_t i = 1; i <= seq.n(); ++i) {
        const Vertex v = seq.ranked(i);
        const double scale = std::pow(n / static_cast<double>(i), inv_alpha);
        const double d = static_cast<double>(seq.degree(v));
        if (rep.g2 && (d < scale / C || d > C * scale)) {
            rep.g2 = false;
            rep.g2_first_violation = i;
        }
        if (rep.g3 && static_cast<double>(sg.erased_degree(v)) > C_er * n / static_cast<double>(i)) {
            rep.g3 = false;
            rep.g3_first_violation = i;
        }
    }
    return rep;
}

std::optional<std::size_t> bfs_distance(const SimpleGraph& sg, Vertex from, Vertex to) {
    if (from == to) return 0;
    std::vector<std::int64_t> dist(sg.n(), -1);
    std::deque<Vertex> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : sg.adjacency(v)) {
            if (dist[w] >= 0) continue;
            dist[w] = dist[v] + 1;
            if (w == to) return static_cast<std::size_t>(dist[w]);
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

}  // namespace fpp
