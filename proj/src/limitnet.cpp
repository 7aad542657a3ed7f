#include "fpp/limitnet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpp/fenwick.hpp"
#include "fpp/parallel.hpp"

namespace fpp {

LimitNetwork::LimitNetwork(LimitKind kind, std::vector<double> masses, double eta, double zeta,
                           std::vector<double> weights)
    : kind_(kind), masses_(std::move(masses)), eta_(eta), zeta_(zeta), weights_(std::move(weights)) {
    if (weights_.size() != masses_.size() * masses_.size())
        throw std::invalid_argument("LimitNetwork: weight matrix size does not match the vertex count");
}

LimitNetwork build_limit(const PDRealization& pd, LimitKind kind, double zeta, const DegreeLaw& law, Rng& rng,
                         std::span<const double> extra) {
    if (kind == LimitKind::erased && !(zeta > 0.0)) throw std::invalid_argument("build_limit: zeta must be > 0");
    std::vector<double> masses(pd.P.begin(), pd.P.end());
    masses.insert(masses.end(), extra.begin(), extra.end());
    const std::size_t m = masses.size();
    std::vector<double> w(m * m, kInfinity);

    if (kind == LimitKind::original) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double x = exponential(rng, masses[i] * masses[j] * pd.eta);
                w[i * m + j] = w[j * m + i] = x;
            }
    } else {
        DegreePgf pgf(law);
        std::vector<double> h(m);
        for (std::size_t i = 0; i < m; ++i) h[i] = pgf.complement(masses[i]);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double s = masses[i] + masses[j];
                const double f = std::max(0.0, h[i] + h[j] - pgf.complement(std::min(1.0, s)));
                const double e = exponential(rng);
                const double x = f > 0.0 ? std::sqrt(2.0 * e / (zeta * zeta * f)) : kInfinity;
                w[i * m + j] = w[j * m + i] = x;
            }
    }
    return LimitNetwork(kind, std::move(masses), pd.eta, zeta, std::move(w));
}

namespace {

// Dense Dijkstra. `edge(u, v)` returns the weight of {u,v}; it is called at
// most once per unordered pair, when the first endpoint is settled.
template <typename EdgeFn>
PathResult dense_dijkstra(std::size_t m, std::size_t src, std::size_t dst, EdgeFn&& edge) {
    PathResult out;
    if (src == dst) {
        out.path = {static_cast<Vertex>(src)};
        return out;
    }
    std::vector<double> dist(m, kInfinity);
    std::vector<std::uint32_t> hops(m, 0);
    std::vector<Vertex> pred(m, kNoVertex);
    std::vector<char> done(m, 0);
    dist[src] = 0.0;
    for (;;) {
        std::size_t u = m;
        for (std::size_t v = 0; v < m; ++v)
            if (!done[v] && dist[v] < kInfinity && (u == m || dist[v] < dist[u])) u = v;
        if (u == m) break;
        done[u] = 1;
        if (u == dst) break;
        for (std::size_t v = 0; v < m; ++v) {
            if (done[v]) continue;
            const double cand = dist[u] + edge(u, v);
            if (cand < dist[v] || (cand == dist[v] && cand < kInfinity && u < pred[v])) {
                dist[v] = cand;
                hops[v] = hops[u] + 1;
                pred[v] = static_cast<Vertex>(u);
            }
        }
    }
    if (!(dist[dst] < kInfinity)) {
        out.weight = kInfinity;
        return out;
    }
    out.weight = dist[dst];
    out.hopcount = hops[dst];
    for (Vertex v = static_cast<Vertex>(dst); v != kNoVertex; v = pred[v]) out.path.push_back(v);
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

std::vector<double> extra_masses(const Cell& I, const Cell& J) {
    std::vector<double> extra;
    if (I.synthetic) extra.push_back(I.P);
    if (J.synthetic) extra.push_back(J.P);
    return extra;
}

}  // namespace

PathResult fpp_limit(const LimitNetwork& net, std::size_t i, std::size_t j) {
    if (i >= net.size() || j >= net.size()) throw std::out_of_range("fpp_limit: vertex outside the network");
    return dense_dijkstra(net.size(), i, j, [&](std::size_t u, std::size_t v) { return net.weight(u, v); });
}

std::pair<Cell, Cell> sample_IJ(const PDRealization& pd, LimitKind kind, const DegreeLaw& law, Rng& rng) {
    Cell I, J;
    if (kind == LimitKind::original) {
        I = sample_cell(pd, rng);
        J = sample_cell(pd, rng);
    } else {
        I = sample_Der_I(pd, law, rng).I;
        J = sample_Der_I(pd, law, rng).I;
    }
    // Synthetic cells are fresh tail cells; give J its own slot after I's.
    if (J.synthetic && I.synthetic) J.index = I.index + 1;
    return {I, J};
}

std::uint32_t LimitSample::graph_hopcount() const {
    return kind == LimitKind::original ? 2 + hopcount : 2 + 2 * hopcount;
}

namespace {

// Original-kind solve with weights drawn on demand. Every pair is read at
// most once by dense_dijkstra, so this has the law of the explicit network.
PathResult lazy_original(const PDRealization& pd, std::span<const double> extra, std::size_t i, std::size_t j,
                         Rng& rng) {
    const std::size_t K = pd.K;
    auto mass = [&](std::size_t v) { return v < K ? pd.P[v] : extra[v - K]; };
    return dense_dijkstra(K + extra.size(), i, j, [&](std::size_t u, std::size_t v) {
        return exponential(rng, mass(u) * mass(v) * pd.eta);
    });
}

}  // namespace

LimitSample sample_limit_fpp(const PDRealization& pd, LimitKind kind, double zeta, const DegreeLaw& law, Rng& rng) {
    LimitSample s;
    s.kind = kind;
    std::tie(s.I, s.J) = sample_IJ(pd, kind, law, rng);
    const auto extra = extra_masses(s.I, s.J);
    PathResult r;
    if (kind == LimitKind::original) {
        r = lazy_original(pd, extra, s.I.index, s.J.index, rng);
    } else {
        const LimitNetwork net = build_limit(pd, kind, zeta, law, rng, extra);
        r = fpp_limit(net, s.I.index, s.J.index);
    }
    s.weight = r.weight;
    s.hopcount = r.hopcount;
    return s;
}

ChainResult swt_chain_or(const PDRealization& pd, Rng& rng) {
    ChainResult out;
    Cell J1 = sample_cell(pd, rng);
    Cell J2 = sample_cell(pd, rng);
    if (!J1.synthetic && !J2.synthetic && J1.index == J2.index) return out;
    if (J1.synthetic && J2.synthetic) J2.index = J1.index + 1;

    std::vector<double> mass(pd.P.begin(), pd.P.end());
    if (J1.synthetic) mass.push_back(J1.P);
    if (J2.synthetic) mass.push_back(J2.P);
    const std::size_t m = mass.size();

    Fenwick<double> outside{std::span<const double>(mass)};
    Fenwick<double> inside(m);
    std::vector<std::uint32_t> height(m, 0);
    std::vector<char> in_tree(m, 0);
    std::vector<std::size_t> members;

    auto admit = [&](std::size_t v, std::uint32_t h) {
        in_tree[v] = 1;
        height[v] = h;
        outside.add(v, -mass[v]);
        inside.add(v, mass[v]);
        members.push_back(v);
    };
    admit(J1.index, 0);

    // Draw from a Fenwick tree restricted to the flagged set; rounding can
    // land on an entry of the other set, so fall back to a linear scan.
    auto draw = [&](const Fenwick<double>& tree, bool want_inside) -> std::size_t {
        const double total = tree.total();
        if (total > 0.0) {
            const std::size_t v = tree.find(uniform01(rng) * total);
            if (static_cast<bool>(in_tree[v]) == want_inside && mass[v] > 0.0) return v;
        }
        double acc = 0.0;
        for (std::size_t v = 0; v < m; ++v)
            if (static_cast<bool>(in_tree[v]) == want_inside) acc += mass[v];
        double u = uniform01(rng) * acc;
        std::size_t last = m;
        for (std::size_t v = 0; v < m; ++v) {
            if (static_cast<bool>(in_tree[v]) != want_inside) continue;
            last = v;
            if (u < mass[v]) return v;
            u -= mass[v];
        }
        return last;
    };

    while (out.steps < kChainStepCap) {
        ++out.steps;
        const std::size_t b = draw(outside, false);
        const std::size_t a = draw(inside, true);
        admit(b, height[a] + 1);
        if (b == J2.index) {
            out.hopcount = 2 + height[b];
            return out;
        }
        // Periodically rebuild to stop cancellation drift in the outside sums.
        if (members.size() % 256 == 0) {
            std::vector<double> rest(m, 0.0);
            for (std::size_t v = 0; v < m; ++v)
                if (!in_tree[v]) rest[v] = mass[v];
            outside = Fenwick<double>(std::span<const double>(rest));
        }
    }
    out.capped = true;
    out.hopcount = 2 + height[J2.index];
    return out;
}

const PiEntry* PiTable::find(std::uint32_t k) const {
    for (const auto& e : entries)
        if (e.k == k) return &e;
    return nullptr;
}

PiTable estimate_pi(double tau, std::size_t K, std::size_t replicas, std::uint64_t seed) {
    if (K < 100) throw std::invalid_argument("estimate_pi: K must be >= 100");
    if (replicas < 1000) throw std::invalid_argument("estimate_pi: replicas must be >= 1000");
    const DegreeLaw law(tau);
    PiTable table;
    table.tau = tau;
    table.K = K;
    table.replicas = replicas;
    table.chain_hops.resize(replicas);
    table.fpp_hops.resize(replicas);
    std::vector<char> capped(replicas, 0);

    for_replicas(replicas, [&](std::size_t r) {
        Rng rng = make_rng(seed, r);
        const PDRealization pd = sample_pd(tau, K, rng);
        const ChainResult c = swt_chain_or(pd, rng);
        table.chain_hops[r] = c.hopcount;
        capped[r] = c.capped;
        const LimitSample s = sample_limit_fpp(pd, LimitKind::original, 1.0, law, rng);
        table.fpp_hops[r] = s.graph_hopcount();
    });
    for (char c : capped) table.capped_chains += c;

    std::uint32_t top = 2;
    for (std::size_t r = 0; r < replicas; ++r) top = std::max({top, table.chain_hops[r], table.fpp_hops[r]});
    std::vector<double> nc(top + 1, 0.0), nf(top + 1, 0.0);
    for (std::size_t r = 0; r < replicas; ++r) {
        nc[table.chain_hops[r]] += 1.0;
        nf[table.fpp_hops[r]] += 1.0;
    }
    const double R = static_cast<double>(replicas);
    for (std::uint32_t k = 2; k <= top; ++k) {
        PiEntry e;
        e.k = k;
        e.pi_chain = nc[k] / R;
        e.pi_fpp = nf[k] / R;
        e.pi = (nc[k] + nf[k]) / (2.0 * R);
        if (!(e.pi > 0.0)) break;
        e.stderr_ = std::sqrt(e.pi * (1.0 - e.pi) / (2.0 * R));
        e.gap = e.pi_chain - e.pi_fpp;
        table.entries.push_back(e);
    }
    return table;
}

}  // namespace fpp
