#ifndef FPP_TESTS_ORACLES_HPP
#define FPP_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fpp/cmgraph.hpp"
#include "fpp/degrees.hpp"

namespace oracle {

// (u, v, count) with u <= v; loops appear as (v, v, loops).
using Outcome = std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>;

inline Outcome outcome_of(const fpp::MultiGraph& g) {
    Outcome out;
    for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.multiplicity);
    for (std::uint32_t v = 0; v < g.n(); ++v)
        if (g.self_loops(v) > 0) out.emplace_back(v, v, g.self_loops(v));
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline void match(std::vector<std::uint32_t>& owner, std::vector<char>& used,
                  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t>& cur,
                  std::map<Outcome, double>& law) {
    std::size_t first = 0;
    while (first < owner.size() && used[first]) ++first;
    if (first == owner.size()) {
        Outcome o;
        for (auto& [k, c] : cur) o.emplace_back(k.first, k.second, c);
        std::sort(o.begin(), o.end());
        law[o] += 1.0;
        return;
    }
    used[first] = 1;
    for (std::size_t k = first + 1; k < owner.size(); ++k) {
        if (used[k]) continue;
        used[k] = 1;
        auto key = std::minmax(owner[first], owner[k]);
        ++cur[key];
        match(owner, used, cur, law);
        if (--cur[key] == 0) cur.erase(key);
        used[k] = 0;
    }
    used[first] = 0;
}

}  // namespace detail

// Exact law of the collapsed configuration multigraph: every perfect matching
// of the labelled stubs is equally likely.
inline std::map<Outcome, double> matching_law(const std::vector<fpp::Degree>& degrees) {
    std::vector<std::uint32_t> owner;
    for (std::uint32_t v = 0; v < degrees.size(); ++v)
        for (fpp::Degree k = 0; k < degrees[v]; ++k) owner.push_back(v);
    std::vector<char> used(owner.size(), 0);
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> cur;
    std::map<Outcome, double> law;
    detail::match(owner, used, cur, law);
    double total = 0.0;
    for (auto& [o, w] : law) total += w;
    for (auto& [o, w] : law) w /= total;
    return law;
}

// Minimal weight over all simple paths between s and t in a small dense
// weight matrix (inf = no edge), with the fewest hops among minimisers.
struct BestPath {
    double weight = std::numeric_limits<double>::infinity();
    std::uint32_t hops = 0;
};

inline void walk(const std::vector<std::vector<double>>& w, std::size_t at, std::size_t t, double acc,
                 std::uint32_t hops, std::vector<char>& seen, BestPath& best) {
    if (at == t) {
        if (acc < best.weight || (acc == best.weight && hops < best.hops)) best = {acc, hops};
        return;
    }
    for (std::size_t nb = 0; nb < w.size(); ++nb) {
        if (seen[nb] || !std::isfinite(w[at][nb])) continue;
        seen[nb] = 1;
        walk(w, nb, t, acc + w[at][nb], hops + 1, seen, best);
        seen[nb] = 0;
    }
}

inline BestPath best_simple_path(const std::vector<std::vector<double>>& w, std::size_t s, std::size_t t) {
    std::vector<char> seen(w.size(), 0);
    seen[s] = 1;
    BestPath best;
    walk(w, s, t, 0.0, 0, seen, best);
    return best;
}

// E[sum P_i^r] for PD(alpha, 0) via the size-biased first-pick density
// u^(r-1) times the Beta(1-alpha, alpha) structure distribution.
inline double pd_moment_quadrature(double tau, int r) {
    const double a = tau - 1.0;
    const double norm = std::tgamma(a) * std::tgamma(1.0 - a);
    // uc is the distance to the nearer endpoint; it keeps 1 - u exact near 1.
    auto integrand = [&](double u, double uc) {
        const double v = u > 0.5 ? uc : 1.0 - u;
        return std::pow(u, r - 1.0 - a) * std::pow(v, a - 1.0) / norm;
    };
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate(integrand, 0.0, 1.0);
}

inline double hypergeometric_pmf(std::uint64_t good, std::uint64_t bad, std::uint64_t sample, std::uint64_t k) {
    auto lchoose = [](double n, double r) { return std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1); };
    if (k > good || sample - k > bad || k > sample) return 0.0;
    return std::exp(lchoose(double(good), double(k)) + lchoose(double(bad), double(sample - k)) -
                    lchoose(double(good + bad), double(sample)));
}

inline long double polylog_series(long double s, long double x) {
    long double sum = 0.0L, xk = 1.0L;
    for (long k = 1; k < 100'000'000; ++k) {
        xk *= x;
        const long double term = xk / std::pow(static_cast<long double>(k), s);
        sum += term;
        if (term <= 1e-22L * sum) break;
    }
    return sum;
}

// Monte Carlo for f(s,t): D trials land in cell s, cell t or elsewhere; the
// event is that both named cells are hit.
inline double f_joint_mc(const fpp::DegreeLaw& law, double s, double t, std::size_t draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        double u = U(rng);
        while (u == 0.0) u = U(rng);
        const fpp::Degree d = fpp::sample_degree(law, u);
        // P(cell s missed) etc. through a binomial split: count trials in s, then in t among the rest.
        std::binomial_distribution<std::uint64_t> bs(d, s);
        const auto ns = bs(rng);
        const double rest = t / (1.0 - s);
        std::binomial_distribution<std::uint64_t> bt(d - ns, std::min(1.0, rest));
        const auto nt = bt(rng);
        hits += (ns > 0 && nt > 0);
    }
    return static_cast<double>(hits) / static_cast<double>(draws);
}

}  // namespace oracle

#endif
