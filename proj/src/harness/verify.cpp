#include "fpp/harness/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fpp/cmgraph.hpp"
#include "fpp/harness/run.hpp"
#include "fpp/limitnet.hpp"
#include "fpp/parallel.hpp"
#include "fpp/pdlaw.hpp"
#include "fpp/resilience.hpp"
#include "fpp/shortestpath.hpp"
#include "fpp/stats.hpp"

namespace fpp::harness {

namespace fs = std::filesystem;
using nlohmann::json;

bool VerifyReport::all_passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
}

std::string format_line(const CriterionResult& r) {
    return std::string(r.passed ? "PASS " : "FAIL ") + r.id + ": " + r.summary;
}

namespace {

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

struct Context {
    ExperimentConfig cfg;
    double scale = 1.0;
    fs::path dir;

    double tol(double base) const { return base * scale; }
    std::uint64_t seed(std::uint64_t stream) const { return child_seed(cfg.master_seed, 0, 1000 + stream); }
    void write_csv(const std::string& name, const std::string& content) const { write_atomic(dir / name, content); }
};

// ---------------------------------------------------------------------------
// pi_2 identity and cross-estimator agreement

CriterionResult pi2_identity(const Context& ctx) {
    CriterionResult res;
    std::ostringstream csv;
    csv << "tau,k,pi,stderr,pi_chain,pi_fpp,gap\n";
    bool ok = true;
    const double tol = ctx.tol(0.03);
    std::string line;
    json per_tau = json::array();
    for (double tau : {1.2, 1.5, 1.8}) {
        const PiTable t = estimate_pi(tau, 200, 10000, ctx.seed(static_cast<std::uint64_t>(tau * 10)));
        for (const auto& e : t.entries)
            csv << format_double(tau) << ',' << e.k << ',' << format_double(e.pi) << ',' << format_double(e.stderr_)
                << ',' << format_double(e.pi_chain) << ',' << format_double(e.pi_fpp) << ',' << format_double(e.gap)
                << '\n';
        const PiEntry* e2 = t.find(2);
        const double pi2 = e2 ? e2->pi : 0.0;
        const double gap = std::abs(pi2 - (2.0 - tau));
        ok = ok && gap <= tol && t.capped_chains == 0;
        json j = {{"tau", tau},
                  {"pi2", pi2},
                  {"theory", 2.0 - tau},
                  {"abs_gap", gap},
                  {"stderr", e2 ? e2->stderr_ : 0.0},
                  {"capped_chains", t.capped_chains}};
        if (const PiEntry* e3 = t.find(3)) j["pi3"] = {{"pi", e3->pi}, {"cross_estimator_gap", e3->gap}};
        per_tau.push_back(j);
        line += fmt("tau=%.1f pi2=%.4f (2-tau=%.1f, |gap|=%.4f, se=%.4f) ", tau, pi2, 2.0 - tau, gap,
                    e2 ? e2->stderr_ : 0.0);
    }
    ctx.write_csv("pi_table.csv", csv.str());
    res.passed = ok;
    res.measured = {{"per_tau", per_tau}, {"tolerance", tol}};
    res.summary = line + fmt("tol=%.3f", tol);
    return res;
}

CriterionResult pi_universality(const Context& ctx) {
    CriterionResult res;
    const PiTable t = estimate_pi(1.5, 200, 100000, ctx.seed(2));
    const double tv = stats::tv_distance(t.chain_hops, t.fpp_hops, 8);
    const double tol = ctx.tol(0.05);
    std::ostringstream csv;
    csv << "k,pi_chain,pi_fpp\n";
    for (const auto& e : t.entries)
        if (e.k <= 8) csv << e.k << ',' << format_double(e.pi_chain) << ',' << format_double(e.pi_fpp) << '\n';
    ctx.write_csv("pi_universality.csv", csv.str());
    res.passed = tv <= tol && t.capped_chains == 0;
    res.measured = {{"tv_k_le_8", tv}, {"tolerance", tol}, {"replicas", t.replicas}, {"capped", t.capped_chains}};
    res.summary = fmt("TV(chain, 2+fpp) over k<=8 = %.4f at 1e5 replicas, tol=%.3f, capped chains=%llu", tv, tol,
                      static_cast<unsigned long long>(t.capped_chains));
    return res;
}

// ---------------------------------------------------------------------------
// Finite-n pool: every graph serves several criteria.

struct GraphStats {
    std::vector<std::uint32_t> h_or;
    std::size_t or_pairs = 0;
    std::vector<std::uint32_t> h_er;
    std::vector<double> w_er;
    std::size_t er_pairs = 0;
    // two-edge statistic for the two largest-degree vertices
    std::optional<double> scaled_w2, f_hat, f_limit, pit;  // f_hat = N_er(1,2) / n
    bool top_are_super = false;
    // resilience
    std::optional<AttackOutcome> random_p01;
    std::vector<AttackOutcome> targeted;
};

inline constexpr std::size_t kPoolGraphs = 1000;
inline constexpr std::size_t kPairsPerGraph = 10;
inline constexpr std::size_t kTwoEdgeGraphs = 200;
inline constexpr std::size_t kAttackGraphs = 20;
inline const std::vector<std::size_t> kTargetedK{0, 1, 2, 5, 10, 20};

struct Pool {
    std::size_t n = 0;
    std::vector<GraphStats> graphs;
};

Pool build_pool(const Context& ctx, std::size_t n) {
    Pool pool;
    pool.n = n;
    pool.graphs.resize(kPoolGraphs);
    const DegreeLaw law(1.5);
    const DegreePgf pgf(law);
    const EdgeWeightLaw w = EdgeWeightLaw::exponential();
    const std::uint64_t master = ctx.seed(100 + n);
    for_replicas(kPoolGraphs, [&](std::size_t g) {
        Rng rng = make_rng(master, g);
        GraphStats& s = pool.graphs[g];
        const DegreeSequence seq = sample_degree_sequence(law, n, rng);
        const MultiGraph mg = pair_stubs(seq, rng);
        const SimpleGraph sg = erase(mg);

        const WeightedGraph wor = assign_weights(mg, w, rng);
        for (std::size_t k = 0; k < kPairsPerGraph; ++k) {
            const PairSample ps = sample_pair_fpp(wor, rng);
            ++s.or_pairs;
            if (ps.connected()) s.h_or.push_back(ps.path->hopcount);
        }
        const WeightedGraph wer = assign_weights(sg, w, rng);
        for (std::size_t k = 0; k < kPairsPerGraph; ++k) {
            const PairSample ps = sample_pair_fpp(wer, rng);
            ++s.er_pairs;
            if (ps.connected()) {
                s.h_er.push_back(ps.path->hopcount);
                s.w_er.push_back(ps.path->weight);
            }
        }
        if (n != 3000) return;
        if (g < kTwoEdgeGraphs) {
            const Vertex a = seq.ranked(1), b = seq.ranked(2);
            const double L = static_cast<double>(seq.total());
            const double f = static_cast<double>(common_neighbors(sg, a, b)) / static_cast<double>(n);
            const TwoEdgeMin t = two_edge_min(wer, a, b);
            s.f_hat = f;
            s.f_limit = pgf.f_joint(static_cast<double>(seq.degree(a)) / L, static_cast<double>(seq.degree(b)) / L);
            s.scaled_w2 = t.scaled;
            s.pit = std::isfinite(t.scaled) ? std::exp(-f * t.scaled * t.scaled / 2.0) : 0.0;
            const auto sup = super_vertices(seq, default_eps_n(n));
            s.top_are_super = sup.size() >= 2;
        }
        s.random_p01 = percolate_giant(sg, 0.1, rng);
        if (g < kAttackGraphs) {
            for (std::size_t k : kTargetedK) s.targeted.push_back(targeted_attack(sg, k, 0, rng, seq.sorted_desc()));
        }
    });
    return pool;
}

struct Pools {
    Pool small, large;
};

const Pools& pools(const Context& ctx) {
    static std::optional<Pools> cache;
    static std::uint64_t cached_seed = 0;
    static fs::path cached_dir;
    if (!cache || cached_seed != ctx.cfg.master_seed || cached_dir != ctx.dir) {
        cache = Pools{build_pool(ctx, 1000), build_pool(ctx, 3000)};
        cached_seed = ctx.cfg.master_seed;
        cached_dir = ctx.dir;
        std::ostringstream csv;
        csv << "n,graph,mode,H,W\n";
        for (const Pool* p : {&cache->small, &cache->large})
            for (std::size_t g = 0; g < p->graphs.size(); ++g) {
                const auto& s = p->graphs[g];
                for (auto h : s.h_or) csv << p->n << ',' << g << ",original," << h << ",\n";
                for (std::size_t k = 0; k < s.h_er.size(); ++k)
                    csv << p->n << ',' << g << ",erased," << s.h_er[k] << ',' << format_double(s.w_er[k]) << '\n';
            }
        ctx.write_csv("finite_n_hops.csv", csv.str());
    }
    return *cache;
}

struct HopSummary {
    double p2 = 0.0, odd = 0.0, disconnected = 0.0;
    std::size_t connected = 0;
};

HopSummary summarize_hops(const Pool& p, bool erased) {
    std::size_t total = 0, conn = 0, two = 0, odd = 0;
    for (const auto& g : p.graphs) {
        const auto& h = erased ? g.h_er : g.h_or;
        total += erased ? g.er_pairs : g.or_pairs;
        conn += h.size();
        for (auto x : h) {
            two += x == 2;
            odd += x % 2;
        }
    }
    HopSummary s;
    s.connected = conn;
    s.p2 = static_cast<double>(two) / static_cast<double>(conn);
    s.odd = static_cast<double>(odd) / static_cast<double>(conn);
    s.disconnected = 1.0 - static_cast<double>(conn) / static_cast<double>(total);
    return s;
}

CriterionResult finite_n_bridge(const Context& ctx) {
    CriterionResult res;
    const auto& P = pools(ctx);
    const HopSummary a = summarize_hops(P.small, false), b = summarize_hops(P.large, false);
    const double gap_small = std::abs(a.p2 - 0.5), gap_large = std::abs(b.p2 - 0.5);
    const double tol = ctx.tol(0.07);
    res.passed = gap_large <= tol && gap_large <= gap_small;
    res.measured = {{"p_hop2_n1000", a.p2},        {"p_hop2_n3000", b.p2},
                    {"gap_n1000", gap_small},      {"gap_n3000", gap_large},
                    {"disconnected_n1000", a.disconnected}, {"disconnected_n3000", b.disconnected},
                    {"pairs_connected_n3000", b.connected}, {"tolerance", tol}};
    res.summary = fmt("P(H=2): n=1000 %.4f (gap %.4f), n=3000 %.4f (gap %.4f), tol=%.3f, disconnected %.3f/%.3f",
                      a.p2, gap_small, b.p2, gap_large, tol, a.disconnected, b.disconnected);
    return res;
}

CriterionResult even_hopcount(const Context& ctx) {
    CriterionResult res;
    const auto& P = pools(ctx);
    const HopSummary a = summarize_hops(P.small, true), b = summarize_hops(P.large, true);
    const double tol = ctx.tol(0.15);
    res.passed = b.odd <= tol && b.odd < a.odd;
    res.measured = {{"p_odd_n1000", a.odd}, {"p_odd_n3000", b.odd}, {"tolerance", tol}};
    res.summary = fmt("erased P(H odd): n=1000 %.4f, n=3000 %.4f (tol %.3f, must also decrease)", a.odd, b.odd, tol);
    return res;
}

CriterionResult two_edge_law(const Context& ctx) {
    CriterionResult res;
    const auto& P = pools(ctx);
    std::vector<double> u;
    std::size_t super = 0;
    std::ostringstream csv;
    csv << "replica,f_hat,f_limit,scaled_w2,u\n";
    for (std::size_t g = 0; g < kTwoEdgeGraphs; ++g) {
        const auto& s = P.large.graphs[g];
        u.push_back(*s.pit);
        super += s.top_are_super;
        csv << g << ',' << format_double(*s.f_hat) << ',' << format_double(*s.f_limit) << ','
            << format_double(*s.scaled_w2) << ',' << format_double(*s.pit) << '\n';
    }
    ctx.write_csv("two_edge.csv", csv.str());
    // sqrt(n) w2 ~ exp(-f x^2 / 2) exactly when u = exp(-f (sqrt(n) w2)^2 / 2) is uniform.
    const double ks = stats::ks_one_sample(u, [](double x) { return std::clamp(x, 0.0, 1.0); });
    const double tol = ctx.tol(0.1);
    res.passed = ks <= tol;
    res.measured = {{"ks", ks}, {"tolerance", tol}, {"replicas", u.size()}, {"top_pair_super", super}};
    res.summary = fmt("KS(sqrt(n) w2, exp(-f x^2/2)) = %.4f over %zu graphs (top pair super in %zu), tol=%.3f", ks,
                      u.size(), super, tol);
    return res;
}

CriterionResult weight_decomposition(const Context& ctx) {
    CriterionResult res;
    const auto& P = pools(ctx);
    std::vector<double> w;
    for (const auto& g : P.large.graphs) w.insert(w.end(), g.w_er.begin(), g.w_er.end());
    const auto triples = sample_der_triples(1.5, 1000, 20000, 10, ctx.seed(8));
    std::vector<double> v(triples.size());
    for_replicas(triples.size(), [&](std::size_t i) {
        Rng rng = make_rng(ctx.seed(9), i);
        v[i] = exponential(rng, static_cast<double>(triples[i].D1er)) +
               exponential(rng, static_cast<double>(triples[i].D2er));
    });
    const double ks = stats::ks_two_sample(w, v);
    const double tol = ctx.tol(0.1);
    res.passed = ks <= tol;
    res.measured = {{"ks", ks},
                    {"tolerance", tol},
                    {"w_samples", w.size()},
                    {"v_samples", v.size()},
                    {"w_median", stats::median(w)},
                    {"v_median", stats::median(v)}};
    res.summary = fmt("KS(W_n erased n=3000, V1+V2) = %.4f (%zu vs %zu samples, medians %.4f/%.4f), tol=%.3f", ks,
                      w.size(), v.size(), stats::median(w), stats::median(v), tol);
    return res;
}

CriterionResult robustness_contrast(const Context& ctx) {
    CriterionResult res;
    const auto& P = pools(ctx);
    // lambda(p) is the limit of E|C_n(p)| / n and |C_n(p)| / n stays random, so the
    // whole batch mean is compared; targeted removal uses the first graphs of it.
    std::vector<double> giant, second_ratio;
    std::vector<std::vector<double>> connect_by_k(kTargetedK.size());
    std::ostringstream csv;
    csv << "replica,mode,parameter,giant_size,second_size,connect_prob\n";
    for (std::size_t g = 0; g < P.large.graphs.size(); ++g) {
        const auto& s = P.large.graphs[g];
        const auto& r = *s.random_p01;
        giant.push_back(r.giant_fraction);
        second_ratio.push_back(r.giant_size ? static_cast<double>(r.second_size) / r.giant_size : 1.0);
        csv << g << ",random," << format_double(r.parameter) << ',' << r.giant_size << ',' << r.second_size << ','
            << format_double(r.connect_prob) << '\n';
        for (std::size_t k = 0; k < s.targeted.size(); ++k) {
            const auto& t = s.targeted[k];
            connect_by_k[k].push_back(t.connect_prob);
            csv << g << ",targeted," << format_double(t.parameter) << ',' << t.giant_size << ',' << t.second_size << ','
                << format_double(t.connect_prob) << '\n';
        }
    }
    ctx.write_csv("attack.csv", csv.str());
    const auto der = sample_der_batch(1.5, 1000, 100000, 10, ctx.seed(10));
    const double lambda = lambda_theory(0.1, der);
    const double giant_mean = stats::mean(giant);
    const double giant_se = stats::stderr_of_mean(giant);
    const double second_med = stats::median(second_ratio);
    const double rel = std::abs(giant_mean - lambda) / lambda;
    std::vector<double> med_k;
    for (const auto& c : connect_by_k) med_k.push_back(stats::median(c));
    const double c20 = med_k.back();
    bool monotone = true;
    for (std::size_t k = 1; k < med_k.size(); ++k) monotone = monotone && med_k[k] <= med_k[k - 1];

    const double tol_second = ctx.tol(0.1), tol_rel = ctx.tol(0.1), tol_connect = ctx.tol(0.2);
    res.passed = second_med <= tol_second && rel <= tol_rel && c20 <= tol_connect;
    res.measured = {{"random_replicas", giant.size()},
                    {"targeted_replicas", kAttackGraphs},
                    {"giant_fraction_mean", giant_mean},
                    {"giant_fraction_stderr", giant_se},
                    {"giant_fraction_median", stats::median(giant)},
                    {"giant_fraction_variance", stats::variance(giant)},
                    {"lambda_hat", lambda},
                    {"relative_gap", rel},
                    {"second_over_largest_median", second_med},
                    {"connect_median_by_k", med_k},
                    {"k_values", kTargetedK},
                    {"connect_non_increasing", monotone},
                    {"tolerances", {{"second", tol_second}, {"relative", tol_rel}, {"connect", tol_connect}}}};
    res.summary = fmt("p=0.1: mean giant %.4f (se %.4f, %zu graphs) vs lambda %.4f (rel %.3f, tol %.2f), "
                      "second/largest %.3f (tol %.2f); top-20 removed: connect %.4f (tol %.2f, %zu graphs)",
                      giant_mean, giant_se, giant.size(), lambda, rel, tol_rel, second_med, tol_second, c20,
                      tol_connect, kAttackGraphs);
    return res;
}

// ---------------------------------------------------------------------------

CriterionResult pd_moments(const Context& ctx) {
    CriterionResult res;
    constexpr std::size_t draws = 100000;
    constexpr double tau = 1.5;
    const double alpha = tau - 1.0;
    std::vector<double> m2(draws), m3(draws);
    for_replicas(draws, [&](std::size_t d) {
        Rng rng = make_rng(ctx.seed(5), d);
        const PDRealization pd = sample_pd(tau, 1000, rng);
        double s2 = 0.0, s3 = 0.0;
        for (double P : pd.P) {
            s2 += P * P;
            s3 += P * P * P;
        }
        m2[d] = s2;
        m3[d] = s3;
    });
    // E[sum f(P_i)] = int_0^1 f(u) u^(-a-1) (1-u)^(a-1) du / (Gamma(a) Gamma(1-a)) with f(u) = u^3.
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double integral = integrator.integrate([&](double u, double uc) {
        const double one_minus = u > 0.5 ? uc : 1.0 - u;
        return std::pow(u, 2.0 - alpha) * std::pow(one_minus, alpha - 1.0);
    }, 0.0, 1.0);
    const double quad3 = integral / (boost::math::tgamma(alpha) * boost::math::tgamma(1.0 - alpha));
    const double e2 = stats::mean(m2), s2 = stats::stderr_of_mean(m2);
    const double e3 = stats::mean(m3), s3 = stats::stderr_of_mean(m3);
    const double z2 = std::abs(e2 - (2.0 - tau)) / s2, z3 = std::abs(e3 - quad3) / s3;
    const double tol = ctx.tol(3.0);
    res.passed = z2 <= tol && z3 <= tol;
    res.measured = {{"moment2", e2}, {"moment2_stderr", s2}, {"moment2_theory", 2.0 - tau}, {"z2", z2},
                    {"moment3", e3}, {"moment3_stderr", s3}, {"moment3_quadrature", quad3}, {"z3", z3},
                    {"tolerance_stderrs", tol}};
    res.summary = fmt("E[sum P^2]=%.5f vs %.3f (z=%.2f), E[sum P^3]=%.5f vs quadrature %.5f (z=%.2f), tol=%.1f se",
                      e2, 2.0 - tau, z2, e3, quad3, z3, tol);
    return res;
}

CriterionResult min_gamma(const Context& ctx) {
    CriterionResult res;
    const std::vector<double> grid{0.5, 1.0, 1.5};
    constexpr std::size_t chunks = 20, per_chunk = 500;
    std::vector<std::vector<double>> parts(chunks);
    std::vector<MinGammaJoint> joints(chunks);
    for_replicas(chunks, [&](std::size_t c) {
        Rng rng = make_rng(ctx.seed(6), c);
        parts[c] = min_gamma_trial(1.0, 10000, grid, rng, per_chunk);
        joints[c] = min_gamma_joint(10000, per_chunk, rng);
    });
    std::vector<double> survival(grid.size(), 0.0);
    for (const auto& p : parts)
        for (std::size_t g = 0; g < grid.size(); ++g) survival[g] += p[g] / chunks;
    MinGammaJoint all;
    for (const auto& j : joints) {
        all.eta.insert(all.eta.end(), j.eta.begin(), j.eta.end());
        all.kappa.insert(all.kappa.end(), j.kappa.begin(), j.kappa.end());
        all.rho.insert(all.rho.end(), j.rho.begin(), j.rho.end());
    }
    const double c1 = stats::correlation(all.eta, all.kappa), c2 = stats::correlation(all.eta, all.rho),
                 c3 = stats::correlation(all.kappa, all.rho);
    const double tol_s = ctx.tol(0.02), tol_c = ctx.tol(0.05);
    double worst = 0.0;
    std::ostringstream csv;
    csv << "x,survival,theory\n";
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double th = std::exp(-grid[g] * grid[g] / 2.0);
        worst = std::max(worst, std::abs(survival[g] - th));
        csv << format_double(grid[g]) << ',' << format_double(survival[g]) << ',' << format_double(th) << '\n';
    }
    ctx.write_csv("min_gamma.csv", csv.str());
    const double worst_c = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
    res.passed = worst <= tol_s && worst_c <= tol_c;
    res.measured = {{"survival", survival}, {"grid", grid}, {"max_abs_gap", worst},
                    {"correlations", {c1, c2, c3}}, {"tolerance_survival", tol_s}, {"tolerance_corr", tol_c}};
    res.summary = fmt("survival at 0.5/1/1.5 = %.4f/%.4f/%.4f, max gap %.4f (tol %.3f); |corr| max %.4f (tol %.3f)",
                      survival[0], survival[1], survival[2], worst, tol_s, worst_c, tol_c);
    return res;
}

// ---------------------------------------------------------------------------
// Enumeration references

using Outcome = std::vector<std::pair<Vertex, Vertex>>;

void enumerate_matchings(std::vector<Vertex>& stubs, std::vector<char>& used, Outcome& cur,
                         std::map<Outcome, double>& counts) {
    std::size_t first = 0;
    while (first < stubs.size() && used[first]) ++first;
    if (first == stubs.size()) {
        Outcome o = cur;
        std::sort(o.begin(), o.end());
        counts[o] += 1.0;
        return;
    }
    used[first] = 1;
    for (std::size_t j = first + 1; j < stubs.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        cur.emplace_back(std::min(stubs[first], stubs[j]), std::max(stubs[first], stubs[j]));
        enumerate_matchings(stubs, used, cur, counts);
        cur.pop_back();
        used[j] = 0;
    }
    used[first] = 0;
}

Outcome outcome_of(const MultiGraph& mg) {
    Outcome o;
    for (Vertex v = 0; v < mg.n(); ++v)
        for (std::uint64_t k = 0; k < mg.self_loops(v); ++k) o.emplace_back(v, v);
    for (const auto& e : mg.edges())
        for (std::uint64_t k = 0; k < e.multiplicity; ++k) o.emplace_back(e.u, e.v);
    std::sort(o.begin(), o.end());
    return o;
}

void enumerate_paths(const WeightedGraph& wg, Vertex at, Vertex target, double weight, std::uint32_t hops,
                     std::vector<char>& on_path, double& best, std::uint32_t& best_hops, std::size_t& ties) {
    if (at == target) {
        if (weight < best) {
            best = weight;
            best_hops = hops;
            ties = 1;
        } else if (weight == best) {
            ++ties;
        }
        return;
    }
    const auto nb = wg.neighbors(at);
    const auto ws = wg.weights(at);
    for (std::size_t k = 0; k < nb.size(); ++k) {
        if (on_path[nb[k]]) continue;
        on_path[nb[k]] = 1;
        enumerate_paths(wg, nb[k], target, weight + ws[k], hops + 1, on_path, best, best_hops, ties);
        on_path[nb[k]] = 0;
    }
}

CriterionResult oracle_equivalence(const Context& ctx) {
    CriterionResult res;
    const std::vector<std::vector<Degree>> sequences{{1, 1}, {2, 1, 1}, {3, 1, 1, 1}, {2, 2, 2, 2},
                                                     {4, 2, 1, 1}, {5, 1, 1, 1}, {3, 3, 2}, {1, 1, 1, 1, 1, 1, 1, 1}};
    constexpr std::size_t draws = 200000;
    double worst_tv = 0.0;
    json per_seq = json::array();
    for (std::size_t q = 0; q < sequences.size(); ++q) {
        const DegreeSequence seq(DegreeLaw(1.5), sequences[q]);
        std::vector<Vertex> stubs;
        for (Vertex v = 0; v < seq.n(); ++v)
            for (Degree k = 0; k < seq.degree(v); ++k) stubs.push_back(v);
        std::map<Outcome, double> exact;
        std::vector<char> used(stubs.size(), 0);
        Outcome cur;
        enumerate_matchings(stubs, used, cur, exact);
        double total = 0.0;
        for (const auto& [o, c] : exact) total += c;

        constexpr std::size_t chunks = 20;
        std::vector<std::map<Outcome, double>> parts(chunks);
        for_replicas(chunks, [&](std::size_t c) {
            Rng rng = make_rng(ctx.seed(11 + q), c);
            for (std::size_t d = 0; d < draws / chunks; ++d) parts[c][outcome_of(pair_stubs(seq, rng))] += 1.0;
        });
        std::map<Outcome, double> empirical;
        for (const auto& p : parts)
            for (const auto& [o, c] : p) empirical[o] += c;
        double tv = 0.0;
        for (const auto& [o, c] : exact) {
            const auto it = empirical.find(o);
            tv += std::abs(c / total - (it == empirical.end() ? 0.0 : it->second / draws));
        }
        for (const auto& [o, c] : empirical)
            if (!exact.count(o)) tv += c / draws;
        tv *= 0.5;
        worst_tv = std::max(worst_tv, tv);
        per_seq.push_back({{"degrees", sequences[q]}, {"outcomes", exact.size()}, {"tv", tv}});
    }

    // Dijkstra against exhaustive simple-path search on random 8-vertex graphs.
    std::size_t mismatches = 0, compared = 0;
    Rng rng = make_rng(ctx.seed(30), 0);
    for (std::size_t g = 0; g < 100; ++g) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex a = 0; a < 8; ++a)
            for (Vertex b = a + 1; b < 8; ++b)
                if (uniform01(rng) < 0.45) edges.emplace_back(a, b);
        const SimpleGraph sg(8, edges);
        const WeightedGraph wg = assign_weights(sg, EdgeWeightLaw::exponential(), rng);
        for (Vertex s = 0; s < 8; ++s) {
            const ShortestPathTree tree = dijkstra(wg, s);
            for (Vertex t = 0; t < 8; ++t) {
                double best = s == t ? 0.0 : kInfinity;
                std::uint32_t best_hops = 0;
                std::size_t ties = 0;
                std::vector<char> on_path(8, 0);
                on_path[s] = 1;
                if (s != t) enumerate_paths(wg, s, t, 0.0, 0, on_path, best, best_hops, ties);
                ++compared;
                const bool same_weight = tree.distance[t] == best;
                const bool same_hops = s == t || !std::isfinite(best) || ties > 1 || tree.hops[t] == best_hops;
                if (!same_weight || !same_hops) ++mismatches;
            }
        }
    }
    const double tol = ctx.tol(0.01);
    res.passed = worst_tv < tol && mismatches == 0;
    res.measured = {{"matching", per_seq}, {"max_tv", worst_tv}, {"tolerance", tol},
                    {"dijkstra_pairs_compared", compared}, {"dijkstra_mismatches", mismatches}};
    res.summary = fmt("pairing vs matching enumeration: max TV %.4f over %zu sequences (tol %.3f); "
                      "Dijkstra vs path enumeration: %zu mismatches in %zu pairs",
                      worst_tv, sequences.size(), tol, mismatches, compared);
    return res;
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

CriterionResult determinism(const Context& ctx) {
    CriterionResult res;
    struct Case {
        std::string sub;
        ExperimentConfig cfg;
    };
    std::vector<Case> cases;
    ExperimentConfig base;
    base.master_seed = ctx.cfg.master_seed;
    base.n = 500;
    base.replicas = 8;
    auto add = [&](const std::string& sub, auto tweak) {
        ExperimentConfig c = base;
        tweak(c);
        cases.push_back({sub, c});
    };
    add("degrees", [](auto& c) { c.n = 5000; });
    add("build", [](auto&) {});
    add("build", [](auto& c) { c.erased = true; });
    add("fpp", [](auto& c) { c.pairs = 3; });
    add("fpp", [](auto& c) {
        c.pairs = 3;
        c.erased = true;
        c.weight_law = "uniform:2";
    });
    add("pd", [](auto& c) {
        c.draws = 50;
        c.K = 100;
    });
    add("limit", [](auto& c) {
        c.K = 100;
        c.replicas = 200;
    });
    add("limit", [](auto& c) {
        c.kind = "er";
        c.K = 50;
        c.replicas = 6;
    });
    add("attack", [](auto&) {});
    add("attack", [](auto& c) {
        c.attack_mode = "targeted";
        c.k_remove = 5;
    });

    std::size_t identical = 0;
    json details = json::array();
    for (std::size_t i = 0; i < cases.size(); ++i) {
        std::vector<std::string> outputs;
        for (int threads : {1, 3, 1, 3}) {
            ExperimentConfig c = cases[i].cfg;
            c.out = (ctx.dir / "determinism" / (std::to_string(i) + "-" + cases[i].sub + "-t" +
                                                std::to_string(threads) + "-" + std::to_string(outputs.size()) + ".csv"))
                        .string();
            ThreadScope scope(threads);
            const RunRecord rec = run(c, cases[i].sub);
            outputs.push_back(slurp(rec.csv_path));
        }
        const bool same = std::all_of(outputs.begin(), outputs.end(), [&](const auto& o) { return o == outputs[0]; });
        identical += same;
        details.push_back({{"subcommand", cases[i].sub}, {"identical", same}, {"bytes", outputs[0].size()}});
    }
    res.passed = identical == cases.size();
    res.measured = {{"cases", details}, {"identical", identical}, {"total", cases.size()}};
    res.summary = fmt("%zu/%zu subcommand configs byte-identical across two runs each at 1 and 3 threads", identical,
                      cases.size());
    return res;
}

struct Entry {
    const char* id;
    const char* title;
    CriterionResult (*fn)(const Context&);
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries{
        {"pi2_identity", "pi_2 = 2 - tau at tau in {1.2, 1.5, 1.8}", pi2_identity},
        {"pi_universality", "tree chain and limit FPP hopcount laws agree", pi_universality},
        {"finite_n_bridge", "P(H_n = 2) approaches 1/2 in the original model", finite_n_bridge},
        {"even_hopcount", "erased hopcount concentrates on even values", even_hopcount},
        {"pd_moments", "Poisson-Dirichlet second and third moments", pd_moments},
        {"min_gamma", "minimum of Gamma(2,1) sums", min_gamma},
        {"two_edge_law", "two-edge weight between the top hubs", two_edge_law},
        {"weight_decomposition", "erased weight against V1 + V2", weight_decomposition},
        {"robustness_contrast", "random deletion keeps a giant, targeted removal disconnects", robustness_contrast},
        {"oracle_equivalence", "pairing and Dijkstra against enumeration", oracle_equivalence},
        {"determinism", "byte-identical outputs across runs and thread counts", determinism},
    };
    return entries;
}

}  // namespace

const std::vector<std::string>& criterion_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& e : registry()) v.push_back(e.id);
        return v;
    }();
    return ids;
}

VerifyReport verify(const ExperimentConfig& cfg, const std::vector<std::string>& only,
                    const std::function<void(const CriterionResult&)>& on_result) {
    cfg.validate();
    for (const auto& id : only)
        if (std::find(criterion_ids().begin(), criterion_ids().end(), id) == criterion_ids().end())
            throw ConfigError("criterion", "unknown criterion '" + id + "'");
    Context ctx;
    ctx.cfg = cfg;
    ctx.scale = cfg.tolerance_scale;
    ctx.dir = cfg.out_dir.empty() ? fs::path("runs") / ("verify-" + config_hash(cfg)) : fs::path(cfg.out_dir);
    fs::create_directories(ctx.dir);

    VerifyReport report;
    report.directory = ctx.dir;
    for (const auto& e : registry()) {
        if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = e.fn(ctx);
        } catch (const std::exception& ex) {
            r.passed = false;
            r.summary = std::string("error: ") + ex.what();
        }
        r.id = e.id;
        r.title = e.title;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (on_result) on_result(r);
        report.criteria.push_back(std::move(r));
    }

    json doc = {{"config_hash", config_hash(cfg)}, {"config", to_json(cfg)}, {"all_passed", report.all_passed()}};
    json list = json::array();
    for (const auto& r : report.criteria)
        list.push_back({{"id", r.id},
                        {"title", r.title},
                        {"passed", r.passed},
                        {"summary", r.summary},
                        {"measured", r.measured},
                        {"seconds", r.seconds}});
    doc["criteria"] = list;
    write_atomic(ctx.dir / "report.json", doc.dump(2) + "\n");
    return report;
}

}  // namespace fpp::harness
