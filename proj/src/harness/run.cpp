#include "fpp/harness/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fpp/cmgraph.hpp"
#include "fpp/degrees.hpp"
#include "fpp/limitnet.hpp"
#include "fpp/parallel.hpp"
#include "fpp/pdlaw.hpp"
#include "fpp/resilience.hpp"
#include "fpp/shortestpath.hpp"
#include "fpp/stats.hpp"

namespace fpp::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Stream ids so that different subcommands never share random streams.
enum Stream : std::uint64_t { kDegrees = 1, kBuild, kFpp, kPd, kLimit, kAttack, kLambda };

// JSON has no infinity.
json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

struct GraphDraw {
    DegreeSequence seq;
    MultiGraph mg;
};

GraphDraw draw_graph(const ExperimentConfig& cfg, Rng& rng) {
    DegreeSequence seq = sample_degree_sequence(DegreeLaw(cfg.tau, cfg.scale_c), cfg.n, rng);
    MultiGraph mg = pair_stubs(seq, rng);
    return {std::move(seq), std::move(mg)};
}

std::size_t run_degrees(const ExperimentConfig& cfg, std::ostringstream& csv, json& summary) {
    const DegreeLaw law(cfg.tau, cfg.scale_c);
    Rng rng = make_rng(cfg.master_seed, 0, kDegrees);
    const DegreeSequence seq = sample_degree_sequence(law, cfg.n, rng);
    csv << "vertex_id,degree\n";
    for (Vertex v = 0; v < seq.n(); ++v) csv << v << ',' << seq.degree(v) << '\n';
    summary["n"] = seq.n();
    summary["total_degree"] = seq.total();
    summary["max_degree"] = seq.degree(seq.ranked(1));
    summary["u_n"] = number(u_n(law, cfg.n));
    return seq.n();
}

std::size_t run_build(const ExperimentConfig& cfg, std::ostringstream& csv, json& summary) {
    Rng rng = make_rng(cfg.master_seed, 0, kBuild);
    const GraphDraw g = draw_graph(cfg, rng);
    csv << "i,j,multiplicity\n";
    std::size_t rows = 0;
    std::uint64_t loops = 0;
    for (Vertex v = 0; v < g.mg.n(); ++v) loops += g.mg.self_loops(v);
    if (cfg.erased) {
        const SimpleGraph sg = erase(g.mg);
        for (Vertex v = 0; v < sg.n(); ++v)
            for (Vertex w : sg.adjacency(v))
                if (w > v) {
                    csv << v << ',' << w << ",1\n";
                    ++rows;
                }
        summary["erased_edges"] = sg.edge_count();
    } else {
        for (Vertex v = 0; v < g.mg.n(); ++v)
            if (g.mg.self_loops(v) > 0) {
                csv << v << ',' << v << ',' << g.mg.self_loops(v) << '\n';
                ++rows;
            }
        for (const auto& e : g.mg.edges()) {
            csv << e.u << ',' << e.v << ',' << e.multiplicity << '\n';
            ++rows;
        }
    }
    summary["n"] = g.seq.n();
    summary["total_degree"] = g.seq.total();
    summary["self_loops"] = loops;
    summary["distinct_pairs"] = g.mg.edges().size();
    summary["erased"] = cfg.erased;
    return rows;
}

struct FppRow {
    Vertex a1, a2;
    double w;
    std::uint32_t h;
    bool connected;
};

std::size_t run_fpp(const ExperimentConfig& cfg, std::ostringstream& csv, json& summary) {
    const EdgeWeightLaw law = EdgeWeightLaw::parse(cfg.weight_law);
    const GraphMode mode = cfg.erased ? GraphMode::erased : GraphMode::original;
    std::vector<std::vector<FppRow>> rows(cfg.replicas);
    for_replicas(cfg.replicas, [&](std::size_t r) {
        Rng rng = make_rng(cfg.master_seed, r, kFpp);
        const GraphDraw g = draw_graph(cfg, rng);
        std::optional<SimpleGraph> sg;
        if (mode == GraphMode::erased) sg.emplace(erase(g.mg));
        const WeightedGraph wg = assign_weights(&g.mg, sg ? &*sg : nullptr, law, mode, rng);
        for (std::size_t k = 0; k < cfg.pairs; ++k) {
            const PairSample ps = sample_pair_fpp(wg, rng);
            if (ps.connected())
                rows[r].push_back({ps.a1, ps.a2, ps.path->weight, ps.path->hopcount, true});
            else
                rows[r].push_back({ps.a1, ps.a2, kInfinity, 0, false});
        }
    });
    csv << "replica,A1,A2,W,H,connected\n";
    std::size_t total = 0, connected = 0, two = 0, odd = 0;
    std::vector<double> weights;
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& row : rows[r]) {
            ++total;
            csv << r << ',' << row.a1 << ',' << row.a2 << ',';
            if (row.connected) {
                csv << format_double(row.w) << ',' << row.h << ",1\n";
                ++connected;
                two += row.h == 2;
                odd += row.h % 2;
                weights.push_back(row.w);
            } else {
                csv << "inf,,0\n";
            }
        }
    summary["pairs"] = total;
    summary["disconnected_fraction"] = total ? 1.0 - static_cast<double>(connected) / total : 0.0;
    summary["p_hop2"] = connected ? static_cast<double>(two) / connected : 0.0;
    summary["p_hop_odd"] = connected ? static_cast<double>(odd) / connected : 0.0;
    summary["mean_weight"] = weights.empty() ? json(nullptr) : number(stats::mean(weights));
    summary["mode"] = cfg.erased ? "erased" : "original";
    summary["weight_law"] = law.name();
    return total;
}

std::size_t run_pd(const ExperimentConfig& cfg, std::ostringstream& csv, json& summary) {
    std::vector<PDRealization> draws(cfg.draws);
    for_replicas(cfg.draws, [&](std::size_t d) {
        Rng rng = make_rng(cfg.master_seed, d, kPd);
        draws[d] = sample_pd(cfg.tau, cfg.K, rng);
    });
    csv << "draw_id,i,P_i\n";
    std::vector<double> eta, tail, m2, m3;
    std::size_t rows = 0;
    for (std::size_t d = 0; d < draws.size(); ++d) {
        double s2 = 0.0, s3 = 0.0;
        for (std::size_t i = 0; i < draws[d].K; ++i) {
            const double P = draws[d].P[i];
            csv << d << ',' << i + 1 << ',' << format_double(P) << '\n';
            s2 += P * P;
            s3 += P * P * P;
            ++rows;
        }
        eta.push_back(draws[d].eta);
        tail.push_back(draws[d].tail_mass);
        m2.push_back(s2);
        m3.push_back(s3);
    }
    summary["draws"] = cfg.draws;
    summary["K"] = cfg.K;
    if (!draws.empty()) {
        summary["eta_mean"] = number(stats::mean(eta));
        summary["tail_mass_mean"] = number(stats::mean(tail));
        summary["moment2"] = {{"estimate", number(stats::mean(m2))},
                              {"stderr", number(stats::stderr_of_mean(m2))},
                              {"exact", number(pd_moment_exact(cfg.tau, 2))}};
        summary["moment3"] = {{"estimate", number(stats::mean(m3))},
                              {"stderr", number(stats::stderr_of_mean(m3))},
                              {"exact", number(pd_moment_exact(cfg.tau, 3))}};
    }
    return rows;
}

std::size_t run_limit(const ExperimentConfig& cfg, std::ostringstream& csv, json& summary) {
    const LimitKind kind = cfg.kind == "or" ? LimitKind::original : LimitKind::erased;
    const DegreeLaw law(cfg.tau, cfg.scale_c);
    std::vector<LimitSample> samples(cfg.replicas);
    std::vector<std::uint32_t> chain(kind == LimitKind::original ? cfg.replicas : 0);
    for_replicas(cfg.replicas, [&](std::size_t r) {
        Rng rng = make_rng(cfg.master_seed, r, kLimit);
        const PDRealization pd = sample_pd(cfg.tau, cfg.K, rng);
        samples[r] = sample_limit_fpp(pd, kind, cfg.zeta, law, rng);
        if (kind == LimitKind::original) chain[r] = swt_chain_or(pd, rng).hopcount;
    });
    csv << "replica,I,J,W,H\n";
    std::map<std::uint32_t, std::pair<double, double>> counts;  // k -> (fpp, chain)
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const auto& s = samples[r];
        csv << r << ',' << s.I.index + 1 << ',' << s.J.index + 1 << ',' << format_double(s.weight) << ','
            << s.hopcount << '\n';
        counts[s.graph_hopcount()].first += 1.0;
        if (!chain.empty()) counts[chain[r]].second += 1.0;
    }
    const double R = static_cast<double>(cfg.replicas);
    json table = json::array();
    for (std::uint32_t k = 2; R > 0; k += kind == LimitKind::original ? 1 : 2) {
        const auto it = counts.find(k);
        if (it == counts.end()) break;
        const double pf = it->second.first / R;
        json row = {{"k", k}};
        if (kind == LimitKind::original) {
            const double pc = it->second.second / R;
            const double pi = 0.5 * (pf + pc);
            row["pi"] = pi;
            row["stderr"] = std::sqrt(pi * (1.0 - pi) / (2.0 * R));
            row["pi_fpp"] = pf;
            row["pi_chain"] = pc;
            row["gap"] = pc - pf;
        } else {
            row["pi"] = pf;
            row["stderr"] = std::sqrt(pf * (1.0 - pf) / R);
        }
        table.push_back(row);
    }
    summary["kind"] = cfg.kind;
    summary["K"] = cfg.K;
    summary["zeta"] = cfg.zeta;
    summary["hopcount_scale"] = kind == LimitKind::original ? "k = 2 + H" : "k = 2 + 2H";
    summary["pi_table"] = table;
    if (kind == LimitKind::original) summary["pi2_theory"] = 2.0 - cfg.tau;
    return samples.size();
}

std::size_t run_attack(const ExperimentConfig& cfg, std::ostringstream& csv, json& summary) {
    const bool targeted = cfg.attack_mode == "targeted";
    std::vector<AttackOutcome> out(cfg.replicas);
    for_replicas(cfg.replicas, [&](std::size_t r) {
        Rng rng = make_rng(cfg.master_seed, r, kAttack);
        const GraphDraw g = draw_graph(cfg, rng);
        const SimpleGraph sg = erase(g.mg);
        if (targeted) {
            const auto order = g.seq.sorted_desc();
            out[r] = targeted_attack(sg, cfg.k_remove, 0, rng, order);
        } else {
            out[r] = percolate_giant(sg, cfg.p, rng);
        }
    });
    csv << "replica,parameter,giant_size,second_size,connect_prob\n";
    std::vector<double> giant, connect;
    for (std::size_t r = 0; r < out.size(); ++r) {
        const auto& o = out[r];
        csv << r << ',' << format_double(o.parameter) << ',' << o.giant_size << ',' << o.second_size << ','
            << format_double(o.connect_prob) << '\n';
        giant.push_back(o.giant_fraction);
        connect.push_back(o.connect_prob);
    }
    summary["mode"] = cfg.attack_mode;
    summary["parameter"] = targeted ? static_cast<double>(cfg.k_remove) : cfg.p;
    if (!out.empty()) {
        summary["giant_fraction_median"] = stats::median(giant);
        summary["giant_fraction_mean"] = stats::mean(giant);
        summary["giant_fraction_variance"] = stats::variance(giant);
        summary["connect_prob_median"] = stats::median(connect);
    }
    if (!targeted) {
        const auto der = sample_der_batch(cfg.tau, std::max<std::size_t>(cfg.K, 100), 20000, 10,
                                          child_seed(cfg.master_seed, 0, kLambda));
        summary["lambda_theory"] = lambda_theory(cfg.p, der);
    }
    return out.size();
}

}  // namespace

const std::vector<std::string>& run_subcommands() {
    static const std::vector<std::string> names{"degrees", "build", "fpp", "pd", "limit", "attack"};
    return names;
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

fs::path csv_target(const ExperimentConfig& cfg, const std::string& subcommand) {
    if (!cfg.out.empty()) return cfg.out;
    return fs::path("runs") / (subcommand + "-" + config_hash(cfg)) / (subcommand + ".csv");
}

RunRecord run(const ExperimentConfig& cfg, const std::string& subcommand) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream csv;
    json summary = json::object();
    std::size_t rows = 0;
    if (subcommand == "degrees")
        rows = run_degrees(cfg, csv, summary);
    else if (subcommand == "build")
        rows = run_build(cfg, csv, summary);
    else if (subcommand == "fpp")
        rows = run_fpp(cfg, csv, summary);
    else if (subcommand == "pd")
        rows = run_pd(cfg, csv, summary);
    else if (subcommand == "limit")
        rows = run_limit(cfg, csv, summary);
    else if (subcommand == "attack")
        rows = run_attack(cfg, csv, summary);
    else
        throw ConfigError("subcommand", "unknown subcommand '" + subcommand + "'");

    RunRecord rec;
    rec.subcommand = subcommand;
    rec.config_hash = config_hash(cfg);
    rec.rows = rows;
    rec.summary = std::move(summary);
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.csv_path = csv_target(cfg, subcommand);
    rec.summary_path = rec.csv_path;
    rec.summary_path.replace_extension(".summary.json");

    const json doc = {{"subcommand", subcommand},   {"config_hash", rec.config_hash},
                      {"config", to_json(cfg)},     {"rows", rows},
                      {"wall_seconds", rec.wall_seconds}, {"summary", rec.summary},
                      {"csv", rec.csv_path.filename().string()}};
    write_atomic(rec.csv_path, csv.str());
    write_atomic(rec.summary_path, doc.dump(2) + "\n");
    return rec;
}

}  // namespace fpp::harness
