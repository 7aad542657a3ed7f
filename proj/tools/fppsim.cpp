// fppsim: command-line driver for the simulation harness.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fpp/harness/config.hpp"
#include "fpp/harness/run.hpp"
#include "fpp/harness/verify.hpp"
#include "fpp/parallel.hpp"

namespace {

using fpp::harness::ExperimentConfig;

struct Overrides {
    std::string config_path;
    std::optional<double> tau, scale_c, zeta, p, tolerance_scale;
    std::optional<std::size_t> n, K, replicas, pairs, draws, k_remove;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> weight_law, eps_n, kind, mode, out, out_dir;
    bool erased = false;
    int threads = 0;
    std::vector<std::string> only;
};

void add_common(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config_path, "JSON config file; flags override its values");
    app->add_option("--tau", o.tau, "power-law exponent, 1 < tau < 2");
    app->add_option("--scale-c", o.scale_c, "degree law constant c in P(D > k) = c k^(1-tau)");
    app->add_option("--seed", o.seed, "master seed");
    app->add_option("--out", o.out, "output CSV path");
    app->add_option("--threads", o.threads, "worker threads (default: FPP_THREADS or all cores)");
}

ExperimentConfig resolve(const Overrides& o) {
    ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : fpp::harness::load_config(o.config_path);
    if (o.tau) c.tau = *o.tau;
    if (o.scale_c) c.scale_c = *o.scale_c;
    if (o.zeta) c.zeta = *o.zeta;
    if (o.p) c.p = *o.p;
    if (o.tolerance_scale) c.tolerance_scale = *o.tolerance_scale;
    if (o.n) c.n = *o.n;
    if (o.K) c.K = *o.K;
    if (o.replicas) c.replicas = *o.replicas;
    if (o.pairs) c.pairs = *o.pairs;
    if (o.draws) c.draws = *o.draws;
    if (o.k_remove) c.k_remove = *o.k_remove;
    if (o.seed) c.master_seed = *o.seed;
    if (o.weight_law) c.weight_law = *o.weight_law;
    if (o.eps_n) c.eps_n_rule = *o.eps_n;
    if (o.kind) c.kind = *o.kind;
    if (o.mode) c.attack_mode = *o.mode;
    if (o.out) c.out = *o.out;
    if (o.out_dir) c.out_dir = *o.out_dir;
    if (o.erased) c.erased = true;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"First passage percolation on heavy-tailed configuration models"};
    app.require_subcommand(1);
    Overrides o;

    auto* degrees = app.add_subcommand("degrees", "sample an i.i.d. degree sequence");
    add_common(degrees, o);
    degrees->add_option("--n", o.n, "number of vertices");

    auto* build = app.add_subcommand("build", "pair stubs and write the edge list");
    add_common(build, o);
    build->add_option("--n", o.n, "number of vertices");
    build->add_flag("--erased", o.erased, "write the erased (simple) graph");

    auto* fpp = app.add_subcommand("fpp", "minimal-weight paths between uniform vertex pairs");
    add_common(fpp, o);
    fpp->add_option("--graph-config", o.config_path, "JSON config describing the graph");
    fpp->add_option("--n", o.n, "number of vertices");
    fpp->add_option("--replicas", o.replicas, "number of graphs");
    fpp->add_option("--pairs", o.pairs, "pairs per graph");
    fpp->add_option("--weight-law", o.weight_law, "exp or uniform:<b>");
    fpp->add_flag("--erased", o.erased, "use the erased graph");

    auto* pd = app.add_subcommand("pd", "truncated Poisson-Dirichlet samples");
    add_common(pd, o);
    pd->add_option("--K", o.K, "number of explicit cells");
    pd->add_option("--draws", o.draws, "number of samples");

    auto* limit = app.add_subcommand("limit", "FPP on the limit networks and the hopcount law");
    add_common(limit, o);
    limit->add_option("--kind", o.kind, "or | er")->check(CLI::IsMember({"or", "er"}));
    limit->add_option("--K", o.K, "truncation");
    limit->add_option("--replicas", o.replicas, "number of replicas");
    limit->add_option("--zeta", o.zeta, "weight density at zero (er kind)");

    auto* attack = app.add_subcommand("attack", "random and targeted vertex removal");
    add_common(attack, o);
    attack->add_option("--mode", o.mode, "random | targeted")->check(CLI::IsMember({"random", "targeted"}));
    attack->add_option("--p", o.p, "retention probability (random)");
    attack->add_option("--k-remove", o.k_remove, "vertices removed (targeted)");
    attack->add_option("--n", o.n, "number of vertices");
    attack->add_option("--replicas", o.replicas, "number of graphs");

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_option("--config", o.config_path, "JSON config file");
    verify->add_option("--seed", o.seed, "master seed");
    verify->add_option("--tolerance-scale", o.tolerance_scale, "multiply every tolerance");
    verify->add_option("--out-dir", o.out_dir, "directory for criterion CSVs and report.json");
    verify->add_option("--only", o.only, "run only these criteria")->delimiter(',');
    verify->add_option("--threads", o.threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const ExperimentConfig cfg = resolve(o);
        std::optional<fpp::ThreadScope> scope;
        if (o.threads > 0) scope.emplace(o.threads);

        if (verify->parsed()) {
            const auto report = fpp::harness::verify(cfg, o.only, [](const auto& r) {
                std::cout << fpp::harness::format_line(r) << std::endl;
            });
            std::cout << (report.all_passed() ? "all criteria passed" : "some criteria failed") << " ("
                      << report.directory.string() << "/report.json)\n";
            return report.all_passed() ? 0 : 1;
        }
        const std::string sub = app.get_subcommands().front()->get_name();
        const auto rec = fpp::harness::run(cfg, sub);
        std::cout << rec.csv_path.string() << " (" << rec.rows << " rows, config " << rec.config_hash << ")\n";
        return 0;
    } catch (const fpp::harness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
