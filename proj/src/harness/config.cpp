#include "fpp/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fpp/cmgraph.hpp"
#include "fpp/shortestpath.hpp"

namespace fpp::harness {

namespace {

void require(bool ok, const char* field, const std::string& message) {
    if (!ok) throw ConfigError(field, message);
}

}  // namespace

void ExperimentConfig::validate() const {
    require(tau > 1.0 && tau < 2.0, "tau", "must lie strictly between 1 and 2");
    require(scale_c > 0.0 && std::isfinite(scale_c), "scale_c", "must be positive");
    require(n >= 2, "n", "must be at least 2");
    require(n <= 0xFFFFFFF0u, "n", "too large for 32-bit vertex ids");
    require(K >= 1, "K", "must be at least 1");
    try {
        (void)EdgeWeightLaw::parse(weight_law);
    } catch (const std::exception& e) {
        throw ConfigError("weight_law", e.what());
    }
    try {
        (void)eps_n();
    } catch (const std::exception& e) {
        throw ConfigError("eps_n_rule", e.what());
    }
    require(kind == "or" || kind == "er", "kind", "must be 'or' or 'er'");
    require(zeta > 0.0 && std::isfinite(zeta), "zeta", "must be positive");
    require(pairs >= 1, "pairs", "must be at least 1");
    require(attack_mode == "random" || attack_mode == "targeted", "attack_mode", "must be 'random' or 'targeted'");
    require(p >= 0.0 && p <= 1.0, "p", "must lie in [0,1]");
    require(k_remove < n, "k_remove", "must be smaller than n");
    require(tolerance_scale >= 0.0 && std::isfinite(tolerance_scale), "tolerance_scale", "must be >= 0");
}

double ExperimentConfig::eps_n() const {
    if (eps_n_rule == "n^-1/8") return default_eps_n(n);
    std::size_t used = 0;
    const double v = std::stod(eps_n_rule, &used);
    if (used != eps_n_rule.size() || !(v > 0.0)) throw std::invalid_argument("expected 'n^-1/8' or a positive number");
    return v;
}

nlohmann::json to_json(const ExperimentConfig& c) {
    return nlohmann::json{{"tau", c.tau},
                          {"scale_c", c.scale_c},
                          {"n", c.n},
                          {"K", c.K},
                          {"replicas", c.replicas},
                          {"master_seed", c.master_seed},
                          {"weight_law", c.weight_law},
                          {"eps_n_rule", c.eps_n_rule},
                          {"erased", c.erased},
                          {"kind", c.kind},
                          {"zeta", c.zeta},
                          {"pairs", c.pairs},
                          {"draws", c.draws},
                          {"attack_mode", c.attack_mode},
                          {"p", c.p},
                          {"k_remove", c.k_remove},
                          {"tolerance_scale", c.tolerance_scale},
                          {"out", c.out},
                          {"out_dir", c.out_dir}};
}

ExperimentConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
    ExperimentConfig c;
    const nlohmann::json defaults = to_json(c);
    for (const auto& [key, value] : j.items())
        if (!defaults.contains(key)) throw ConfigError(key, "unknown key");
    auto read = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(field);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(key, std::string("wrong type: ") + e.what());
        }
    };
    read("tau", c.tau);
    read("scale_c", c.scale_c);
    read("n", c.n);
    read("K", c.K);
    read("replicas", c.replicas);
    read("master_seed", c.master_seed);
    read("weight_law", c.weight_law);
    read("eps_n_rule", c.eps_n_rule);
    read("erased", c.erased);
    read("kind", c.kind);
    read("zeta", c.zeta);
    read("pairs", c.pairs);
    read("draws", c.draws);
    read("attack_mode", c.attack_mode);
    read("p", c.p);
    read("k_remove", c.k_remove);
    read("tolerance_scale", c.tolerance_scale);
    read("out", c.out);
    read("out_dir", c.out_dir);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config", std::string("parse error: ") + e.what());
    }
    return from_json(j);
}

std::string config_hash(const ExperimentConfig& cfg) {
    nlohmann::json j = to_json(cfg);
    j.erase("out");
    j.erase("out_dir");
    const std::string text = j.dump();  // keys are sorted, so this is canonical
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fpp::harness
