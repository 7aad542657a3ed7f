#ifndef FPP_HARNESS_CONFIG_HPP
#define FPP_HARNESS_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace fpp::harness {

/// Invalid configuration; `field` names the offending key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct ExperimentConfig {
    double tau = 1.5;
    double scale_c = 1.0;
    std::size_t n = 1000;
    std::size_t K = 200;
    std::size_t replicas = 100;
    std::uint64_t master_seed = 1;
    std::string weight_law = "exp";   // "exp" or "uniform:<b>"
    std::string eps_n_rule = "n^-1/8";  // or a positive number

    // mode flags
    bool erased = false;        // build / fpp: work on the erased graph
    std::string kind = "or";    // limit: or | er
    double zeta = 1.0;          // limit: density of the weight law at zero
    std::size_t pairs = 1;      // fpp: pairs per graph
    std::size_t draws = 1000;   // pd: PD samples
    std::string attack_mode = "random";  // attack: random | targeted
    double p = 0.1;             // attack random: retention probability
    std::size_t k_remove = 20;  // attack targeted
    double tolerance_scale = 1.0;  // verify: multiplies every tolerance

    // output paths; not part of the config hash
    std::string out;      // CSV path; empty selects runs/<subcommand>-<hash>/<subcommand>.csv
    std::string out_dir;  // verify: directory for criterion CSVs

    /// Throws ConfigError on the first out-of-range field.
    void validate() const;
    double eps_n() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Unknown keys are rejected; missing keys keep their defaults.
ExperimentConfig from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// 16 hex digits of FNV-1a over the canonical JSON of every non-output field.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace fpp::harness

#endif
