#ifndef FPP_HARNESS_RUN_HPP
#define FPP_HARNESS_RUN_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/harness/config.hpp"

namespace fpp::harness {

struct RunRecord {
    std::string config_hash;
    std::string subcommand;
    std::size_t rows = 0;
    nlohmann::json summary;
    double wall_seconds = 0.0;
    std::filesystem::path csv_path;
    std::filesystem::path summary_path;
};

/// Subcommands handled by run(): degrees, build, fpp, pd, limit, attack.
const std::vector<std::string>& run_subcommands();

/// Validates cfg, runs the subcommand and writes its CSV plus a summary JSON
/// next to it (<stem>.summary.json). Both files are written to a temporary
/// name and renamed into place.
RunRecord run(const ExperimentConfig& cfg, const std::string& subcommand);

/// CSV target for a run: cfg.out, or runs/<subcommand>-<hash>/<subcommand>.csv.
std::filesystem::path csv_target(const ExperimentConfig& cfg, const std::string& subcommand);

/// Writes `content` to `path` through a sibling temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip text for a double, as used in every CSV.
std::string format_double(double x);

}  // namespace fpp::harness

#endif
