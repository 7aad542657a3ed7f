#ifndef FPP_HARNESS_VERIFY_HPP
#define FPP_HARNESS_VERIFY_HPP

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/harness/config.hpp"

namespace fpp::harness {

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string summary;       // one line: measured values against tolerances
    nlohmann::json measured;   // full numbers for the report
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;
    std::filesystem::path directory;
    bool all_passed() const;
};

/// Criterion ids in execution order.
const std::vector<std::string>& criterion_ids();

/// Runs the acceptance criteria (all of them, or those listed in `only`).
/// Every tolerance is multiplied by cfg.tolerance_scale. Long-form data goes
/// to CSVs under cfg.out_dir (default runs/verify-<hash>/) with report.json.
/// `on_result` is called as each criterion finishes.
VerifyReport verify(const ExperimentConfig& cfg, const std::vector<std::string>& only = {},
                    const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS <id>: <summary>" / "FAIL <id>: <summary>".
std::string format_line(const CriterionResult& r);

}  // namespace fpp::harness

#endif
