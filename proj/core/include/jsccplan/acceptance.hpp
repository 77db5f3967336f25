#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace jsccplan::experiments {

struct AcceptanceOptions {
    std::uint64_t seed = 1;      ///< base seed; every criterion derives its own
    int parallelism = 1;
    std::string scratch_dir;     ///< empty selects a temp-directory default
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string detail;
    double runtime_s = 0.0;
    double runtime_bound_s = 0.0;  ///< 0 when the criterion has no runtime bound
};

/// Runs the numbered acceptance criteria (all twelve when ids is empty).
/// Never throws for a failing criterion; failures are result content.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const AcceptanceOptions& opts = {});

bool all_pass(const std::vector<CriterionResult>& results);

nlohmann::json acceptance_report_json(const std::vector<CriterionResult>& results);

}  // namespace jsccplan::experiments
