// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "jsccplan/acceptance.hpp"
#include "jsccplan/detail/format.hpp"

int main() {
    using jsccplan::detail::format_double;
    using namespace jsccplan::experiments;

    AcceptanceOptions opts;
    opts.seed = 1;
    opts.parallelism = 2;
    opts.scratch_dir =
        (std::filesystem::temp_directory_path() / "jsccplan-acceptance-gate").string();

    const std::vector<CriterionResult> results = run_acceptance({}, opts);
    for (const CriterionResult& r : results) {
        std::printf("[%2d] %s %-32s measured=%s bound=%s (%.2f s)\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    format_double(r.measured).c_str(), format_double(r.bound).c_str(),
                    r.runtime_s);
        if (!r.pass && !r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
    }
    const bool ok = all_pass(results);
    std::printf("acceptance: %zu criteria, %s\n", results.size(), ok ? "all pass" : "FAILURES");
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
