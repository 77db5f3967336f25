#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsccplan/planners.hpp"
#include "jsccplan/scenario.hpp"

namespace jsccplan::experiments {

/// One figure run: a sweep variable, trial count, and strategy set.
/// Sweep semantics per figure: fig3 sweeps the device count (default 2..8),
/// fig4 sweeps the edge CPU budget in Hz (default 100%..500% of one 4.9 GHz
/// core), fig5 sweeps the first device's local CPU in Hz (default 1..4 GHz).
struct FigureJob {
    std::string figure = "fig3";  ///< "fig3" | "fig4" | "fig5"
    std::vector<double> sweep;    ///< empty selects the figure's default
    int trials = 20;
    std::vector<Strategy> strategies = {Strategy::kOpt, Strategy::kHeu, Strategy::kEqu,
                                        Strategy::kFixO, Strategy::kFixG};
    std::uint64_t seed = 1;
    int device_count = 5;  ///< fig4 scenario size; fig3/fig5 derive their own
    SolverOptions solver;
    SystemConfig system = default_system_config();
    DistributionBounds bounds;
    std::string out_dir = "out";
};

struct FigureCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct FigureRow {
    double x = 0.0;
    std::string series;  ///< strategy tag (fig3/fig4) or device label (fig5)
    double value = 0.0;
    double std_error = 0.0;
    std::string status;
};

struct FigureResult {
    std::string csv_path;
    std::string svg_path;
    std::vector<FigureRow> rows;
    std::vector<FigureCheck> checks;
    bool all_pass = false;
};

/// Mean system delay vs device count. Scenarios use common random numbers:
/// one seeded draw of max-K devices per trial, prefixes for smaller K, so
/// per-trial dominance and monotonicity hold structurally.
FigureResult run_fig3(const FigureJob& job);

/// Mean system delay vs edge CPU budget, fixed device count per trial.
FigureResult run_fig4(const FigureJob& job);

/// Per-device edge CPU share vs the first device's local CPU frequency, on
/// the fixed five-device profile (batch 5 each, peers at 1.5/2/2.5/3 GHz).
FigureResult run_fig5(const FigureJob& job);

/// Dispatch on job.figure.
FigureResult run_figure(const FigureJob& job);

}  // namespace jsccplan::experiments
