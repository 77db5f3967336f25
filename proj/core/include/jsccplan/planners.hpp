#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "jsccplan/kkt_solver.hpp"
#include "jsccplan/types.hpp"

namespace jsccplan {

enum class Strategy { kOpt, kHeu, kEqu, kFixO, kFixG };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

struct SolverOptions {
    double epsilon = 1e-3;    ///< relative width at which the delay bisection stops
    double epsilon2 = 1e-10;  ///< relative tolerance of the threshold bisection
    int max_outer_iters = 200;
    int parallelism = 1;      ///< worker threads for the compression-tuple sweep
};

enum class PlanStatus {
    kOk,
    kUnsatisfiableDevice,      ///< some device meets no catalog entry
    kInfeasibleAtUpperBound,   ///< defensive; the initial upper bound always admits a plan
    kIterationLimit,
};

std::string to_string(PlanStatus s);

struct TraceEntry {
    double T = 0.0;
    bool feasible = false;
};

struct PlanReport {
    Strategy strategy = Strategy::kOpt;
    PlanStatus status = PlanStatus::kOk;
    std::string message;

    double system_delay_s = std::numeric_limits<double>::quiet_NaN();
    Allocation allocation;
    double sum_tau = std::numeric_limits<double>::quiet_NaN();

    double delay_lower_s = std::numeric_limits<double>::quiet_NaN();  ///< final bisection bracket
    double delay_upper_s = std::numeric_limits<double>::quiet_NaN();
    std::vector<TraceEntry> trace;  ///< every probed T with its feasibility verdict

    std::uint64_t p4_solves = 0;
    std::uint64_t cr_tuples_examined = 0;

    bool ok() const { return status == PlanStatus::kOk; }
};

/// Initial bisection bracket. The upper bound is the best per-device delay
/// under equal resource shares (tau = 1/K, f_c = F_c/K), which a plan can
/// always match; the lower bound gives each device the whole system alone.
/// Throws std::invalid_argument when some device meets no catalog entry.
std::pair<double, double> init_bounds(const SystemConfig& cfg,
                                      const std::vector<DeviceProfile>& devices);

/// Bisection on the system delay with an exhaustive compression-tuple sweep
/// at every probe; ties between tuples break toward the lexicographically
/// smallest index vector. Returns the allocation of the last feasible probe.
PlanReport solve_optimal(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                         const SolverOptions& opts = {});

/// Same bisection, but the compression tuple is fixed up front per device to
/// the catalog entry minimizing o * e^{d(o)}, so each probe costs one
/// closed-form evaluation.
PlanReport solve_heuristic(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                           const SolverOptions& opts = {});

/// Equal shares baseline: tau = 1/K, f_c = F_c/K, per-device best catalog
/// entry and minimum threshold.
PlanReport solve_equ(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                     const SolverOptions& opts = {});

/// Equal shares with every device pinned to the largest catalog ratio,
/// threshold at its minimum.
PlanReport solve_fix_o(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                       const SolverOptions& opts = {});

/// Equal shares, largest catalog ratio, threshold at max(0.5, minimum).
PlanReport solve_fix_g(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                       const SolverOptions& opts = {});

PlanReport solve(Strategy strategy, const SystemConfig& cfg,
                 const std::vector<DeviceProfile>& devices, const SolverOptions& opts = {});

struct ConstraintCheck {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct Verdict {
    bool pass = false;
    std::vector<ConstraintCheck> checks;
};

/// Re-validates a finished plan against the primitive models only: SSIM
/// requirements at the allocated thresholds, budget sums, nonnegativity,
/// catalog membership, and the latency breakdown identity.
Verdict verify_report(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                      const PlanReport& report);

}  // namespace jsccplan
