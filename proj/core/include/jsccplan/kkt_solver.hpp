#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "jsccplan/types.hpp"

namespace jsccplan {

/// Relative tolerance for budget / tightness identities (sum tau <= 1,
/// sum f_c = F_c, per-device latency = T).
inline constexpr double kBudgetRelTol = 1e-9;
/// Relative tolerance when comparing against the independent numerical oracle.
inline constexpr double kOracleRelTol = 1e-6;

/// Fixed-compression subproblem: given one catalog compression ratio per
/// device and a candidate system delay T, find the latency-tight allocation
/// of time shares and edge CPU minimizing the total time share.
struct P4Instance {
    SystemConfig cfg;
    std::vector<DeviceProfile> devices;
    std::vector<double> crs;  ///< one catalog entry per device
    double T = 0.0;           ///< candidate system delay, seconds
};

enum class P4Status {
    kFeasible,
    kUnsatisfiableDevice,     ///< ssim_req unreachable under the assigned ratio
    kLocalLatencyExceedsT,    ///< T <= L*C^l/f^l for some device
    kEdgeCpuInsufficient,     ///< edge budget cannot meet T even with zero transmission
};

std::string to_string(P4Status s);

struct P4Solution {
    P4Status status = P4Status::kFeasible;
    int failing_device = -1;
    std::string message;

    Allocation allocation;    ///< per-device g*, tau*, f_c* and latency breakdown
    double sum_tau = std::numeric_limits<double>::quiet_NaN();
    double mu_star = std::numeric_limits<double>::quiet_NaN();

    bool feasible() const { return status == P4Status::kFeasible; }
};

/// Precomputed per-(device, catalog entry) quantities that do not depend on
/// the candidate delay T: truncation thresholds d, the selection score
/// o * e^{d}, and the constant factors of the closed-form solution. Shared
/// by the solvers so thresholds are solved once per scenario.
class PreparedScenario {
  public:
    PreparedScenario(const SystemConfig& cfg, std::vector<DeviceProfile> devices,
                     double threshold_rel_tol = 1e-10);

    const SystemConfig& config() const { return cfg_; }
    const std::vector<DeviceProfile>& devices() const { return devices_; }
    int device_count() const { return static_cast<int>(devices_.size()); }
    int cr_count() const { return static_cast<int>(cfg_.cr_catalog.size()); }

    bool satisfiable(int device, int cr_index) const { return at(device, cr_index).satisfiable; }
    bool any_satisfiable(int device) const;
    /// Truncation threshold d for this device under this catalog entry.
    double threshold(int device, int cr_index) const { return at(device, cr_index).d; }
    /// Ranking score o * e^{d}; +inf when the entry cannot meet the SSIM target.
    double score(int device, int cr_index) const { return at(device, cr_index).score; }
    /// Catalog index minimizing the score (first such index on ties);
    /// -1 when no entry is satisfiable.
    int best_cr_index(int device) const;

    double local_latency_s(int device) const { return local_latency_[device]; }
    /// L * C^d, decode cycles for the device's whole batch.
    double batch_decode_cycles(int device) const { return batch_decode_cycles_[device]; }
    /// D_0 * o * e^{d} * T_s / M, the transmit-latency kernel at tau = 1, L = 1.
    double transmit_kernel(int device, int cr_index) const { return at(device, cr_index).kernel; }
    /// sqrt(transmit_kernel * C^d), the mixed term of the closed form.
    double mixed_kernel(int device, int cr_index) const { return at(device, cr_index).mixed; }

  private:
    struct Entry {
        bool satisfiable = false;
        double d = 0.0;
        double exp_d = 1.0;
        double score = std::numeric_limits<double>::infinity();
        double kernel = 0.0;
        double mixed = 0.0;
    };
    const Entry& at(int device, int cr_index) const {
        return entries_[static_cast<std::size_t>(device) * cfg_.cr_catalog.size() + cr_index];
    }

    SystemConfig cfg_;
    std::vector<DeviceProfile> devices_;
    std::vector<Entry> entries_;
    std::vector<double> local_latency_;
    std::vector<double> batch_decode_cycles_;
};

/// Per-T workspace: everything of the closed form that is tuple-independent.
struct P4Probe {
    double T = 0.0;
    bool delay_ok = false;       ///< T exceeds every local latency
    int blocking_device = -1;
    double fc_gap = 0.0;         ///< F^c - sum_k L_k C^d / (T - t^l_k)
    std::vector<double> inv_remaining;  ///< 1 / (T - t^l_k)
    std::vector<double> w_transmit;     ///< per (device, cr): L/(T-t^l) * kernel
    std::vector<double> w_mixed;        ///< per (device, cr): L/(T-t^l) * mixed
};

P4Probe make_probe(const PreparedScenario& prep, double T);

/// Total time share of the closed-form optimum for one compression tuple,
/// or +inf when some device is unsatisfiable under its assigned entry.
/// Requires probe.delay_ok and probe.fc_gap > 0.
double probe_sum_tau(const PreparedScenario& prep, const P4Probe& probe,
                     std::span<const int> cr_indices);

/// Full closed-form solution (Lagrange multiplier, shares, latency rows)
/// for one compression tuple at the probe's T.
P4Solution assemble_solution(const PreparedScenario& prep, const P4Probe& probe,
                             std::span<const int> cr_indices);

/// Closed-form solution of the fixed-compression subproblem. Per device the
/// truncation threshold is pinned at its minimum d, the Lagrange multiplier
/// of the edge-CPU budget has an explicit expression, and time/CPU shares
/// follow from it; the edge budget is spent exactly and every device's
/// end-to-end latency equals T.
P4Solution solve_p4(const P4Instance& instance);

/// Heuristic ranking score o * e^{d(o)} of one catalog entry for one device;
/// +inf when the SSIM requirement is unreachable at that ratio. The entry
/// minimizing this score minimizes the device's time-share demand.
double cr_choice_score(const SystemConfig& cfg, const DeviceProfile& dev, double cr,
                       double threshold_rel_tol = 1e-10);

}  // namespace jsccplan
