#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsccplan/types.hpp"

namespace jsccplan::sim {

struct SimOptions {
    std::int64_t num_slots = 100000;
    std::uint64_t seed = 1;
    int parallelism = 1;
    std::string trace_path;  ///< per-slot CSV when non-empty; validate_allocation
                             ///< treats it as a directory, one CSV per device
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct SimStats {
    Estimate active_ratio;        ///< fraction of subcarriers above the threshold
    Estimate mean_tx_power_w;     ///< average transmit power per subcarrier slot
    Estimate rx_power_w;          ///< received power on active subcarriers
    Estimate symbols_per_slot;    ///< active subcarriers per slot
    Estimate tx_delay_s;          ///< batch transmit delay implied by the empirical rate
    std::int64_t slots = 0;
    std::int64_t fading_draws = 0;
};

/// Monte Carlo of truncated channel inversion for one device: per (slot,
/// subcarrier) an Exp(1) fading power is drawn from a counter-based generator,
/// subcarriers below the threshold g stay silent, the rest invert the channel
/// toward the received power target. Statistics are accumulated per fixed-size
/// slot block and merged in block order, so results are bit-identical for any
/// parallelism setting.
SimStats simulate_device(const SystemConfig& cfg, const DeviceProfile& dev, double cr,
                         double g, double tau, const SimOptions& opts);

struct DeviceVerdict {
    int device = -1;
    bool pass = false;
    SimStats stats;
    double analytic_active_ratio = 0.0;
    double analytic_tx_delay_s = 0.0;
    double analytic_rx_power_w = 0.0;
    std::string detail;
};

struct ValidationResult {
    bool pass = false;
    std::vector<DeviceVerdict> devices;
};

/// Simulates every device of a finished allocation and checks the empirical
/// active ratio (binomial three-sigma band), the mean transmit power against
/// the per-device budget, the received-power invariant, and the empirical
/// transmit delay against the analytic latency (2% band).
ValidationResult validate_allocation(const SystemConfig& cfg,
                                     const std::vector<DeviceProfile>& devices,
                                     const Allocation& allocation, const SimOptions& opts);

}  // namespace jsccplan::sim
