#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "jsccplan/types.hpp"

namespace jsccplan::experiments {

/// Catalog-wide defaults matching the reference deployment: 256 subcarriers
/// at 15 kHz spacing, -80 dBm noise, path-loss exponent 3, a 9.8 GHz edge
/// budget, 128x128 images, and the four-entry compression catalog.
SystemConfig default_system_config();

/// Quality-model parameters for the default catalog. The table is produced
/// by fit_logistic on dense noiseless curves, so the shipped defaults are
/// guaranteed representable by the fitting pipeline.
const std::map<double, LogisticParams, std::greater<double>>& default_logistic_table();

struct DistributionBounds {
    int image_count_min = 1;
    int image_count_max = 10;
    double ssim_req_min = 0.80;
    double ssim_req_max = 0.93;
    double local_cpu_hz_min = 1.0e9;
    double local_cpu_hz_max = 2.0e9;
    double distance_m_min = 10.0;
    double distance_m_max = 100.0;
    double tx_power_w = 0.1;  ///< identical for every device
};

struct ScenarioSpec {
    int device_count = 5;
    std::uint64_t seed = 1;
    SystemConfig system = default_system_config();
    DistributionBounds bounds;
};

struct Scenario {
    SystemConfig config;
    std::vector<DeviceProfile> devices;
};

/// Seeded scenario draw. Per device, in order: image count (uniform integer),
/// SSIM requirement, local CPU frequency, distance (all uniform). The same
/// seed with a larger device_count extends the smaller draw as a prefix.
Scenario generate_scenario(const ScenarioSpec& spec);

}  // namespace jsccplan::experiments
