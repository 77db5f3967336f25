#include "jsccplan/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jsccplan {

namespace {
void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

void validate(const SystemConfig& cfg) {
    require(cfg.num_subcarriers >= 1, "SystemConfig.num_subcarriers must be >= 1");
    require(cfg.symbol_duration_s > 0.0, "SystemConfig.symbol_duration_s must be > 0");
    require(cfg.noise_power_w > 0.0, "SystemConfig.noise_power_w must be > 0");
    require(cfg.path_loss_exp > 0.0, "SystemConfig.path_loss_exp must be > 0");
    require(cfg.edge_cpu_hz > 0.0, "SystemConfig.edge_cpu_hz must be > 0");
    require(cfg.image_height >= 1, "SystemConfig.image_height must be >= 1");
    require(cfg.image_width >= 1, "SystemConfig.image_width must be >= 1");
    require(cfg.encode_cycles_per_pixel > 0.0, "SystemConfig.encode_cycles_per_pixel must be > 0");
    require(cfg.decode_cycles_per_pixel > 0.0, "SystemConfig.decode_cycles_per_pixel must be > 0");
    require(!cfg.cr_catalog.empty(), "SystemConfig.cr_catalog must not be empty");
    for (std::size_t i = 0; i < cfg.cr_catalog.size(); ++i) {
        const double cr = cfg.cr_catalog[i];
        require(cr > 0.0 && cr <= 1.0, "SystemConfig.cr_catalog entries must lie in (0, 1]");
        if (i > 0)
            require(cr < cfg.cr_catalog[i - 1],
                    "SystemConfig.cr_catalog must be strictly decreasing");
        require(cfg.logistic_table.count(cr) == 1,
                "SystemConfig.logistic_table missing entry for cr_catalog[" +
                    std::to_string(i) + "]");
    }
    for (const auto& [cr, p] : cfg.logistic_table) {
        require(p.a2 > p.a1, "LogisticParams.a2 must exceed a1");
        require(p.a1 >= 0.0 && p.a2 <= 1.0, "LogisticParams asymptotes must lie in [0, 1]");
        require(p.c1 > 0.0, "LogisticParams.c1 must be > 0");
        (void)cr;
    }
}

void validate(const DeviceProfile& dev) {
    require(dev.image_count >= 1, "DeviceProfile.image_count must be >= 1");
    require(dev.local_cpu_hz > 0.0, "DeviceProfile.local_cpu_hz must be > 0");
    require(dev.tx_power_w > 0.0, "DeviceProfile.tx_power_w must be > 0");
    require(dev.distance_m > 0.0, "DeviceProfile.distance_m must be > 0");
    require(dev.ssim_req > 0.0 && dev.ssim_req < 1.0,
            "DeviceProfile.ssim_req must lie in (0, 1)");
}

bool device_satisfiable(const SystemConfig& cfg, const DeviceProfile& dev) {
    for (double cr : cfg.cr_catalog) {
        const auto it = cfg.logistic_table.find(cr);
        if (it == cfg.logistic_table.end()) continue;
        if (dev.ssim_req > it->second.a1 && dev.ssim_req < it->second.a2) return true;
    }
    return false;
}

void validate_scenario(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices) {
    validate(cfg);
    require(!devices.empty(), "scenario must contain at least one device");
    for (std::size_t k = 0; k < devices.size(); ++k) {
        validate(devices[k]);
        if (!device_satisfiable(cfg, devices[k]))
            throw std::invalid_argument(
                "device " + std::to_string(k) +
                " is unsatisfiable: ssim_req outside every catalog logistic range");
    }
}

}  // namespace jsccplan
