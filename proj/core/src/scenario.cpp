#include "jsccplan/scenario.hpp"

#include <stdexcept>

#include "jsccplan/logistic_fit.hpp"
#include "jsccplan/model.hpp"
#include "jsccplan/rng.hpp"

namespace jsccplan::experiments {
namespace {

std::map<double, LogisticParams, std::greater<double>> build_default_table() {
    // Anchor curves: higher compression ratios keep more of the source, so
    // both asymptotes rise with the ratio. Each curve is regenerated through
    // the fitting pipeline from dense noiseless samples.
    struct Anchor {
        double cr;
        LogisticParams truth;
    };
    const Anchor anchors[] = {
        {1.0 / 6.0, {0.45, 0.97, 0.23, 0.9}},
        {1.0 / 8.0, {0.42, 0.95, 0.22, 0.7}},
        {1.0 / 12.0, {0.38, 0.92, 0.21, 0.5}},
        {1.0 / 24.0, {0.32, 0.88, 0.20, 0.3}},
    };
    std::map<double, LogisticParams, std::greater<double>> table;
    for (const Anchor& a : anchors) {
        std::vector<SsimSample> samples;
        for (double snr_db = -10.0; snr_db <= 20.0; snr_db += 5.0) {
            samples.emplace_back(snr_db, ssim_model(a.truth, snr_db));
        }
        table.emplace(a.cr, fit_logistic(samples));
    }
    return table;
}

}  // namespace

const std::map<double, LogisticParams, std::greater<double>>& default_logistic_table() {
    static const auto table = build_default_table();
    return table;
}

SystemConfig default_system_config() {
    SystemConfig cfg;
    cfg.num_subcarriers = 256;
    cfg.symbol_duration_s = 1.0 / 15000.0;
    cfg.noise_power_w = 1.0e-11;
    cfg.path_loss_exp = 3.0;
    cfg.edge_cpu_hz = 9.8e9;
    cfg.image_height = 128;
    cfg.image_width = 128;
    cfg.encode_cycles_per_pixel = 2170.0;
    cfg.decode_cycles_per_pixel = 2510.0;
    cfg.cr_catalog = {1.0 / 6.0, 1.0 / 8.0, 1.0 / 12.0, 1.0 / 24.0};
    cfg.logistic_table = default_logistic_table();
    return cfg;
}

Scenario generate_scenario(const ScenarioSpec& spec) {
    if (spec.device_count < 1) {
        throw std::invalid_argument("ScenarioSpec.device_count must be >= 1");
    }
    const DistributionBounds& b = spec.bounds;
    if (b.image_count_min < 1 || b.image_count_max < b.image_count_min) {
        throw std::invalid_argument("ScenarioSpec.bounds.image_count range is invalid");
    }
    Scenario scenario;
    scenario.config = spec.system;
    validate(scenario.config);

    SplitMix64 rng(spec.seed);
    scenario.devices.reserve(static_cast<std::size_t>(spec.device_count));
    for (int k = 0; k < spec.device_count; ++k) {
        DeviceProfile dev;
        dev.image_count = rng.next_int(b.image_count_min, b.image_count_max);
        dev.ssim_req = rng.next_uniform(b.ssim_req_min, b.ssim_req_max);
        dev.local_cpu_hz = rng.next_uniform(b.local_cpu_hz_min, b.local_cpu_hz_max);
        dev.distance_m = rng.next_uniform(b.distance_m_min, b.distance_m_max);
        dev.tx_power_w = b.tx_power_w;
        scenario.devices.push_back(dev);
    }
    validate_scenario(scenario.config, scenario.devices);
    return scenario;
}

}  // namespace jsccplan::experiments
