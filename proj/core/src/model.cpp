#include "jsccplan/model.hpp"

#include <cmath>
#include <stdexcept>

#include "jsccplan/special_functions.hpp"

namespace jsccplan {

double active_ratio(double g) {
    if (g < 0.0) throw std::domain_error("active_ratio: g must be >= 0");
    return std::exp(-g);
}

double received_power(const SystemConfig& cfg, const DeviceProfile& dev, double g) {
    const double path_gain = std::pow(dev.distance_m, cfg.path_loss_exp);
    return dev.tx_power_w / (cfg.num_subcarriers * path_gain * exp_integral_e1(g));
}

double ssim_model(const LogisticParams& params, double snr_db) {
    const double z = params.c1 * snr_db + params.c2;
    return params.a1 + (params.a2 - params.a1) / (1.0 + std::exp(-z));
}

double required_snr_db(const LogisticParams& params, double eta) {
    if (!(eta > params.a1 && eta < params.a2))
        throw std::domain_error("required_snr_db: eta outside the reachable SSIM range");
    return -(std::log((params.a2 - eta) / (eta - params.a1)) + params.c2) / params.c1;
}

double cutoff_ceiling(const SystemConfig& cfg, const DeviceProfile& dev,
                      const LogisticParams& params) {
    const double snr_req_db = required_snr_db(params, dev.ssim_req);
    const double path_gain = std::pow(dev.distance_m, cfg.path_loss_exp);
    const double snr_budget = dev.tx_power_w /
                              (cfg.num_subcarriers * path_gain * cfg.noise_power_w);
    return snr_budget / std::pow(10.0, snr_req_db / 10.0);
}

double local_latency(const SystemConfig& cfg, const DeviceProfile& dev) {
    return dev.image_count * cfg.encode_cycles_per_image() / dev.local_cpu_hz;
}

double transmit_latency(const SystemConfig& cfg, const DeviceProfile& dev,
                        double cr, double g, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("transmit_latency: tau must be > 0");
    if (g < 0.0) throw std::domain_error("transmit_latency: g must be >= 0");
    return dev.image_count * cfg.source_symbols() * cr * std::exp(g) *
           cfg.symbol_duration_s / (cfg.num_subcarriers * tau);
}

double decode_latency(const SystemConfig& cfg, const DeviceProfile& dev, double edge_cpu_hz) {
    if (!(edge_cpu_hz > 0.0)) throw std::domain_error("decode_latency: f_c must be > 0");
    return dev.image_count * cfg.decode_cycles_per_image() / edge_cpu_hz;
}

double end_to_end_latency(const SystemConfig& cfg, const DeviceProfile& dev,
                          const DeviceAllocation& row) {
    return local_latency(cfg, dev) +
           transmit_latency(cfg, dev, row.cr, row.threshold, row.time_share) +
           decode_latency(cfg, dev, row.edge_cpu_hz);
}

}  // namespace jsccplan
