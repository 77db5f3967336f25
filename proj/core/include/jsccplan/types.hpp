#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jsccplan {

/// Four constants of the generalized logistic SSIM-vs-SNR model for one
/// compression ratio: ssim(snr_db) = a1 + (a2 - a1) / (1 + exp(-(c1*snr_db + c2))).
struct LogisticParams {
    double a1 = 0.0;  ///< lower SSIM asymptote
    double a2 = 1.0;  ///< upper SSIM asymptote
    double c1 = 1.0;  ///< slope per dB, > 0
    double c2 = 0.0;  ///< offset
};

/// Global system constants shared by all devices.
struct SystemConfig {
    int num_subcarriers = 256;                 ///< M
    double symbol_duration_s = 1.0 / 15000.0;  ///< T_s
    double noise_power_w = 1e-11;              ///< sigma^2
    double path_loss_exp = 3.0;                ///< alpha
    double edge_cpu_hz = 9.8e9;                ///< F^c, cycles/second
    int image_height = 128;                    ///< H
    int image_width = 128;                     ///< W
    double encode_cycles_per_pixel = 2170.0;   ///< C^s
    double decode_cycles_per_pixel = 2510.0;   ///< C^s'

    /// Compression ratio catalog, strictly decreasing, entries in (0, 1].
    std::vector<double> cr_catalog;
    /// Logistic constants per catalog entry (keys are decreasing too).
    std::map<double, LogisticParams, std::greater<double>> logistic_table;

    /// Symbols per source image, D_0 = 3*H*W.
    double source_symbols() const { return 3.0 * image_height * image_width; }
    /// Per-image encode cost in cycles, C^l = C^s * H * W.
    double encode_cycles_per_image() const {
        return encode_cycles_per_pixel * image_height * image_width;
    }
    /// Per-image decode cost in cycles, C^d = C^s' * H * W.
    double decode_cycles_per_image() const {
        return decode_cycles_per_pixel * image_height * image_width;
    }
};

/// Per-device parameters.
struct DeviceProfile {
    int image_count = 1;        ///< L, images to transmit
    double local_cpu_hz = 1e9;  ///< f^l, cycles/second
    double tx_power_w = 0.1;    ///< P
    double distance_m = 50.0;   ///< r
    double ssim_req = 0.9;      ///< eta, in (0, 1)
};

/// One device's slice of a complete decision plus its latency breakdown.
struct DeviceAllocation {
    int cr_index = -1;        ///< index into SystemConfig::cr_catalog
    double cr = 0.0;          ///< o
    double threshold = 0.0;   ///< g, channel truncation threshold
    double time_share = 0.0;  ///< tau, TDMA share in [0, 1]
    double edge_cpu_hz = 0.0; ///< f^c allocated at the edge

    double latency_local_s = 0.0;
    double latency_transmit_s = 0.0;
    double latency_decode_s = 0.0;
    double latency_total_s = 0.0;
};

using Allocation = std::vector<DeviceAllocation>;

/// Throws std::invalid_argument on any violated SystemConfig invariant.
/// The message names the offending field.
void validate(const SystemConfig& cfg);

/// Throws std::invalid_argument on any violated DeviceProfile invariant.
void validate(const DeviceProfile& dev);

/// True iff eta lies strictly inside (a1, a2) of at least one catalog entry.
bool device_satisfiable(const SystemConfig& cfg, const DeviceProfile& dev);

/// Validates the config, every device, and that every device is satisfiable
/// under at least one catalog compression ratio. Throws std::invalid_argument
/// naming the device index otherwise.
void validate_scenario(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices);

}  // namespace jsccplan
