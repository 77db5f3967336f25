#pragma once

#include "jsccplan/types.hpp"

namespace jsccplan {

/// Fraction of subcarriers that survive truncation at threshold g: e^{-g}.
/// Throws std::domain_error for g < 0.
double active_ratio(double g);

/// Maximum received symbol power under truncated channel inversion with
/// threshold g and the long-term power constraint held with equality:
/// rho = P / (M * r^alpha * E1(g)). Strictly increasing in g.
double received_power(const SystemConfig& cfg, const DeviceProfile& dev, double g);

/// SSIM predicted by the generalized logistic model at snr_db (in dB).
double ssim_model(const LogisticParams& params, double snr_db);

/// The unique SNR (dB) at which ssim_model reaches eta, by algebraic
/// inversion of the logistic. Throws std::domain_error when eta is not
/// strictly inside (a1, a2): no finite SNR reaches the target.
double required_snr_db(const LogisticParams& params, double eta);

/// Largest value E1(g) may take so the received SNR still meets the SSIM
/// requirement: c = P / (M * r^alpha * sigma^2) / 10^{snr_req_db/10}.
double cutoff_ceiling(const SystemConfig& cfg, const DeviceProfile& dev,
                      const LogisticParams& params);

/// Encoding latency at the device: L * C^s * H * W / f^l.
double local_latency(const SystemConfig& cfg, const DeviceProfile& dev);

/// Uplink transmission latency for the device's whole batch:
/// L * D_0 * o * e^{g} * T_s / (M * tau).
/// Throws std::domain_error for tau <= 0 or g < 0.
double transmit_latency(const SystemConfig& cfg, const DeviceProfile& dev,
                        double cr, double g, double tau);

/// Decoding latency at the edge: L * C^s' * H * W / f_c.
/// Throws std::domain_error for f_c <= 0.
double decode_latency(const SystemConfig& cfg, const DeviceProfile& dev, double edge_cpu_hz);

/// t = t_local + t_transmit + t_decode for one device's allocation row.
/// Recomputes all three components from the row's decision variables.
double end_to_end_latency(const SystemConfig& cfg, const DeviceProfile& dev,
                          const DeviceAllocation& row);

}  // namespace jsccplan
