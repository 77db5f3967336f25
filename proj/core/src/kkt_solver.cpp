#include "jsccplan/kkt_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "jsccplan/model.hpp"
#include "jsccplan/special_functions.hpp"

namespace jsccplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int catalog_index_of(const SystemConfig& cfg, double cr) {
    for (std::size_t i = 0; i < cfg.cr_catalog.size(); ++i) {
        double ref = cfg.cr_catalog[i];
        if (cr == ref || std::abs(cr - ref) <= 1e-12 * std::abs(ref)) {
            return static_cast<int>(i);
        }
    }
    throw std::invalid_argument("compression ratio " + std::to_string(cr) +
                                " is not a catalog entry");
}

}  // namespace

std::string to_string(P4Status s) {
    switch (s) {
        case P4Status::kFeasible: return "feasible";
        case P4Status::kUnsatisfiableDevice: return "unsatisfiable_device";
        case P4Status::kLocalLatencyExceedsT: return "local_latency_exceeds_delay";
        case P4Status::kEdgeCpuInsufficient: return "edge_cpu_insufficient";
    }
    return "unknown";
}

PreparedScenario::PreparedScenario(const SystemConfig& cfg, std::vector<DeviceProfile> devices,
                                   double threshold_rel_tol)
    : cfg_(cfg), devices_(std::move(devices)) {
    validate(cfg_);
    const int n = cr_count();
    entries_.resize(devices_.size() * static_cast<std::size_t>(n));
    local_latency_.reserve(devices_.size());
    batch_decode_cycles_.reserve(devices_.size());
    const double d0 = cfg_.source_symbols();
    for (std::size_t k = 0; k < devices_.size(); ++k) {
        const DeviceProfile& dev = devices_[k];
        validate(dev);
        local_latency_.push_back(local_latency(cfg_, dev));
        batch_decode_cycles_.push_back(dev.image_count * cfg_.decode_cycles_per_image());
        for (int i = 0; i < n; ++i) {
            const double cr = cfg_.cr_catalog[i];
            const LogisticParams& lp = cfg_.logistic_table.at(cr);
            Entry& e = entries_[k * static_cast<std::size_t>(n) + i];
            if (dev.ssim_req <= lp.a1 || dev.ssim_req >= lp.a2) continue;
            const double ceiling = cutoff_ceiling(cfg_, dev, lp);
            e.satisfiable = true;
            e.d = min_threshold(ceiling, threshold_rel_tol);
            e.exp_d = std::exp(e.d);
            e.score = cr * e.exp_d;
            e.kernel = d0 * cr * e.exp_d * cfg_.symbol_duration_s / cfg_.num_subcarriers;
            e.mixed = std::sqrt(e.kernel * cfg_.decode_cycles_per_image());
        }
    }
}

bool PreparedScenario::any_satisfiable(int device) const {
    for (int i = 0; i < cr_count(); ++i) {
        if (satisfiable(device, i)) return true;
    }
    return false;
}

int PreparedScenario::best_cr_index(int device) const {
    int best = -1;
    double best_score = kInf;
    for (int i = 0; i < cr_count(); ++i) {
        const double s = score(device, i);
        if (s < best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

P4Probe make_probe(const PreparedScenario& prep, double T) {
    const int K = prep.device_count();
    const int n = prep.cr_count();
    P4Probe probe;
    probe.T = T;
    probe.delay_ok = true;
    probe.inv_remaining.assign(K, 0.0);
    double edge_demand = 0.0;
    for (int k = 0; k < K; ++k) {
        const double rem = T - prep.local_latency_s(k);
        if (rem <= 0.0) {
            probe.delay_ok = false;
            probe.blocking_device = k;
            return probe;
        }
        probe.inv_remaining[k] = 1.0 / rem;
        edge_demand += prep.batch_decode_cycles(k) / rem;
    }
    probe.fc_gap = prep.config().edge_cpu_hz - edge_demand;
    probe.w_transmit.assign(static_cast<std::size_t>(K) * n, 0.0);
    probe.w_mixed.assign(static_cast<std::size_t>(K) * n, 0.0);
    for (int k = 0; k < K; ++k) {
        const double scale =
            prep.devices()[k].image_count * probe.inv_remaining[k];
        for (int i = 0; i < n; ++i) {
            if (!prep.satisfiable(k, i)) continue;
            const std::size_t idx = static_cast<std::size_t>(k) * n + i;
            probe.w_transmit[idx] = scale * prep.transmit_kernel(k, i);
            probe.w_mixed[idx] = scale * prep.mixed_kernel(k, i);
        }
    }
    return probe;
}

double probe_sum_tau(const PreparedScenario& prep, const P4Probe& probe,
                     std::span<const int> cr_indices) {
    const int K = prep.device_count();
    const int n = prep.cr_count();
    double sum_w = 0.0;
    double sum_mixed = 0.0;
    for (int k = 0; k < K; ++k) {
        const int i = cr_indices[k];
        if (!prep.satisfiable(k, i)) return kInf;
        const std::size_t idx = static_cast<std::size_t>(k) * n + i;
        sum_w += probe.w_transmit[idx];
        sum_mixed += probe.w_mixed[idx];
    }
    return sum_w + sum_mixed * (sum_mixed / probe.fc_gap);
}

P4Solution assemble_solution(const PreparedScenario& prep, const P4Probe& probe,
                             std::span<const int> cr_indices) {
    const SystemConfig& cfg = prep.config();
    const int K = prep.device_count();
    const int n = prep.cr_count();
    P4Solution sol;

    for (int k = 0; k < K; ++k) {
        if (!prep.satisfiable(k, cr_indices[k])) {
            sol.status = P4Status::kUnsatisfiableDevice;
            sol.failing_device = k;
            sol.message = "device " + std::to_string(k) +
                          ": ssim_req unreachable at compression ratio " +
                          std::to_string(cfg.cr_catalog[cr_indices[k]]);
            return sol;
        }
    }
    if (!probe.delay_ok) {
        sol.status = P4Status::kLocalLatencyExceedsT;
        sol.failing_device = probe.blocking_device;
        sol.message = "device " + std::to_string(probe.blocking_device) +
                      ": local computation alone exceeds the candidate delay";
        return sol;
    }
    if (probe.fc_gap <= 0.0) {
        sol.status = P4Status::kEdgeCpuInsufficient;
        sol.message =
            "edge CPU budget cannot cover decode demand at the candidate delay";
        return sol;
    }

    double sum_mixed = 0.0;
    for (int k = 0; k < K; ++k) {
        sum_mixed += probe.w_mixed[static_cast<std::size_t>(k) * n + cr_indices[k]];
    }
    const double sqrt_mu = sum_mixed / probe.fc_gap;
    sol.mu_star = sqrt_mu * sqrt_mu;

    sol.allocation.resize(K);
    double sum_tau = 0.0;
    for (int k = 0; k < K; ++k) {
        const int i = cr_indices[k];
        const std::size_t idx = static_cast<std::size_t>(k) * n + i;
        DeviceAllocation& row = sol.allocation[k];
        row.cr_index = i;
        row.cr = cfg.cr_catalog[i];
        row.threshold = prep.threshold(k, i);
        row.time_share = probe.w_transmit[idx] + sqrt_mu * probe.w_mixed[idx];
        row.edge_cpu_hz = probe.w_mixed[idx] / sqrt_mu +
                          prep.batch_decode_cycles(k) * probe.inv_remaining[k];
        row.latency_local_s = prep.local_latency_s(k);
        row.latency_transmit_s =
            transmit_latency(cfg, prep.devices()[k], row.cr, row.threshold, row.time_share);
        row.latency_decode_s = decode_latency(cfg, prep.devices()[k], row.edge_cpu_hz);
        row.latency_total_s =
            row.latency_local_s + row.latency_transmit_s + row.latency_decode_s;
        sum_tau += row.time_share;
    }
    sol.sum_tau = sum_tau;
    return sol;
}

P4Solution solve_p4(const P4Instance& instance) {
    if (instance.devices.empty()) {
        throw std::invalid_argument("P4Instance.devices must be non-empty");
    }
    if (instance.crs.size() != instance.devices.size()) {
        throw std::invalid_argument("P4Instance.crs must have one entry per device");
    }
    if (!(instance.T > 0.0) || !std::isfinite(instance.T)) {
        throw std::invalid_argument("P4Instance.T must be finite and positive");
    }
    PreparedScenario prep(instance.cfg, instance.devices);
    std::vector<int> tuple(instance.devices.size());
    for (std::size_t k = 0; k < instance.crs.size(); ++k) {
        tuple[k] = catalog_index_of(instance.cfg, instance.crs[k]);
    }
    const P4Probe probe = make_probe(prep, instance.T);
    return assemble_solution(prep, probe, tuple);
}

double cr_choice_score(const SystemConfig& cfg, const DeviceProfile& dev, double cr,
                       double threshold_rel_tol) {
    validate(cfg);
    validate(dev);
    const auto it = cfg.logistic_table.find(cr);
    if (it == cfg.logistic_table.end()) {
        throw std::invalid_argument("compression ratio has no quality model entry");
    }
    const LogisticParams& lp = it->second;
    if (dev.ssim_req <= lp.a1 || dev.ssim_req >= lp.a2) return kInf;
    const double d = min_threshold(cutoff_ceiling(cfg, dev, lp), threshold_rel_tol);
    return cr * std::exp(d);
}

}  // namespace jsccplan
