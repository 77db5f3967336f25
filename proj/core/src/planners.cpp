#include "jsccplan/planners.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "jsccplan/model.hpp"

namespace jsccplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMaxTuples = std::uint64_t{1} << 26;

double equal_share_delay(const PreparedScenario& prep, int k, int cr_index, double g,
                         double tau, double fc) {
    const SystemConfig& cfg = prep.config();
    const DeviceProfile& dev = prep.devices()[k];
    const double cr = cfg.cr_catalog[cr_index];
    return prep.local_latency_s(k) + transmit_latency(cfg, dev, cr, g, tau) +
           decode_latency(cfg, dev, fc);
}

std::pair<double, double> bounds_from_prep(const PreparedScenario& prep) {
    const int K = prep.device_count();
    const double fc_all = prep.config().edge_cpu_hz;
    double t_upper = 0.0;
    double t_lower = 0.0;
    for (int k = 0; k < K; ++k) {
        const int i = prep.best_cr_index(k);
        if (i < 0) {
            throw std::invalid_argument("device " + std::to_string(k) +
                                        ": ssim_req unreachable at every catalog entry");
        }
        const double g = prep.threshold(k, i);
        t_upper = std::max(t_upper, equal_share_delay(prep, k, i, g, 1.0 / K, fc_all / K));
        t_lower = std::max(t_lower, equal_share_delay(prep, k, i, g, 1.0, fc_all));
    }
    return {t_lower, t_upper};
}

void decode_tuple(std::uint64_t id, int cr_count, std::vector<int>& digits) {
    for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(id % cr_count);
        id /= cr_count;
    }
}

void increment_tuple(std::vector<int>& digits, int cr_count) {
    for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
        if (++digits[k] < cr_count) return;
        digits[k] = 0;
    }
}

struct SweepResult {
    double best_sum = kInf;
    std::uint64_t best_id = 0;
    std::uint64_t evaluated = 0;
};

SweepResult sweep_range(const PreparedScenario& prep, const P4Probe& probe,
                        std::uint64_t begin, std::uint64_t end) {
    SweepResult r;
    const int cr_count = prep.cr_count();
    std::vector<int> digits(prep.device_count());
    decode_tuple(begin, cr_count, digits);
    for (std::uint64_t id = begin; id < end; ++id) {
        const double s = probe_sum_tau(prep, probe, digits);
        if (std::isfinite(s)) {
            ++r.evaluated;
            if (s < r.best_sum || (s == r.best_sum && id < r.best_id)) {
                r.best_sum = s;
                r.best_id = id;
            }
        }
        increment_tuple(digits, cr_count);
    }
    return r;
}

struct ProbeEval {
    bool feasible = false;
    double sum_tau = kInf;
    std::vector<int> tuple;
};

using ProbeFn = std::function<ProbeEval(double)>;

PlanReport run_bisection(Strategy tag, const PreparedScenario& prep, const SolverOptions& opts,
                         const ProbeFn& probe_fn) {
    PlanReport report;
    report.strategy = tag;

    auto [t_lower, t_upper] = bounds_from_prep(prep);
    ProbeEval best = probe_fn(t_upper);
    report.trace.push_back({t_upper, best.feasible});
    if (!best.feasible) {
        report.status = PlanStatus::kInfeasibleAtUpperBound;
        report.message = "equal-share upper bound rejected; numerical breakdown";
        report.delay_lower_s = t_lower;
        report.delay_upper_s = t_upper;
        return report;
    }
    double best_t = t_upper;

    int iters = 0;
    while ((t_upper - t_lower) / t_upper > opts.epsilon) {
        if (++iters > opts.max_outer_iters) {
            report.status = PlanStatus::kIterationLimit;
            report.message = "delay bisection exceeded max_outer_iters";
            break;
        }
        const double t_mid = 0.5 * (t_lower + t_upper);
        ProbeEval ev = probe_fn(t_mid);
        report.trace.push_back({t_mid, ev.feasible});
        if (ev.feasible) {
            t_upper = t_mid;
            best = std::move(ev);
            best_t = t_mid;
        } else {
            t_lower = t_mid;
        }
    }

    report.delay_lower_s = t_lower;
    report.delay_upper_s = t_upper;

    P4Solution sol = assemble_solution(prep, make_probe(prep, best_t), best.tuple);
    report.allocation = std::move(sol.allocation);
    report.sum_tau = sol.sum_tau;
    double delay = 0.0;
    for (const DeviceAllocation& row : report.allocation) {
        delay = std::max(delay, row.latency_total_s);
    }
    report.system_delay_s = delay;
    return report;
}

PlanReport equal_share_plan(Strategy tag, const PreparedScenario& prep,
                            const std::function<int(int)>& pick_cr,
                            const std::function<double(double)>& pick_threshold) {
    PlanReport report;
    report.strategy = tag;
    const int K = prep.device_count();
    const SystemConfig& cfg = prep.config();
    report.allocation.resize(K);
    double delay = 0.0;
    double sum_tau = 0.0;
    for (int k = 0; k < K; ++k) {
        const int i = pick_cr(k);
        if (i < 0 || !prep.satisfiable(k, i)) {
            report.status = PlanStatus::kUnsatisfiableDevice;
            report.message = "device " + std::to_string(k) +
                             ": ssim_req unreachable under strategy " + to_string(tag);
            report.allocation.clear();
            return report;
        }
        DeviceAllocation& row = report.allocation[k];
        row.cr_index = i;
        row.cr = cfg.cr_catalog[i];
        row.threshold = pick_threshold(prep.threshold(k, i));
        row.time_share = 1.0 / K;
        row.edge_cpu_hz = cfg.edge_cpu_hz / K;
        row.latency_local_s = prep.local_latency_s(k);
        row.latency_transmit_s =
            transmit_latency(cfg, prep.devices()[k], row.cr, row.threshold, row.time_share);
        row.latency_decode_s = decode_latency(cfg, prep.devices()[k], row.edge_cpu_hz);
        row.latency_total_s =
            row.latency_local_s + row.latency_transmit_s + row.latency_decode_s;
        delay = std::max(delay, row.latency_total_s);
        sum_tau += row.time_share;
    }
    report.system_delay_s = delay;
    report.sum_tau = sum_tau;
    return report;
}

}  // namespace

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::kOpt: return "OPT";
        case Strategy::kHeu: return "HEU";
        case Strategy::kEqu: return "EQU";
        case Strategy::kFixO: return "FIX_O";
        case Strategy::kFixG: return "FIX_G";
    }
    return "unknown";
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "OPT") return Strategy::kOpt;
    if (name == "HEU") return Strategy::kHeu;
    if (name == "EQU") return Strategy::kEqu;
    if (name == "FIX_O") return Strategy::kFixO;
    if (name == "FIX_G") return Strategy::kFixG;
    throw std::invalid_argument("unknown strategy '" + name +
                                "' (expected OPT, HEU, EQU, FIX_O, or FIX_G)");
}

std::string to_string(PlanStatus s) {
    switch (s) {
        case PlanStatus::kOk: return "ok";
        case PlanStatus::kUnsatisfiableDevice: return "unsatisfiable_device";
        case PlanStatus::kInfeasibleAtUpperBound: return "infeasible_at_upper_bound";
        case PlanStatus::kIterationLimit: return "iteration_limit";
    }
    return "unknown";
}

std::pair<double, double> init_bounds(const SystemConfig& cfg,
                                      const std::vector<DeviceProfile>& devices) {
    PreparedScenario prep(cfg, devices);
    return bounds_from_prep(prep);
}

PlanReport solve_optimal(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                         const SolverOptions& opts) {
    PreparedScenario prep(cfg, devices, opts.epsilon2);
    const int K = prep.device_count();
    const int n = prep.cr_count();
    for (int k = 0; k < K; ++k) {
        if (!prep.any_satisfiable(k)) {
            PlanReport report;
            report.strategy = Strategy::kOpt;
            report.status = PlanStatus::kUnsatisfiableDevice;
            report.message = "device " + std::to_string(k) +
                             ": ssim_req unreachable at every catalog entry";
            return report;
        }
    }
    std::uint64_t total = 1;
    for (int k = 0; k < K; ++k) {
        total *= static_cast<std::uint64_t>(n);
        if (total > kMaxTuples) {
            throw std::invalid_argument(
                "compression tuple space exceeds the exhaustive-search budget");
        }
    }
    const int workers = std::clamp(opts.parallelism, 1, 64);

    std::uint64_t p4_solves = 0;
    std::uint64_t tuples_examined = 0;

    ProbeFn probe_fn = [&](double T) {
        ProbeEval ev;
        const P4Probe probe = make_probe(prep, T);
        if (!probe.delay_ok || probe.fc_gap <= 0.0) return ev;
        tuples_examined += total;
        std::vector<SweepResult> parts;
        if (workers == 1 || total < 1024) {
            parts.push_back(sweep_range(prep, probe, 0, total));
        } else {
            parts.resize(workers);
            const std::uint64_t chunk = (total + workers - 1) / workers;
            std::vector<std::thread> threads;
            threads.reserve(workers);
            for (int w = 0; w < workers; ++w) {
                const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, total);
                const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, total);
                threads.emplace_back([&, w, begin, end] {
                    parts[w] = sweep_range(prep, probe, begin, end);
                });
            }
            for (auto& t : threads) t.join();
        }
        SweepResult merged;
        for (const SweepResult& part : parts) {
            merged.evaluated += part.evaluated;
            if (part.best_sum < merged.best_sum ||
                (part.best_sum == merged.best_sum && part.best_id < merged.best_id)) {
                merged.best_sum = part.best_sum;
                merged.best_id = part.best_id;
            }
        }
        p4_solves += merged.evaluated;
        if (merged.best_sum <= 1.0 + kBudgetRelTol) {
            ev.feasible = true;
            ev.sum_tau = merged.best_sum;
            ev.tuple.resize(K);
            decode_tuple(merged.best_id, n, ev.tuple);
        }
        return ev;
    };

    PlanReport report = run_bisection(Strategy::kOpt, prep, opts, probe_fn);
    report.p4_solves = p4_solves;
    report.cr_tuples_examined = tuples_examined;
    return report;
}

PlanReport solve_heuristic(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                           const SolverOptions& opts) {
    PreparedScenario prep(cfg, devices, opts.epsilon2);
    const int K = prep.device_count();
    std::vector<int> tuple(K);
    for (int k = 0; k < K; ++k) {
        tuple[k] = prep.best_cr_index(k);
        if (tuple[k] < 0) {
            PlanReport report;
            report.strategy = Strategy::kHeu;
            report.status = PlanStatus::kUnsatisfiableDevice;
            report.message = "device " + std::to_string(k) +
                             ": ssim_req unreachable at every catalog entry";
            return report;
        }
    }

    std::uint64_t p4_solves = 0;
    std::uint64_t tuples_examined = 0;
    ProbeFn probe_fn = [&](double T) {
        ProbeEval ev;
        const P4Probe probe = make_probe(prep, T);
        if (!probe.delay_ok || probe.fc_gap <= 0.0) return ev;
        ++tuples_examined;
        ++p4_solves;
        const double s = probe_sum_tau(prep, probe, tuple);
        if (s <= 1.0 + kBudgetRelTol) {
            ev.feasible = true;
            ev.sum_tau = s;
            ev.tuple = tuple;
        }
        return ev;
    };

    PlanReport report = run_bisection(Strategy::kHeu, prep, opts, probe_fn);
    report.p4_solves = p4_solves;
    report.cr_tuples_examined = tuples_examined;
    return report;
}

PlanReport solve_equ(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                     const SolverOptions& opts) {
    PreparedScenario prep(cfg, devices, opts.epsilon2);
    return equal_share_plan(
        Strategy::kEqu, prep, [&](int k) { return prep.best_cr_index(k); },
        [](double d) { return d; });
}

PlanReport solve_fix_o(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                       const SolverOptions& opts) {
    PreparedScenario prep(cfg, devices, opts.epsilon2);
    return equal_share_plan(
        Strategy::kFixO, prep, [](int) { return 0; }, [](double d) { return d; });
}

PlanReport solve_fix_g(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                       const SolverOptions& opts) {
    PreparedScenario prep(cfg, devices, opts.epsilon2);
    return equal_share_plan(
        Strategy::kFixG, prep, [](int) { return 0; },
        [](double d) { return std::max(0.5, d); });
}

PlanReport solve(Strategy strategy, const SystemConfig& cfg,
                 const std::vector<DeviceProfile>& devices, const SolverOptions& opts) {
    switch (strategy) {
        case Strategy::kOpt: return solve_optimal(cfg, devices, opts);
        case Strategy::kHeu: return solve_heuristic(cfg, devices, opts);
        case Strategy::kEqu: return solve_equ(cfg, devices, opts);
        case Strategy::kFixO: return solve_fix_o(cfg, devices, opts);
        case Strategy::kFixG: return solve_fix_g(cfg, devices, opts);
    }
    throw std::invalid_argument("unknown strategy");
}

Verdict verify_report(const SystemConfig& cfg, const std::vector<DeviceProfile>& devices,
                      const PlanReport& report) {
    validate(cfg);
    if (!report.ok()) {
        throw std::invalid_argument("verify_report requires a plan with status ok");
    }
    if (report.allocation.size() != devices.size()) {
        throw std::invalid_argument("allocation size does not match device count");
    }
    Verdict verdict;
    const int K = static_cast<int>(devices.size());

    int membership_violations = 0;
    double min_threshold_val = kInf;
    double min_ssim_margin = kInf;
    double min_share = kInf;
    double max_latency_rel_err = 0.0;
    double sum_tau = 0.0;
    double sum_fc = 0.0;
    std::string detail;

    for (int k = 0; k < K; ++k) {
        const DeviceAllocation& row = report.allocation[k];
        const bool index_ok = row.cr_index >= 0 &&
                              row.cr_index < static_cast<int>(cfg.cr_catalog.size()) &&
                              cfg.cr_catalog[row.cr_index] == row.cr;
        if (!index_ok) {
            ++membership_violations;
            if (detail.empty()) detail = "device " + std::to_string(k) + ": cr not in catalog";
        }
        min_threshold_val = std::min(min_threshold_val, row.threshold);
        min_share = std::min(min_share, std::min(row.time_share,
                                                 row.edge_cpu_hz / cfg.edge_cpu_hz));
        sum_tau += row.time_share;
        sum_fc += row.edge_cpu_hz;

        const auto lp = cfg.logistic_table.find(row.cr);
        if (lp == cfg.logistic_table.end() || row.threshold < 0.0) {
            min_ssim_margin = -kInf;
        } else {
            const double rho = received_power(cfg, devices[k], row.threshold);
            const double snr_db = 10.0 * std::log10(rho / cfg.noise_power_w);
            const double achieved = ssim_model(lp->second, snr_db);
            min_ssim_margin = std::min(min_ssim_margin, achieved - devices[k].ssim_req);
        }

        if (row.time_share > 0.0 && row.edge_cpu_hz > 0.0 && row.threshold >= 0.0 && index_ok) {
            const double tl = local_latency(cfg, devices[k]);
            const double tt =
                transmit_latency(cfg, devices[k], row.cr, row.threshold, row.time_share);
            const double tc = decode_latency(cfg, devices[k], row.edge_cpu_hz);
            const double total = tl + tt + tc;
            auto rel = [](double got, double want) {
                return std::abs(got - want) / std::max(1e-300, std::abs(want));
            };
            max_latency_rel_err = std::max(
                {max_latency_rel_err, rel(row.latency_local_s, tl),
                 rel(row.latency_transmit_s, tt), rel(row.latency_decode_s, tc),
                 rel(row.latency_total_s, total)});
        } else {
            max_latency_rel_err = kInf;
        }
    }

    auto push = [&](const std::string& name, bool pass, double measured, double bound,
                    std::string note = "") {
        verdict.checks.push_back({name, pass, measured, bound, std::move(note)});
    };
    push("cr_catalog_membership", membership_violations == 0,
         static_cast<double>(membership_violations), 0.0, detail);
    push("threshold_nonnegative", min_threshold_val >= 0.0, min_threshold_val, 0.0);
    push("ssim_requirement", min_ssim_margin >= -1e-9, min_ssim_margin, -1e-9);
    push("positive_shares", min_share > 0.0, min_share, 0.0);
    push("time_share_budget", sum_tau <= 1.0 + kBudgetRelTol, sum_tau, 1.0 + kBudgetRelTol);
    push("edge_cpu_budget", sum_fc <= cfg.edge_cpu_hz * (1.0 + kBudgetRelTol),
         sum_fc / cfg.edge_cpu_hz, 1.0 + kBudgetRelTol);
    push("latency_breakdown", max_latency_rel_err <= kBudgetRelTol, max_latency_rel_err,
         kBudgetRelTol);

    verdict.pass = std::all_of(verdict.checks.begin(), verdict.checks.end(),
                               [](const ConstraintCheck& c) { return c.pass; });
    return verdict;
}

}  // namespace jsccplan
