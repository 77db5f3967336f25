#include "jsccplan/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "jsccplan/model.hpp"
#include "jsccplan/rng.hpp"
#include "jsccplan/special_functions.hpp"

namespace jsccplan::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double simpson_slice(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_slice(a, m, fa, flm, fm);
    const double right = simpson_slice(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps_abs) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson_slice(a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps_abs, 48);
}

}  // namespace

double e1_quadrature(double g, double rel_tol) {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw std::domain_error("e1_quadrature requires g > 0");
    }
    if (g > 600.0) {
        throw std::domain_error("e1_quadrature supports g <= 600");
    }
    // E1(g) = e^{-g} * Int_0^inf e^{-s} / (g + s) ds. The s in [0, 1] piece is
    // computed after substituting u = ln(g + s), which turns the near-origin
    // spike at small g into a slowly varying integrand; the remainder is
    // integrated directly and truncated where e^{-s} is negligible.
    auto head = [g](double u) { return std::exp(g - std::exp(u)); };
    auto tail = [g](double s) { return std::exp(-s) / (g + s); };
    const double a1 = std::log(g);
    const double b1 = std::log1p(g);
    const double rough = std::abs(simpson_slice(a1, b1, head(a1), head(0.5 * (a1 + b1)),
                                                head(b1))) +
                         std::abs(simpson_slice(1.0, 60.0, tail(1.0), tail(30.5), tail(60.0)));
    const double eps = std::max(rel_tol * rough, 1e-300);
    const double i_head = integrate(head, a1, b1, 0.5 * eps);
    const double i_tail = integrate(tail, 1.0, 60.0, 0.5 * eps);
    return std::exp(-g) * (i_head + i_tail);
}

namespace {

struct TightProblem {
    std::vector<double> b;      ///< transmit seconds at tau = 1
    std::vector<double> rem;    ///< T - local latency
    std::vector<double> c;      ///< batch decode cycles
    std::vector<double> f_min;  ///< c / rem, the pole of tau(f)

    double tau_of(int k, double f) const { return b[k] / (rem[k] - c[k] / f); }
    double objective(const std::vector<double>& f) const {
        double s = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) s += tau_of(static_cast<int>(k), f[k]);
        return s;
    }
};

double golden_min(const std::function<double(double)>& fn, double lo, double hi,
                  double tol_abs) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = fn(x1);
    double f2 = fn(x2);
    while (b - a > tol_abs) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = fn(x2);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> descend(const TightProblem& prob, std::vector<double> f, double budget,
                            const OracleOptions& opts) {
    const int K = static_cast<int>(f.size());
    if (K == 1) {
        f[0] = budget;
        return f;
    }
    double obj = prob.objective(f);
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        for (int i = 0; i < K; ++i) {
            for (int j = i + 1; j < K; ++j) {
                const double floor_i = prob.f_min[i] * (1.0 + 1e-12);
                const double floor_j = prob.f_min[j] * (1.0 + 1e-12);
                const double lo = -(f[i] - floor_i);
                const double hi = f[j] - floor_j;
                if (hi <= lo) continue;
                auto pair_obj = [&](double delta) {
                    return prob.tau_of(i, f[i] + delta) + prob.tau_of(j, f[j] - delta);
                };
                const double tol = opts.line_tol * (f[i] + f[j]);
                const double delta = golden_min(pair_obj, lo, hi, tol);
                f[i] += delta;
                f[j] -= delta;
            }
        }
        const double next = prob.objective(f);
        if (obj - next <= opts.objective_tol * std::abs(obj)) {
            obj = next;
            break;
        }
        obj = next;
    }
    return f;
}

}  // namespace

P4Solution solve_p4_reference(const P4Instance& instance, const OracleOptions& opts) {
    const SystemConfig& cfg = instance.cfg;
    validate(cfg);
    const int K = static_cast<int>(instance.devices.size());
    if (K == 0) throw std::invalid_argument("P4Instance.devices must be non-empty");
    if (instance.crs.size() != instance.devices.size()) {
        throw std::invalid_argument("P4Instance.crs must have one entry per device");
    }
    if (!(instance.T > 0.0) || !std::isfinite(instance.T)) {
        throw std::invalid_argument("P4Instance.T must be finite and positive");
    }

    P4Solution sol;
    std::vector<int> cr_index(K);
    std::vector<double> thresholds(K);
    TightProblem prob;
    prob.b.resize(K);
    prob.rem.resize(K);
    prob.c.resize(K);
    prob.f_min.resize(K);

    for (int k = 0; k < K; ++k) {
        const DeviceProfile& dev = instance.devices[k];
        validate(dev);
        const double cr = instance.crs[k];
        int idx = -1;
        for (std::size_t i = 0; i < cfg.cr_catalog.size(); ++i) {
            if (std::abs(cr - cfg.cr_catalog[i]) <= 1e-12 * cfg.cr_catalog[i]) {
                idx = static_cast<int>(i);
                break;
            }
        }
        if (idx < 0) throw std::invalid_argument("compression ratio is not a catalog entry");
        cr_index[k] = idx;
        const LogisticParams& lp = cfg.logistic_table.at(cfg.cr_catalog[idx]);
        if (dev.ssim_req <= lp.a1 || dev.ssim_req >= lp.a2) {
            sol.status = P4Status::kUnsatisfiableDevice;
            sol.failing_device = k;
            sol.message = "device " + std::to_string(k) + ": ssim_req unreachable";
            return sol;
        }
        thresholds[k] = min_threshold(cutoff_ceiling(cfg, dev, lp));
    }

    for (int k = 0; k < K; ++k) {
        const DeviceProfile& dev = instance.devices[k];
        const double rem = instance.T - local_latency(cfg, dev);
        if (rem <= 0.0) {
            sol.status = P4Status::kLocalLatencyExceedsT;
            sol.failing_device = k;
            sol.message = "device " + std::to_string(k) + ": local latency exceeds delay";
            return sol;
        }
        prob.rem[k] = rem;
        prob.b[k] = dev.image_count * cfg.source_symbols() * cfg.cr_catalog[cr_index[k]] *
                    std::exp(thresholds[k]) * cfg.symbol_duration_s / cfg.num_subcarriers;
        prob.c[k] = dev.image_count * cfg.decode_cycles_per_image();
        prob.f_min[k] = prob.c[k] / rem;
    }

    const double budget = cfg.edge_cpu_hz;
    const double spare = budget - std::accumulate(prob.f_min.begin(), prob.f_min.end(), 0.0);
    if (spare <= 0.0) {
        sol.status = P4Status::kEdgeCpuInsufficient;
        sol.message = "edge CPU budget cannot cover decode demand at the candidate delay";
        return sol;
    }

    SplitMix64 rng(opts.seed);
    std::vector<double> floors(K);
    double spare_above_floor = budget;
    for (int k = 0; k < K; ++k) {
        floors[k] = prob.f_min[k] * (1.0 + 1e-9);
        spare_above_floor -= floors[k];
    }
    if (spare_above_floor <= 0.0) {
        sol.status = P4Status::kEdgeCpuInsufficient;
        sol.message = "edge CPU budget leaves no spare capacity above the decode poles";
        return sol;
    }
    std::vector<double> best_f;
    double best_obj = kInf;
    const int starts = std::max(1, opts.multistart);
    for (int s = 0; s < starts; ++s) {
        std::vector<double> f(K);
        if (s == 0) {
            for (int k = 0; k < K; ++k) f[k] = floors[k] + spare_above_floor / K;
        } else {
            double total_w = 0.0;
            std::vector<double> w(K);
            for (int k = 0; k < K; ++k) {
                w[k] = -std::log(1.0 - rng.next_unit());
                total_w += w[k];
            }
            for (int k = 0; k < K; ++k) {
                f[k] = floors[k] + spare_above_floor * w[k] / total_w;
            }
        }
        f = descend(prob, std::move(f), budget, opts);
        const double obj = prob.objective(f);
        if (obj < best_obj) {
            best_obj = obj;
            best_f = f;
        }
    }

    sol.allocation.resize(K);
    double sum_tau = 0.0;
    for (int k = 0; k < K; ++k) {
        DeviceAllocation& row = sol.allocation[k];
        row.cr_index = cr_index[k];
        row.cr = cfg.cr_catalog[cr_index[k]];
        row.threshold = thresholds[k];
        row.edge_cpu_hz = best_f[k];
        row.time_share = prob.tau_of(k, best_f[k]);
        row.latency_local_s = local_latency(cfg, instance.devices[k]);
        row.latency_transmit_s =
            transmit_latency(cfg, instance.devices[k], row.cr, row.threshold, row.time_share);
        row.latency_decode_s = decode_latency(cfg, instance.devices[k], row.edge_cpu_hz);
        row.latency_total_s =
            row.latency_local_s + row.latency_transmit_s + row.latency_decode_s;
        sum_tau += row.time_share;
    }
    sol.sum_tau = sum_tau;
    return sol;
}

ConvexityVerdict check_constraint_convexity(const std::vector<ConvexitySample>& samples) {
    ConvexityVerdict verdict;
    verdict.min_normalized_minor = kInf;
    constexpr double kRelStep = 1e-5;
    constexpr double kMinorTol = -1e-8;

    for (const ConvexitySample& sample : samples) {
        auto f = [&](double g, double tau, double f_c) {
            return sample.b * std::exp(g) / tau + sample.c / f_c;
        };
        const std::array<double, 3> x{sample.g, sample.tau, sample.f_c};
        // The constraint varies as exp(g), so the curvature scale of g is 1
        // regardless of |g|; floor its step there or the second difference
        // drowns in rounding noise near g = 0.  tau and f_c curvatures scale
        // with the coordinate itself, so a relative step is right for them.
        const std::array<double, 3> step_scale{std::max(std::abs(x[0]), 1.0),
                                               std::abs(x[1]), std::abs(x[2])};
        std::array<double, 3> h{};
        bool skip = false;
        for (int i = 0; i < 3; ++i) {
            h[i] = kRelStep * step_scale[i];
            if (h[i] == 0.0 || x[i] + h[i] == x[i]) skip = true;
        }
        if (x[1] - h[1] <= 0.0 || x[2] - h[2] <= 0.0) skip = true;
        if (skip) {
            ++verdict.samples_skipped;
            continue;
        }
        auto at = [&](double dg, double dtau, double dfc) {
            return f(x[0] + dg, x[1] + dtau, x[2] + dfc);
        };
        const double f0 = at(0, 0, 0);
        double hess[3][3];
        for (int i = 0; i < 3; ++i) {
            std::array<double, 3> e{};
            e[i] = h[i];
            hess[i][i] = (at(e[0], e[1], e[2]) - 2.0 * f0 + at(-e[0], -e[1], -e[2])) /
                         (h[i] * h[i]);
            for (int j = i + 1; j < 3; ++j) {
                std::array<double, 3> p{};
                p[i] = h[i];
                p[j] = h[j];
                std::array<double, 3> m = p;
                m[j] = -h[j];
                const double fpp = at(p[0], p[1], p[2]);
                const double fmm = at(-p[0], -p[1], -p[2]);
                const double fpm = at(m[0], m[1], m[2]);
                const double fmp = at(-m[0], -m[1], -m[2]);
                hess[i][j] = hess[j][i] = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            }
        }
        bool diag_ok = true;
        for (int i = 0; i < 3; ++i) {
            if (!(hess[i][i] > 0.0)) {
                diag_ok = false;
                verdict.min_normalized_minor = std::min(verdict.min_normalized_minor,
                                                        hess[i][i]);
            }
        }
        if (!diag_ok) {
            verdict.detail = "non-positive diagonal second derivative";
            ++verdict.samples_checked;
            continue;
        }
        std::array<double, 3> scale{};
        for (int i = 0; i < 3; ++i) scale[i] = 1.0 / std::sqrt(hess[i][i]);
        double n[3][3];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) n[i][j] = hess[i][j] * scale[i] * scale[j];
        }
        const double m1 = n[0][0];
        const double m2 = n[0][0] * n[1][1] - n[0][1] * n[1][0];
        const double m3 = n[0][0] * (n[1][1] * n[2][2] - n[1][2] * n[2][1]) -
                          n[0][1] * (n[1][0] * n[2][2] - n[1][2] * n[2][0]) +
                          n[0][2] * (n[1][0] * n[2][1] - n[1][1] * n[2][0]);
        verdict.min_normalized_minor =
            std::min({verdict.min_normalized_minor, m1, m2, m3});
        ++verdict.samples_checked;
    }

    verdict.pass = verdict.samples_checked > 0 &&
                   verdict.min_normalized_minor > kMinorTol &&
                   verdict.detail.empty();
    if (verdict.samples_checked == 0) verdict.detail = "no usable samples";
    return verdict;
}

BruteForceResult brute_force_p3(const SystemConfig& cfg,
                                const std::vector<DeviceProfile>& devices, double T,
                                const OracleOptions& opts) {
    const int K = static_cast<int>(devices.size());
    const int n = static_cast<int>(cfg.cr_catalog.size());
    if (K == 0) throw std::invalid_argument("devices must be non-empty");
    double count = 1.0;
    for (int k = 0; k < K; ++k) count *= n;
    if (count > 1e5) {
        throw std::invalid_argument("tuple space exceeds the brute-force budget (1e5)");
    }

    BruteForceResult result;
    result.best_sum_tau = kInf;
    std::vector<int> digits(K, 0);
    const auto total = static_cast<std::uint64_t>(count);
    P4Instance inst;
    inst.cfg = cfg;
    inst.devices = devices;
    inst.T = T;
    inst.crs.resize(K);
    for (std::uint64_t id = 0; id < total; ++id) {
        for (int k = 0; k < K; ++k) inst.crs[k] = cfg.cr_catalog[digits[k]];
        P4Solution sol = solve_p4_reference(inst, opts);
        ++result.tuples_examined;
        if (sol.feasible()) {
            result.any_solvable = true;
            if (sol.sum_tau < result.best_sum_tau) {
                result.best_sum_tau = sol.sum_tau;
                result.best_tuple = digits;
                result.best_solution = std::move(sol);
            }
        }
        for (int k = K - 1; k >= 0; --k) {
            if (++digits[k] < n) break;
            digits[k] = 0;
        }
    }
    result.feasible = result.any_solvable && result.best_sum_tau <= 1.0 + kBudgetRelTol;
    return result;
}

}  // namespace jsccplan::oracle
