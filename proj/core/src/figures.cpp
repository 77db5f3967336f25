#include "jsccplan/figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>

#include "jsccplan/detail/format.hpp"
#include "jsccplan/rng.hpp"
#include "svg_writer.hpp"

namespace jsccplan::experiments::detail {
using jsccplan::detail::format_double;
}  // namespace jsccplan::experiments::detail

namespace jsccplan::experiments {
namespace {

namespace fs = std::filesystem;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCoreHz = 4.9e9;

std::vector<double> normalize_sweep(std::vector<double> sweep, std::vector<double> fallback) {
    if (sweep.empty()) sweep = std::move(fallback);
    std::sort(sweep.begin(), sweep.end());
    sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
    return sweep;
}

void check_common(const FigureJob& job) {
    if (job.trials < 1) throw std::invalid_argument("FigureJob.trials must be >= 1");
    if (job.strategies.empty()) {
        throw std::invalid_argument("FigureJob.strategies must be non-empty");
    }
}

struct Aggregate {
    std::vector<double> delays;
    std::string status = "ok";
    bool ok(int trials) const {
        return status == "ok" && static_cast<int>(delays.size()) == trials;
    }
    double mean() const {
        double s = 0.0;
        for (double d : delays) s += d;
        return s / static_cast<double>(delays.size());
    }
    double std_error() const {
        if (delays.size() < 2) return 0.0;
        const double m = mean();
        double ss = 0.0;
        for (double d : delays) ss += (d - m) * (d - m);
        return std::sqrt(ss / (static_cast<double>(delays.size()) - 1.0) /
                         static_cast<double>(delays.size()));
    }
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing: " + path.string());
}

/// Shared body of the two delay-vs-sweep figures. point_inputs(trial, point)
/// yields the scenario to solve at one grid cell; trials use common random
/// numbers across points.
FigureResult run_delay_figure(
    const FigureJob& job, const std::string& figure, const std::vector<double>& sweep,
    const std::string& x_column, const std::string& x_label,
    const std::function<std::string(double)>& x_format,
    const std::function<Scenario(int trial, double x)>& point_inputs) {
    FigureResult result;
    const int points = static_cast<int>(sweep.size());
    const int n_strat = static_cast<int>(job.strategies.size());
    std::vector<std::vector<Aggregate>> table(
        static_cast<std::size_t>(points),
        std::vector<Aggregate>(static_cast<std::size_t>(n_strat)));

    int dominance_violations = 0;
    std::string dominance_detail;
    int verify_failures = 0;
    std::string verify_detail;

    const auto opt_it =
        std::find(job.strategies.begin(), job.strategies.end(), Strategy::kOpt);
    const int opt_idx =
        opt_it == job.strategies.end()
            ? -1
            : static_cast<int>(std::distance(job.strategies.begin(), opt_it));

    for (int trial = 0; trial < job.trials; ++trial) {
        for (int p = 0; p < points; ++p) {
            const Scenario scenario = point_inputs(trial, sweep[static_cast<std::size_t>(p)]);
            std::vector<double> trial_delay(static_cast<std::size_t>(n_strat), kNaN);
            for (int s = 0; s < n_strat; ++s) {
                const Strategy strat = job.strategies[static_cast<std::size_t>(s)];
                const PlanReport report =
                    solve(strat, scenario.config, scenario.devices, job.solver);
                Aggregate& agg = table[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
                if (!report.ok()) {
                    agg.status = to_string(report.status);
                    continue;
                }
                agg.delays.push_back(report.system_delay_s);
                trial_delay[static_cast<std::size_t>(s)] = report.system_delay_s;
                const Verdict verdict =
                    verify_report(scenario.config, scenario.devices, report);
                if (!verdict.pass) {
                    ++verify_failures;
                    if (verify_detail.empty()) {
                        verify_detail = figure + " " + x_format(sweep[p]) + " trial " +
                                        std::to_string(trial) + " strategy " +
                                        to_string(strat);
                    }
                }
            }
            if (opt_idx >= 0 && std::isfinite(trial_delay[opt_idx])) {
                for (int s = 0; s < n_strat; ++s) {
                    if (s == opt_idx || !std::isfinite(trial_delay[s])) continue;
                    const Strategy strat = job.strategies[static_cast<std::size_t>(s)];
                    const double slack =
                        strat == Strategy::kHeu ? 1.0 + 2.0 * job.solver.epsilon : 1.0 + 1e-12;
                    if (trial_delay[opt_idx] > trial_delay[s] * slack) {
                        ++dominance_violations;
                        if (dominance_detail.empty()) {
                            dominance_detail = "OPT " +
                                               detail::format_double(trial_delay[opt_idx]) +
                                               " > " + to_string(strat) + " " +
                                               detail::format_double(trial_delay[s]) +
                                               " at " + x_format(sweep[p]) + " trial " +
                                               std::to_string(trial);
                        }
                    }
                }
            }
        }
    }

    std::string csv = x_column + ",strategy,mean_delay_s,stderr,status\n";
    std::vector<detail::SvgSeries> series(static_cast<std::size_t>(n_strat));
    for (int s = 0; s < n_strat; ++s) {
        series[static_cast<std::size_t>(s)].label =
            to_string(job.strategies[static_cast<std::size_t>(s)]);
    }
    bool all_solved = true;
    for (int p = 0; p < points; ++p) {
        for (int s = 0; s < n_strat; ++s) {
            const Aggregate& agg = table[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
            FigureRow row;
            row.x = sweep[static_cast<std::size_t>(p)];
            row.series = to_string(job.strategies[static_cast<std::size_t>(s)]);
            if (agg.ok(job.trials)) {
                row.value = agg.mean();
                row.std_error = agg.std_error();
                row.status = "ok";
                series[static_cast<std::size_t>(s)].points.emplace_back(row.x, row.value);
            } else {
                row.value = kNaN;
                row.std_error = kNaN;
                row.status = agg.status == "ok" ? "incomplete" : agg.status;
                all_solved = false;
            }
            csv += x_format(row.x) + "," + row.series + "," +
                   detail::format_double(row.value) + "," +
                   detail::format_double(row.std_error) + "," + row.status + "\n";
            result.rows.push_back(std::move(row));
        }
    }

    result.checks.push_back({"all_points_solved", all_solved, ""});
    result.checks.push_back({"verify_report_pass", verify_failures == 0, verify_detail});
    result.checks.push_back(
        {"opt_dominates_baselines", dominance_violations == 0, dominance_detail});

    fs::create_directories(job.out_dir);
    const fs::path csv_path = fs::path(job.out_dir) / (figure + ".csv");
    const fs::path svg_path = fs::path(job.out_dir) / (figure + ".svg");
    write_file(csv_path, csv);
    write_file(svg_path, detail::render_line_chart("Mean system delay", x_label,
                                                   "mean delay (s)", series));
    result.csv_path = csv_path.string();
    result.svg_path = svg_path.string();
    return result;
}

double opt_mean_at(const FigureResult& result, double x) {
    for (const FigureRow& row : result.rows) {
        if (row.series == "OPT" && row.x == x) return row.value;
    }
    return kNaN;
}

}  // namespace

FigureResult run_fig3(const FigureJob& job) {
    check_common(job);
    const std::vector<double> sweep =
        normalize_sweep(job.sweep, {2, 3, 4, 5, 6, 7, 8});
    for (double k : sweep) {
        if (k < 1 || k != std::floor(k)) {
            throw std::invalid_argument("fig3 sweep values must be positive integers");
        }
    }
    const int max_k = static_cast<int>(sweep.back());

    // One max-K device draw per trial; smaller K reuse its prefix, so adding
    // a device can only shrink the feasible set and delays nest per trial.
    std::vector<Scenario> trial_scenarios;
    trial_scenarios.reserve(static_cast<std::size_t>(job.trials));
    for (int trial = 0; trial < job.trials; ++trial) {
        ScenarioSpec spec;
        spec.device_count = max_k;
        spec.seed = derive_seed(job.seed, static_cast<std::uint64_t>(trial));
        spec.system = job.system;
        spec.bounds = job.bounds;
        trial_scenarios.push_back(generate_scenario(spec));
    }

    FigureResult result = run_delay_figure(
        job, "fig3", sweep, "K", "number of devices",
        [](double x) { return std::to_string(static_cast<int>(x)); },
        [&](int trial, double x) {
            const Scenario& base = trial_scenarios[static_cast<std::size_t>(trial)];
            Scenario s;
            s.config = base.config;
            s.devices.assign(base.devices.begin(),
                             base.devices.begin() + static_cast<int>(x));
            return s;
        });

    bool monotone = true;
    std::string detail_msg;
    for (std::size_t p = 1; p < sweep.size(); ++p) {
        const double prev = opt_mean_at(result, sweep[p - 1]);
        const double curr = opt_mean_at(result, sweep[p]);
        if (!std::isfinite(prev) || !std::isfinite(curr) || curr < prev * (1.0 - 1e-12)) {
            monotone = false;
            if (detail_msg.empty()) {
                detail_msg = "K=" + std::to_string(static_cast<int>(sweep[p])) + ": " +
                             detail::format_double(curr) + " < " +
                             detail::format_double(prev);
            }
        }
    }
    result.checks.push_back({"opt_mean_nondecreasing_in_k", monotone, detail_msg});
    result.all_pass = std::all_of(result.checks.begin(), result.checks.end(),
                                  [](const FigureCheck& c) { return c.pass; });
    return result;
}

FigureResult run_fig4(const FigureJob& job) {
    check_common(job);
    if (job.device_count < 1) throw std::invalid_argument("fig4 device_count must be >= 1");
    const std::vector<double> sweep = normalize_sweep(
        job.sweep, {kCoreHz, 2 * kCoreHz, 3 * kCoreHz, 4 * kCoreHz, 5 * kCoreHz});
    for (double f : sweep) {
        if (!(f > 0.0)) throw std::invalid_argument("fig4 sweep values must be positive");
    }

    std::vector<Scenario> trial_scenarios;
    trial_scenarios.reserve(static_cast<std::size_t>(job.trials));
    for (int trial = 0; trial < job.trials; ++trial) {
        ScenarioSpec spec;
        spec.device_count = job.device_count;
        spec.seed = derive_seed(job.seed, static_cast<std::uint64_t>(trial));
        spec.system = job.system;
        spec.bounds = job.bounds;
        trial_scenarios.push_back(generate_scenario(spec));
    }

    FigureResult result = run_delay_figure(
        job, "fig4", sweep, "edge_cpu_hz", "edge CPU budget (Hz)",
        [](double x) { return detail::format_double(x); },
        [&](int trial, double x) {
            Scenario s = trial_scenarios[static_cast<std::size_t>(trial)];
            s.config.edge_cpu_hz = x;
            return s;
        });

    bool monotone = true;
    std::string detail_msg;
    std::vector<double> means;
    for (double x : sweep) means.push_back(opt_mean_at(result, x));
    for (std::size_t p = 1; p < means.size(); ++p) {
        if (!std::isfinite(means[p - 1]) || !std::isfinite(means[p]) ||
            means[p] > means[p - 1] * (1.0 + job.solver.epsilon)) {
            monotone = false;
            if (detail_msg.empty()) {
                detail_msg = "at " + detail::format_double(sweep[p]) + " Hz: " +
                             detail::format_double(means[p]) + " > " +
                             detail::format_double(means[p - 1]);
            }
        }
    }
    result.checks.push_back({"opt_mean_nonincreasing_in_fc", monotone, detail_msg});

    if (means.size() >= 3) {
        const double first_step = means.front() - means[1];
        const double last_step = means[means.size() - 2] - means.back();
        const bool flattens =
            std::isfinite(first_step) && std::isfinite(last_step) &&
            last_step <= first_step + 1e-9 * std::abs(means.front());
        result.checks.push_back(
            {"delay_slope_flattens", flattens,
             flattens ? "" : "last decrement " + detail::format_double(last_step) +
                                " exceeds first " + detail::format_double(first_step)});
    }
    result.all_pass = std::all_of(result.checks.begin(), result.checks.end(),
                                  [](const FigureCheck& c) { return c.pass; });
    return result;
}

FigureResult run_fig5(const FigureJob& job) {
    if (job.trials < 1) throw std::invalid_argument("FigureJob.trials must be >= 1");
    const std::vector<double> sweep = normalize_sweep(
        job.sweep, {1.0e9, 1.5e9, 2.0e9, 2.5e9, 3.0e9, 3.5e9, 4.0e9});
    for (double f : sweep) {
        if (!(f > 0.0)) throw std::invalid_argument("fig5 sweep values must be positive");
    }
    constexpr int kDevices = 5;
    const double peer_cpu_hz[] = {1.5e9, 2.0e9, 2.5e9, 3.0e9};

    FigureResult result;
    std::vector<std::vector<double>> shares(
        sweep.size(), std::vector<double>(kDevices, kNaN));
    std::vector<std::string> statuses(sweep.size(), "ok");
    int verify_failures = 0;
    std::string verify_detail;
    double worst_share_sum_err = 0.0;

    for (std::size_t p = 0; p < sweep.size(); ++p) {
        std::vector<DeviceProfile> devices(kDevices);
        for (int k = 0; k < kDevices; ++k) {
            devices[k].image_count = 5;
            devices[k].ssim_req = 0.9;
            devices[k].distance_m = 50.0;
            devices[k].tx_power_w = 0.1;
            devices[k].local_cpu_hz = k == 0 ? sweep[p] : peer_cpu_hz[k - 1];
        }
        const PlanReport report = solve_optimal(job.system, devices, job.solver);
        if (!report.ok()) {
            statuses[p] = to_string(report.status);
            continue;
        }
        const Verdict verdict = verify_report(job.system, devices, report);
        if (!verdict.pass) {
            ++verify_failures;
            if (verify_detail.empty()) {
                verify_detail = "f1=" + detail::format_double(sweep[p]);
            }
        }
        double sum_share = 0.0;
        for (int k = 0; k < kDevices; ++k) {
            shares[p][k] = report.allocation[k].edge_cpu_hz / job.system.edge_cpu_hz;
            sum_share += shares[p][k];
        }
        worst_share_sum_err = std::max(worst_share_sum_err, std::abs(sum_share - 1.0));
    }

    std::string csv = "f1_hz,device,edge_share,status\n";
    std::vector<detail::SvgSeries> series(kDevices);
    for (int k = 0; k < kDevices; ++k) series[k].label = "device " + std::to_string(k);
    for (std::size_t p = 0; p < sweep.size(); ++p) {
        for (int k = 0; k < kDevices; ++k) {
            FigureRow row;
            row.x = sweep[p];
            row.series = "device" + std::to_string(k);
            row.value = shares[p][k];
            row.status = statuses[p];
            csv += detail::format_double(row.x) + "," + std::to_string(k) + "," +
                   detail::format_double(row.value) + "," + row.status + "\n";
            if (std::isfinite(row.value)) {
                series[k].points.emplace_back(row.x, row.value);
            }
            result.rows.push_back(std::move(row));
        }
    }

    const bool all_solved = std::all_of(statuses.begin(), statuses.end(),
                                        [](const std::string& s) { return s == "ok"; });
    result.checks.push_back({"all_points_solved", all_solved, ""});
    result.checks.push_back({"verify_report_pass", verify_failures == 0, verify_detail});

    bool dev0_decreasing = all_solved;
    bool peers_nondecreasing = all_solved;
    std::string dev0_detail;
    std::string peer_detail;
    const double peer_slack = 1.0 - 2.0 * job.solver.epsilon;
    for (std::size_t p = 1; p < sweep.size() && all_solved; ++p) {
        if (!(shares[p][0] < shares[p - 1][0])) {
            dev0_decreasing = false;
            if (dev0_detail.empty()) {
                dev0_detail = "at f1=" + detail::format_double(sweep[p]) + ": " +
                              detail::format_double(shares[p][0]) + " >= " +
                              detail::format_double(shares[p - 1][0]);
            }
        }
        for (int k = 1; k < kDevices; ++k) {
            if (shares[p][k] < shares[p - 1][k] * peer_slack) {
                peers_nondecreasing = false;
                if (peer_detail.empty()) {
                    peer_detail = "device " + std::to_string(k) +
                                  " at f1=" + detail::format_double(sweep[p]);
                }
            }
        }
    }
    result.checks.push_back({"device0_share_strictly_decreasing", dev0_decreasing,
                             dev0_detail});
    result.checks.push_back({"peer_shares_nondecreasing", peers_nondecreasing, peer_detail});
    result.checks.push_back({"shares_sum_to_one", worst_share_sum_err <= 1e-9,
                             detail::format_double(worst_share_sum_err)});

    fs::create_directories(job.out_dir);
    const fs::path csv_path = fs::path(job.out_dir) / "fig5.csv";
    const fs::path svg_path = fs::path(job.out_dir) / "fig5.svg";
    write_file(csv_path, csv);
    write_file(svg_path,
               detail::render_line_chart("Edge CPU share per device",
                                         "device 0 local CPU (Hz)", "edge CPU share",
                                         series));
    result.csv_path = csv_path.string();
    result.svg_path = svg_path.string();
    result.all_pass = std::all_of(result.checks.begin(), result.checks.end(),
                                  [](const FigureCheck& c) { return c.pass; });
    return result;
}

FigureResult run_figure(const FigureJob& job) {
    if (job.figure == "fig3") return run_fig3(job);
    if (job.figure == "fig4") return run_fig4(job);
    if (job.figure == "fig5") return run_fig5(job);
    throw std::invalid_argument("unknown figure '" + job.figure +
                                "' (expected fig3, fig4, or fig5)");
}

}  // namespace jsccplan::experiments
