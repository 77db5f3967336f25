#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jsccplan/acceptance.hpp"
#include "jsccplan/channel_sim.hpp"
#include "jsccplan/detail/format.hpp"
#include "jsccplan/figures.hpp"
#include "jsccplan/logistic_fit.hpp"
#include "jsccplan/planners.hpp"
#include "jsccplan/scenario.hpp"
#include "jsccplan/serialization.hpp"

namespace {

namespace fs = std::filesystem;
using jsccplan::detail::format_double;
using nlohmann::json;

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::vector<jsccplan::Strategy> parse_strategies(const std::string& text) {
    std::vector<jsccplan::Strategy> out;
    for (const std::string& name : split_csv(text)) {
        out.push_back(jsccplan::strategy_from_string(name));
    }
    if (out.empty()) throw std::invalid_argument("no strategies given");
    return out;
}

/// Accepts plain cycles/second or a percentage of one 4.9 GHz reference core
/// ("200%"), mirroring the configuration schema.
double parse_cpu_value(const std::string& text) {
    if (!text.empty() && text.back() == '%') {
        return std::stod(text.substr(0, text.size() - 1)) * 4.9e9 / 100.0;
    }
    return std::stod(text);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw jsccplan::experiments::ConfigError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw jsccplan::experiments::ConfigError(path + ": " + ex.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

void emit(const json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text(out_path, text);
    }
}

json verification_to_json(const jsccplan::Verdict& verdict) {
    json checks = json::array();
    for (const auto& check : verdict.checks) {
        checks.push_back({{"name", check.name},
                          {"pass", check.pass},
                          {"measured", check.measured},
                          {"bound", check.bound},
                          {"detail", check.detail}});
    }
    return {{"pass", verdict.pass}, {"checks", checks}};
}

json estimate_to_json(const jsccplan::sim::Estimate& e) {
    return {{"value", e.value}, {"std_error", e.std_error}};
}

struct PlanArgs {
    std::string config;
    int device_count = 5;
    std::uint64_t seed = 1;
    std::string strategy = "OPT";
    std::string out;
    jsccplan::SolverOptions solver;
};

int run_plan(const PlanArgs& args) {
    using namespace jsccplan;
    using namespace jsccplan::experiments;

    Scenario scenario;
    if (args.config.empty()) {
        ScenarioSpec spec;
        spec.device_count = args.device_count;
        spec.seed = args.seed;
        scenario = generate_scenario(spec);
    } else {
        scenario = load_scenario_file(args.config);
    }

    const PlanReport report =
        solve(strategy_from_string(args.strategy), scenario.config, scenario.devices,
              args.solver);
    json bundle = plan_bundle_to_json(scenario, report);

    bool verified = false;
    if (report.ok()) {
        const Verdict verdict = verify_report(scenario.config, scenario.devices, report);
        bundle["verification"] = verification_to_json(verdict);
        verified = verdict.pass;
    }
    emit(bundle, args.out);
    return report.ok() && verified ? 0 : 1;
}

struct FigureArgs {
    std::string config;
    std::vector<std::string> sweep;
    int trials = 20;
    int device_count = 5;
    std::uint64_t seed = 1;
    std::string strategies = "OPT,HEU,EQU,FIX_O,FIX_G";
    std::string out_dir = "out";
    jsccplan::SolverOptions solver;
};

int run_figure_cmd(const std::string& figure, const FigureArgs& args) {
    using namespace jsccplan::experiments;

    FigureJob job;
    job.figure = figure;
    job.trials = args.trials;
    job.device_count = args.device_count;
    job.seed = args.seed;
    job.strategies = parse_strategies(args.strategies);
    job.solver = args.solver;
    job.out_dir = args.out_dir;
    for (const std::string& value : args.sweep) {
        job.sweep.push_back(figure == "fig4" ? parse_cpu_value(value) : std::stod(value));
    }
    if (!args.config.empty()) {
        const json doc = load_json_file(args.config);
        for (const auto& [key, value] : doc.items()) {
            if (key != "system") throw ConfigError(key + ": unknown key (expected system)");
            apply_system_overrides(job.system, value);
        }
    }

    const FigureResult result = run_figure(job);
    for (const FigureCheck& check : result.checks) {
        std::cout << (check.pass ? "pass " : "FAIL ") << check.name;
        if (!check.detail.empty()) std::cout << ": " << check.detail;
        std::cout << "\n";
    }
    std::cout << "csv: " << result.csv_path << "\nsvg: " << result.svg_path << "\n";
    return result.all_pass ? 0 : 1;
}

struct SimulateArgs {
    std::string plan_path;
    std::int64_t slots = 100000;
    std::uint64_t seed = 1;
    int parallelism = 1;
    std::string trace_dir;
    std::string out;
};

int run_simulate(const SimulateArgs& args) {
    using namespace jsccplan;
    using namespace jsccplan::experiments;

    const json bundle = load_json_file(args.plan_path);
    if (!bundle.contains("scenario") || !bundle.contains("report")) {
        throw ConfigError(args.plan_path + ": expected a plan bundle with scenario and report");
    }
    const Scenario scenario = scenario_from_json(bundle.at("scenario"));
    const PlanReport report = report_from_json(bundle.at("report"));
    if (!report.ok()) {
        std::cerr << "plan status is " << to_string(report.status)
                  << "; nothing to simulate\n";
        return 1;
    }

    sim::SimOptions opts;
    opts.num_slots = args.slots;
    opts.seed = args.seed;
    opts.parallelism = args.parallelism;
    if (!args.trace_dir.empty()) {
        fs::create_directories(args.trace_dir);
        opts.trace_path = args.trace_dir;
    }

    const sim::ValidationResult result =
        sim::validate_allocation(scenario.config, scenario.devices, report.allocation, opts);

    json devices = json::array();
    for (const sim::DeviceVerdict& v : result.devices) {
        devices.push_back(
            {{"device", v.device},
             {"pass", v.pass},
             {"detail", v.detail},
             {"stats",
              {{"active_ratio", estimate_to_json(v.stats.active_ratio)},
               {"mean_tx_power_w", estimate_to_json(v.stats.mean_tx_power_w)},
               {"rx_power_w", estimate_to_json(v.stats.rx_power_w)},
               {"symbols_per_slot", estimate_to_json(v.stats.symbols_per_slot)},
               {"tx_delay_s", estimate_to_json(v.stats.tx_delay_s)},
               {"slots", v.stats.slots},
               {"fading_draws", v.stats.fading_draws}}},
             {"analytic",
              {{"active_ratio", v.analytic_active_ratio},
               {"tx_delay_s", v.analytic_tx_delay_s},
               {"rx_power_w", v.analytic_rx_power_w}}}});
    }
    emit({{"pass", result.pass}, {"devices", devices}}, args.out);
    return result.pass ? 0 : 1;
}

struct AcceptArgs {
    std::vector<int> suites;
    std::uint64_t seed = 1;
    int parallelism = 1;
    std::string scratch_dir;
    std::string out;
};

int run_accept(const AcceptArgs& args) {
    using namespace jsccplan::experiments;

    AcceptanceOptions opts;
    opts.seed = args.seed;
    opts.parallelism = args.parallelism;
    opts.scratch_dir = args.scratch_dir;

    const std::vector<CriterionResult> results = run_acceptance(args.suites, opts);
    for (const CriterionResult& r : results) {
        std::printf("[%2d] %s %-32s measured=%s bound=%s (%.2f s)\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    format_double(r.measured).c_str(), format_double(r.bound).c_str(),
                    r.runtime_s);
        if (!r.pass && !r.detail.empty()) {
            std::printf("     %s\n", r.detail.c_str());
        }
    }
    if (!args.out.empty()) {
        write_text(args.out, acceptance_report_json(results).dump(2) + "\n");
    }
    return all_pass(results) ? 0 : 1;
}

struct FitArgs {
    std::string csv_path;
    std::string out;
};

int run_fit(const FitArgs& args) {
    std::ifstream in(args.csv_path);
    if (!in) throw jsccplan::experiments::ConfigError("cannot open " + args.csv_path);

    std::vector<jsccplan::SsimSample> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string a;
        std::string b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) {
            throw jsccplan::experiments::ConfigError(args.csv_path +
                                                     ": expected snr_db,ssim rows");
        }
        try {
            samples.emplace_back(std::stod(a), std::stod(b));
        } catch (const std::invalid_argument&) {
            if (samples.empty()) continue;  // header row
            throw jsccplan::experiments::ConfigError(args.csv_path +
                                                     ": non-numeric row '" + line + "'");
        }
    }
    const jsccplan::LogisticParams p = jsccplan::fit_logistic(samples);
    emit({{"a1", p.a1}, {"a2", p.a2}, {"c1", p.c1}, {"c2", p.c2}}, args.out);
    return 0;
}

void add_solver_flags(CLI::App* cmd, jsccplan::SolverOptions& solver) {
    cmd->add_option("--epsilon", solver.epsilon,
                    "Relative stopping width of the delay bisection");
    cmd->add_option("--epsilon2", solver.epsilon2,
                    "Relative tolerance of the threshold bisection");
    cmd->add_option("--parallelism", solver.parallelism,
                    "Worker threads for the compression-tuple sweep");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Latency-minimizing planner for multi-device uplink image offloading"};
    app.require_subcommand(1);
    int exit_code = 0;

    PlanArgs plan_args;
    CLI::App* plan = app.add_subcommand("plan", "Solve one scenario and print the plan");
    plan->add_option("--config", plan_args.config, "Scenario JSON (omit to generate)");
    plan->add_option("--k", plan_args.device_count, "Device count for generated scenarios");
    plan->add_option("--seed", plan_args.seed, "Scenario seed");
    plan->add_option("--strategy", plan_args.strategy, "OPT | HEU | EQU | FIX_O | FIX_G");
    plan->add_option("--out", plan_args.out, "Write the plan bundle here instead of stdout");
    add_solver_flags(plan, plan_args.solver);
    plan->callback([&] { exit_code = run_plan(plan_args); });

    FigureArgs fig_args[3];
    const std::string fig_names[3] = {"fig3", "fig4", "fig5"};
    const std::string fig_help[3] = {"Mean delay vs device count",
                                     "Mean delay vs edge CPU budget",
                                     "Edge shares vs first device's local CPU"};
    const std::string sweep_flag[3] = {"--k", "--fc", "--f1"};
    const std::string sweep_help[3] = {
        "Device counts to sweep (default 2..8)",
        "Edge budgets, Hz or percent of a 4.9 GHz core (default 100%..500%)",
        "First device local CPU values in Hz (default 1e9..4e9)"};
    for (int i = 0; i < 3; ++i) {
        FigureArgs& args = fig_args[i];
        CLI::App* cmd = app.add_subcommand(fig_names[i], fig_help[i]);
        cmd->add_option(sweep_flag[i], args.sweep, sweep_help[i])->delimiter(',');
        cmd->add_option("--trials", args.trials, "Trials per sweep point");
        if (i == 1) cmd->add_option("--devices", args.device_count, "Device count");
        cmd->add_option("--seed", args.seed, "Base seed");
        cmd->add_option("--strategies", args.strategies, "Comma-separated strategy list");
        cmd->add_option("--out-dir", args.out_dir, "Output directory");
        cmd->add_option("--config", args.config, "JSON with a system override block");
        add_solver_flags(cmd, args.solver);
        cmd->callback(
            [&, i] { exit_code = run_figure_cmd(fig_names[i], fig_args[i]); });
    }

    SimulateArgs sim_args;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte-Carlo validation of a saved plan bundle");
    simulate->add_option("--plan", sim_args.plan_path, "Plan bundle JSON from 'plan'")
        ->required();
    simulate->add_option("--slots", sim_args.slots, "Slots per device");
    simulate->add_option("--seed", sim_args.seed, "Simulation seed");
    simulate->add_option("--parallelism", sim_args.parallelism, "Worker threads");
    simulate->add_option("--trace-dir", sim_args.trace_dir,
                         "Write per-slot CSV traces into this directory");
    simulate->add_option("--out", sim_args.out, "Write the validation JSON here");
    simulate->callback([&] { exit_code = run_simulate(sim_args); });

    AcceptArgs accept_args;
    CLI::App* accept = app.add_subcommand("accept", "Run the acceptance criteria");
    accept->add_option("--suite", accept_args.suites,
                       "Criterion ids to run (default: all)")
        ->delimiter(',');
    accept->add_option("--seed", accept_args.seed, "Base seed");
    accept->add_option("--parallelism", accept_args.parallelism, "Worker threads");
    accept->add_option("--scratch-dir", accept_args.scratch_dir,
                       "Scratch directory for figure artifacts");
    accept->add_option("--out", accept_args.out, "Write the JSON report here");
    accept->callback([&] { exit_code = run_accept(accept_args); });

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Fit logistic parameters to snr_db,ssim CSV");
    fit->add_option("csv", fit_args.csv_path, "Input CSV")->required();
    fit->add_option("--out", fit_args.out, "Write the parameter JSON here");
    fit->callback([&] { exit_code = run_fit(fit_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const jsccplan::experiments::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "invalid argument: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return exit_code;
}
