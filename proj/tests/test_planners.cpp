#include "jsccplan/planners.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "jsccplan/model.hpp"
#include "jsccplan/scenario.hpp"
#include "jsccplan/serialization.hpp"
#include "jsccplan/special_functions.hpp"

namespace {

using namespace jsccplan;
using experiments::generate_scenario;
using experiments::Scenario;
using experiments::ScenarioSpec;

Scenario seeded_scenario(int device_count, std::uint64_t seed) {
    ScenarioSpec spec;
    spec.device_count = device_count;
    spec.seed = seed;
    return generate_scenario(spec);
}

DeviceProfile device(int images, double cpu_hz, double distance_m, double ssim_req) {
    DeviceProfile dev;
    dev.image_count = images;
    dev.local_cpu_hz = cpu_hz;
    dev.tx_power_w = 0.1;
    dev.distance_m = distance_m;
    dev.ssim_req = ssim_req;
    return dev;
}

/// Catalog whose largest ratio has the weaker quality model, so pinning the
/// ratio can fail a device the adaptive strategies still satisfy.
SystemConfig inverted_quality_config() {
    SystemConfig cfg = experiments::default_system_config();
    cfg.cr_catalog = {0.5, 0.25};
    cfg.logistic_table.clear();
    cfg.logistic_table[0.5] = LogisticParams{0.30, 0.85, 0.25, 1.0};
    cfg.logistic_table[0.25] = LogisticParams{0.30, 0.95, 0.25, 1.0};
    return cfg;
}

TEST(InitBounds, SingleDeviceCollapsesToOnePoint) {
    const Scenario sc = seeded_scenario(1, 5);
    const auto [lo, hi] = init_bounds(sc.config, sc.devices);
    EXPECT_DOUBLE_EQ(lo, hi);
    EXPECT_GT(lo, 0.0);
}

TEST(InitBounds, LowerBoundBelowUpperBound) {
    const Scenario sc = seeded_scenario(4, 6);
    const auto [lo, hi] = init_bounds(sc.config, sc.devices);
    EXPECT_LT(lo, hi);
}

TEST(InitBounds, ThrowsWhenDeviceMeetsNoCatalogEntry) {
    Scenario sc = seeded_scenario(2, 7);
    sc.devices[1].ssim_req = 0.99;  // above every catalog asymptote
    EXPECT_THROW(init_bounds(sc.config, sc.devices), std::invalid_argument);
}

TEST(SolveEqu, DelayEqualsInitialUpperBound) {
    const Scenario sc = seeded_scenario(3, 11);
    const auto [lo, hi] = init_bounds(sc.config, sc.devices);
    const PlanReport equ = solve_equ(sc.config, sc.devices);
    ASSERT_TRUE(equ.ok());
    EXPECT_DOUBLE_EQ(equ.system_delay_s, hi);
    EXPECT_DOUBLE_EQ(equ.sum_tau, 1.0);
}

TEST(SolveOptimal, SingleDeviceMatchesHeuristic) {
    const Scenario sc = seeded_scenario(1, 13);
    const PlanReport opt = solve_optimal(sc.config, sc.devices);
    const PlanReport heu = solve_heuristic(sc.config, sc.devices);
    ASSERT_TRUE(opt.ok());
    ASSERT_TRUE(heu.ok());
    EXPECT_DOUBLE_EQ(opt.system_delay_s, heu.system_delay_s);
    EXPECT_DOUBLE_EQ(opt.sum_tau, heu.sum_tau);
    EXPECT_EQ(opt.allocation[0].cr_index, heu.allocation[0].cr_index);
}

TEST(SolveOptimal, DominatesEveryBaseline) {
    const Scenario sc = seeded_scenario(3, 11);
    const PlanReport opt = solve_optimal(sc.config, sc.devices);
    ASSERT_TRUE(opt.ok());
    for (const Strategy s :
         {Strategy::kHeu, Strategy::kEqu, Strategy::kFixO, Strategy::kFixG}) {
        const PlanReport other = solve(s, sc.config, sc.devices);
        ASSERT_TRUE(other.ok()) << to_string(s);
        EXPECT_LE(opt.system_delay_s, other.system_delay_s * (1.0 + 1e-12)) << to_string(s);
    }
}

TEST(SolveOptimal, BisectionCertificateHolds) {
    const Scenario sc = seeded_scenario(3, 17);
    const SolverOptions opts;
    const PlanReport opt = solve_optimal(sc.config, sc.devices, opts);
    ASSERT_TRUE(opt.ok());

    EXPECT_LE((opt.delay_upper_s - opt.delay_lower_s) / opt.delay_upper_s, opts.epsilon);
    EXPECT_NEAR(opt.system_delay_s, opt.delay_upper_s, opt.delay_upper_s * 1e-9);
    EXPECT_GT(opt.p4_solves, 0u);
    EXPECT_GT(opt.cr_tuples_examined, 0u);

    // Sorted by candidate delay, the feasibility indicator may switch from
    // false to true exactly once.
    std::vector<TraceEntry> trace = opt.trace;
    std::sort(trace.begin(), trace.end(),
              [](const TraceEntry& a, const TraceEntry& b) { return a.T < b.T; });
    bool seen_feasible = false;
    for (const TraceEntry& entry : trace) {
        if (entry.feasible) {
            seen_feasible = true;
        } else {
            EXPECT_FALSE(seen_feasible) << "feasible probe below an infeasible one";
        }
    }
    EXPECT_TRUE(seen_feasible);
}

TEST(SolveHeuristic, StaysWithinFivePercentOfOptimal) {
    for (const std::uint64_t seed : {21u, 22u, 23u}) {
        const Scenario sc = seeded_scenario(3, seed);
        const PlanReport opt = solve_optimal(sc.config, sc.devices);
        const PlanReport heu = solve_heuristic(sc.config, sc.devices);
        ASSERT_TRUE(opt.ok());
        ASSERT_TRUE(heu.ok());
        EXPECT_LE(opt.system_delay_s, heu.system_delay_s * (1.0 + 1e-12)) << "seed " << seed;
        EXPECT_LE(heu.system_delay_s / opt.system_delay_s, 1.05) << "seed " << seed;
    }
}

TEST(SolveFixG, FloorsThresholdAtHalf) {
    const SystemConfig cfg = experiments::default_system_config();

    // Typical device: generous SNR budget, minimum threshold far below 0.5.
    const std::vector<DeviceProfile> easy = {device(5, 1.5e9, 50.0, 0.85)};
    const PlanReport floored = solve_fix_g(cfg, easy);
    ASSERT_TRUE(floored.ok());
    EXPECT_DOUBLE_EQ(floored.allocation[0].threshold, 0.5);

    // Far, demanding device: its own minimum exceeds the floor and survives.
    const std::vector<DeviceProfile> hard = {device(5, 1.5e9, 100.0, 0.968)};
    const double d =
        min_threshold(cutoff_ceiling(cfg, hard[0], cfg.logistic_table.at(cfg.cr_catalog[0])));
    ASSERT_GT(d, 0.5);
    const PlanReport kept = solve_fix_g(cfg, hard);
    ASSERT_TRUE(kept.ok());
    EXPECT_DOUBLE_EQ(kept.allocation[0].threshold, d);
}

TEST(Baselines, PinnedRatioCanFailWhereAdaptiveSucceeds) {
    const SystemConfig cfg = inverted_quality_config();
    const std::vector<DeviceProfile> devices = {device(4, 1.5e9, 40.0, 0.90)};

    EXPECT_EQ(solve_fix_o(cfg, devices).status, PlanStatus::kUnsatisfiableDevice);
    EXPECT_EQ(solve_fix_g(cfg, devices).status, PlanStatus::kUnsatisfiableDevice);

    const PlanReport opt = solve_optimal(cfg, devices);
    ASSERT_TRUE(opt.ok());
    EXPECT_DOUBLE_EQ(opt.allocation[0].cr, 0.25);
    EXPECT_TRUE(solve_heuristic(cfg, devices).ok());
    EXPECT_TRUE(solve_equ(cfg, devices).ok());
}

TEST(Solvers, UnsatisfiableDeviceReportedNotThrown) {
    Scenario sc = seeded_scenario(2, 7);
    sc.devices[1].ssim_req = 0.99;
    EXPECT_EQ(solve_optimal(sc.config, sc.devices).status,
              PlanStatus::kUnsatisfiableDevice);
    EXPECT_EQ(solve_heuristic(sc.config, sc.devices).status,
              PlanStatus::kUnsatisfiableDevice);
    EXPECT_EQ(solve_equ(sc.config, sc.devices).status, PlanStatus::kUnsatisfiableDevice);
}

TEST(VerifyReport, AcceptsSolverOutput) {
    const Scenario sc = seeded_scenario(3, 31);
    for (const Strategy s : {Strategy::kOpt, Strategy::kHeu, Strategy::kEqu,
                             Strategy::kFixO, Strategy::kFixG}) {
        const PlanReport report = solve(s, sc.config, sc.devices);
        ASSERT_TRUE(report.ok()) << to_string(s);
        const Verdict verdict = verify_report(sc.config, sc.devices, report);
        EXPECT_TRUE(verdict.pass) << to_string(s);
        for (const ConstraintCheck& check : verdict.checks) {
            EXPECT_TRUE(check.pass) << to_string(s) << ": " << check.name;
        }
    }
}

bool check_failed(const Verdict& verdict, const std::string& name) {
    for (const ConstraintCheck& check : verdict.checks) {
        if (check.name == name) return !check.pass;
    }
    ADD_FAILURE() << "check '" << name << "' not reported";
    return false;
}

TEST(VerifyReport, CatchesTamperedAllocations) {
    const Scenario sc = seeded_scenario(3, 31);
    const PlanReport clean = solve_optimal(sc.config, sc.devices);
    ASSERT_TRUE(clean.ok());

    PlanReport inflated = clean;
    for (DeviceAllocation& row : inflated.allocation) row.time_share *= 1.5;
    const Verdict v1 = verify_report(sc.config, sc.devices, inflated);
    EXPECT_FALSE(v1.pass);
    EXPECT_TRUE(check_failed(v1, "time_share_budget"));

    PlanReport weakened = clean;
    weakened.allocation[0].threshold *= 0.5;
    const Verdict v2 = verify_report(sc.config, sc.devices, weakened);
    EXPECT_FALSE(v2.pass);
    EXPECT_TRUE(check_failed(v2, "ssim_requirement"));

    PlanReport negative = clean;
    negative.allocation[0].threshold = -0.1;
    const Verdict v3 = verify_report(sc.config, sc.devices, negative);
    EXPECT_FALSE(v3.pass);
    EXPECT_TRUE(check_failed(v3, "threshold_nonnegative"));

    PlanReport offbook = clean;
    offbook.allocation[0].cr = 0.3;
    const Verdict v4 = verify_report(sc.config, sc.devices, offbook);
    EXPECT_FALSE(v4.pass);
    EXPECT_TRUE(check_failed(v4, "cr_catalog_membership"));
}

TEST(VerifyReport, RejectsNonOkPlans) {
    Scenario sc = seeded_scenario(2, 7);
    sc.devices[1].ssim_req = 0.99;
    const PlanReport bad = solve_optimal(sc.config, sc.devices);
    ASSERT_FALSE(bad.ok());
    EXPECT_THROW(verify_report(sc.config, sc.devices, bad), std::invalid_argument);
}

TEST(Determinism, ParallelSweepMatchesSerial) {
    // Five devices give 4^5 = 1024 tuples per probe, enough to actually
    // split the sweep across workers.
    const Scenario sc = seeded_scenario(5, 41);
    SolverOptions serial;
    serial.parallelism = 1;
    SolverOptions parallel;
    parallel.parallelism = 4;
    const PlanReport a = solve_optimal(sc.config, sc.devices, serial);
    const PlanReport b = solve_optimal(sc.config, sc.devices, parallel);
    ASSERT_TRUE(a.ok());
    ASSERT_TRUE(b.ok());
    EXPECT_EQ(experiments::report_to_json(a).dump(), experiments::report_to_json(b).dump());
}

TEST(Scaling, DelayHomogeneousInImageCount) {
    const Scenario sc = seeded_scenario(3, 47);
    const PlanReport base = solve_optimal(sc.config, sc.devices);
    ASSERT_TRUE(base.ok());

    Scenario doubled = sc;
    for (DeviceProfile& dev : doubled.devices) dev.image_count *= 2;
    const PlanReport twice = solve_optimal(doubled.config, doubled.devices);
    ASSERT_TRUE(twice.ok());
    EXPECT_DOUBLE_EQ(twice.system_delay_s, 2.0 * base.system_delay_s);

    Scenario tripled = sc;
    for (DeviceProfile& dev : tripled.devices) dev.image_count *= 3;
    const PlanReport thrice = solve_optimal(tripled.config, tripled.devices);
    ASSERT_TRUE(thrice.ok());
    EXPECT_NEAR(thrice.system_delay_s, 3.0 * base.system_delay_s,
                3.0 * base.system_delay_s * 1e-12);
}

TEST(Solve, DispatchMatchesDirectCalls) {
    const Scenario sc = seeded_scenario(2, 53);
    EXPECT_DOUBLE_EQ(solve(Strategy::kOpt, sc.config, sc.devices).system_delay_s,
                     solve_optimal(sc.config, sc.devices).system_delay_s);
    EXPECT_DOUBLE_EQ(solve(Strategy::kHeu, sc.config, sc.devices).system_delay_s,
                     solve_heuristic(sc.config, sc.devices).system_delay_s);
    EXPECT_DOUBLE_EQ(solve(Strategy::kEqu, sc.config, sc.devices).system_delay_s,
                     solve_equ(sc.config, sc.devices).system_delay_s);
    EXPECT_DOUBLE_EQ(solve(Strategy::kFixO, sc.config, sc.devices).system_delay_s,
                     solve_fix_o(sc.config, sc.devices).system_delay_s);
    EXPECT_DOUBLE_EQ(solve(Strategy::kFixG, sc.config, sc.devices).system_delay_s,
                     solve_fix_g(sc.config, sc.devices).system_delay_s);
}

TEST(StrategyNames, RoundTrip) {
    for (const Strategy s : {Strategy::kOpt, Strategy::kHeu, Strategy::kEqu,
                             Strategy::kFixO, Strategy::kFixG}) {
        EXPECT_EQ(strategy_from_string(to_string(s)), s);
    }
    EXPECT_THROW(strategy_from_string("BEST"), std::invalid_argument);
}

}  // namespace
