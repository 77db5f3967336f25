#include "jsccplan/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "jsccplan/kkt_solver.hpp"
#include "jsccplan/model.hpp"
#include "jsccplan/scenario.hpp"
#include "jsccplan/special_functions.hpp"

namespace {

using namespace jsccplan;
using oracle::BruteForceResult;
using oracle::ConvexitySample;
using oracle::ConvexityVerdict;

SystemConfig default_cfg() { return experiments::default_system_config(); }

DeviceProfile device(int images, double cpu_hz, double distance_m, double ssim_req) {
    DeviceProfile dev;
    dev.image_count = images;
    dev.local_cpu_hz = cpu_hz;
    dev.tx_power_w = 0.1;
    dev.distance_m = distance_m;
    dev.ssim_req = ssim_req;
    return dev;
}

TEST(E1Quadrature, AgreesWithProductionEvaluator) {
    for (const double g : {1e-6, 1e-3, 0.5, 1.0, 10.0, 50.0}) {
        const double quad = oracle::e1_quadrature(g);
        const double prod = exp_integral_e1(g);
        EXPECT_NEAR(quad, prod, prod * 1e-11) << "g=" << g;
    }
}

TEST(E1Quadrature, RejectsOutOfDomain) {
    EXPECT_THROW(oracle::e1_quadrature(0.0), std::domain_error);
    EXPECT_THROW(oracle::e1_quadrature(-1.0), std::domain_error);
    EXPECT_THROW(oracle::e1_quadrature(700.0), std::domain_error);
}

TEST(ConvexityChecker, AnalyticAnchorHasKnownMinors) {
    // At (g, tau, f_c) = (1, 1, 1) with b = c = 1 the Hessian is
    // [[e, -e, 0], [-e, 2e, 0], [0, 0, 2]]; after unit-diagonal scaling its
    // leading principal minors are 1, 1/2, 1/2.
    const ConvexityVerdict verdict = oracle::check_constraint_convexity({ConvexitySample{}});
    EXPECT_TRUE(verdict.pass) << verdict.detail;
    EXPECT_EQ(verdict.samples_checked, 1);
    EXPECT_EQ(verdict.samples_skipped, 0);
    EXPECT_NEAR(verdict.min_normalized_minor, 0.5, 1e-5);
}

TEST(ConvexityChecker, FlagsConcaveSample) {
    ConvexitySample sample;
    sample.b = -1.0;
    const ConvexityVerdict verdict = oracle::check_constraint_convexity({sample});
    EXPECT_FALSE(verdict.pass);
    EXPECT_EQ(verdict.samples_checked, 1);
    EXPECT_LT(verdict.min_normalized_minor, 0.0);
    EXPECT_FALSE(verdict.detail.empty());
}

TEST(ConvexityChecker, SkipsDegenerateSample) {
    ConvexitySample sample;
    sample.tau = 0.0;  // step underflows and the stencil would leave the domain
    const ConvexityVerdict verdict = oracle::check_constraint_convexity({sample});
    EXPECT_FALSE(verdict.pass);
    EXPECT_EQ(verdict.samples_checked, 0);
    EXPECT_EQ(verdict.samples_skipped, 1);
}

TEST(ConvexityChecker, RealOperatingPointsAreConvex) {
    const SystemConfig cfg = default_cfg();
    const DeviceProfile dev = device(5, 1.5e9, 50.0, 0.85);
    const double b = dev.image_count * cfg.source_symbols() * (1.0 / 8.0) *
                     cfg.symbol_duration_s / cfg.num_subcarriers;
    const double c = dev.image_count * cfg.decode_cycles_per_image();

    std::vector<ConvexitySample> samples;
    for (const double g : {1e-3, 0.05, 0.4, 2.0}) {
        for (const double tau : {0.05, 0.3, 0.9}) {
            ConvexitySample s;
            s.g = g;
            s.tau = tau;
            s.f_c = 2.0e9;
            s.b = b;
            s.c = c;
            samples.push_back(s);
        }
    }
    const ConvexityVerdict verdict = oracle::check_constraint_convexity(samples);
    EXPECT_TRUE(verdict.pass) << verdict.detail;
    EXPECT_EQ(verdict.samples_checked, static_cast<int>(samples.size()));
    EXPECT_GT(verdict.min_normalized_minor, -1e-8);
}

TEST(ReferenceSolver, LeavesMuUnset) {
    P4Instance inst;
    inst.cfg = default_cfg();
    inst.devices = {device(5, 1.5e9, 40.0, 0.88)};
    inst.crs = {1.0 / 6.0};
    inst.T = 0.4;
    const P4Solution sol = oracle::solve_p4_reference(inst);
    ASSERT_TRUE(sol.feasible()) << sol.message;
    EXPECT_TRUE(std::isnan(sol.mu_star));
}

TEST(ReferenceSolver, MatchesInfeasibilityTaxonomy) {
    P4Instance inst;
    inst.cfg = default_cfg();
    inst.devices = {device(3, 1.2e9, 30.0, 0.90), device(7, 1.8e9, 60.0, 0.86)};
    inst.crs = {1.0 / 6.0, 1.0 / 12.0};
    inst.T = 0.1;  // below device 1's local latency

    const P4Solution fast = solve_p4(inst);
    const P4Solution slow = oracle::solve_p4_reference(inst);
    EXPECT_EQ(slow.status, fast.status);
    EXPECT_EQ(slow.status, P4Status::kLocalLatencyExceedsT);
    EXPECT_EQ(slow.failing_device, fast.failing_device);
}

TEST(BruteForce, RefusesOversizedTupleSpace) {
    const SystemConfig cfg = default_cfg();
    const std::vector<DeviceProfile> devices(9, device(2, 1.5e9, 40.0, 0.85));
    EXPECT_THROW(oracle::brute_force_p3(cfg, devices, 0.5), std::invalid_argument);
}

TEST(BruteForce, SingleDeviceEnumeratesCatalog) {
    const SystemConfig cfg = default_cfg();
    const std::vector<DeviceProfile> devices = {device(5, 1.5e9, 40.0, 0.85)};
    const double T = 0.4;

    const BruteForceResult result = oracle::brute_force_p3(cfg, devices, T);
    ASSERT_TRUE(result.any_solvable);
    EXPECT_EQ(result.tuples_examined, 4u);
    ASSERT_EQ(result.best_tuple.size(), 1u);

    // The winner must match an explicit argmin over the catalog.
    int best_index = -1;
    double best_tau = std::numeric_limits<double>::infinity();
    P4Instance inst;
    inst.cfg = cfg;
    inst.devices = devices;
    inst.T = T;
    inst.crs.resize(1);
    for (std::size_t i = 0; i < cfg.cr_catalog.size(); ++i) {
        inst.crs[0] = cfg.cr_catalog[i];
        const P4Solution sol = solve_p4(inst);
        ASSERT_TRUE(sol.feasible());
        if (sol.sum_tau < best_tau) {
            best_tau = sol.sum_tau;
            best_index = static_cast<int>(i);
        }
    }
    EXPECT_EQ(result.best_tuple[0], best_index);
    EXPECT_NEAR(result.best_sum_tau, best_tau, best_tau * 1e-6);
}

TEST(BruteForce, IdenticalDevicesPickSymmetricTuple) {
    const SystemConfig cfg = default_cfg();
    const std::vector<DeviceProfile> devices(2, device(4, 1.4e9, 55.0, 0.87));
    const BruteForceResult result = oracle::brute_force_p3(cfg, devices, 0.5);
    ASSERT_TRUE(result.any_solvable);
    EXPECT_EQ(result.tuples_examined, 16u);
    ASSERT_EQ(result.best_tuple.size(), 2u);
    EXPECT_EQ(result.best_tuple[0], result.best_tuple[1]);
}

TEST(BruteForce, BestSumTauNonincreasingInDelay) {
    const SystemConfig cfg = default_cfg();
    const std::vector<DeviceProfile> devices = {device(3, 1.2e9, 30.0, 0.90),
                                                device(2, 1.0e9, 80.0, 0.82)};
    double prev = std::numeric_limits<double>::infinity();
    for (const double t : {0.25, 0.3, 0.4, 0.6}) {
        const BruteForceResult result = oracle::brute_force_p3(cfg, devices, t);
        ASSERT_TRUE(result.any_solvable) << "T=" << t;
        EXPECT_LE(result.best_sum_tau, prev * (1.0 + 1e-9)) << "T=" << t;
        prev = result.best_sum_tau;
    }
}

TEST(BruteForce, ReportsWhenNoTupleWorks) {
    const SystemConfig cfg = default_cfg();

    // SSIM requirement above every catalog entry's upper asymptote.
    const BruteForceResult unsat =
        oracle::brute_force_p3(cfg, {device(5, 1.5e9, 40.0, 0.99)}, 0.4);
    EXPECT_FALSE(unsat.any_solvable);
    EXPECT_FALSE(unsat.feasible);
    EXPECT_TRUE(unsat.best_tuple.empty());
    EXPECT_EQ(unsat.tuples_examined, 4u);

    // Candidate delay below the device's local latency.
    const BruteForceResult blocked =
        oracle::brute_force_p3(cfg, {device(5, 1.5e9, 40.0, 0.85)}, 0.05);
    EXPECT_FALSE(blocked.any_solvable);
    EXPECT_FALSE(blocked.feasible);
}

}  // namespace
