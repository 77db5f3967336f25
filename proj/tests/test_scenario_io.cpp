#include "jsccplan/scenario.hpp"
#include "jsccplan/serialization.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "jsccplan/planners.hpp"

namespace {

using namespace jsccplan;
using namespace jsccplan::experiments;
using nlohmann::json;

TEST(GenerateScenario, DeterministicForFixedSeed) {
    ScenarioSpec spec;
    spec.device_count = 4;
    spec.seed = 9;
    const Scenario a = generate_scenario(spec);
    const Scenario b = generate_scenario(spec);
    ASSERT_EQ(a.devices.size(), b.devices.size());
    for (std::size_t k = 0; k < a.devices.size(); ++k) {
        EXPECT_EQ(a.devices[k].image_count, b.devices[k].image_count);
        EXPECT_EQ(a.devices[k].local_cpu_hz, b.devices[k].local_cpu_hz);
        EXPECT_EQ(a.devices[k].distance_m, b.devices[k].distance_m);
        EXPECT_EQ(a.devices[k].ssim_req, b.devices[k].ssim_req);
    }
}

TEST(GenerateScenario, SmallerDrawIsPrefixOfLarger) {
    ScenarioSpec small;
    small.device_count = 3;
    small.seed = 9;
    ScenarioSpec large = small;
    large.device_count = 5;
    const Scenario a = generate_scenario(small);
    const Scenario b = generate_scenario(large);
    ASSERT_EQ(a.devices.size(), 3u);
    ASSERT_EQ(b.devices.size(), 5u);
    for (std::size_t k = 0; k < a.devices.size(); ++k) {
        EXPECT_EQ(a.devices[k].image_count, b.devices[k].image_count);
        EXPECT_EQ(a.devices[k].local_cpu_hz, b.devices[k].local_cpu_hz);
        EXPECT_EQ(a.devices[k].distance_m, b.devices[k].distance_m);
        EXPECT_EQ(a.devices[k].ssim_req, b.devices[k].ssim_req);
    }
}

TEST(GenerateScenario, DistinctSeedsGiveDistinctDevices) {
    ScenarioSpec spec;
    spec.device_count = 1;
    spec.seed = 9;
    ScenarioSpec other = spec;
    other.seed = 10;
    const Scenario a = generate_scenario(spec);
    const Scenario b = generate_scenario(other);
    EXPECT_NE(a.devices[0].distance_m, b.devices[0].distance_m);
}

TEST(GenerateScenario, RespectsDistributionBounds) {
    ScenarioSpec spec;
    spec.device_count = 40;
    spec.seed = 10;
    const Scenario sc = generate_scenario(spec);
    const DistributionBounds b;
    for (const DeviceProfile& dev : sc.devices) {
        EXPECT_GE(dev.image_count, b.image_count_min);
        EXPECT_LE(dev.image_count, b.image_count_max);
        EXPECT_GE(dev.ssim_req, b.ssim_req_min);
        EXPECT_LE(dev.ssim_req, b.ssim_req_max);
        EXPECT_GE(dev.local_cpu_hz, b.local_cpu_hz_min);
        EXPECT_LE(dev.local_cpu_hz, b.local_cpu_hz_max);
        EXPECT_GE(dev.distance_m, b.distance_m_min);
        EXPECT_LE(dev.distance_m, b.distance_m_max);
        EXPECT_DOUBLE_EQ(dev.tx_power_w, 0.1);
    }
}

TEST(DefaultConfig, MatchesReferenceDeployment) {
    const SystemConfig cfg = default_system_config();
    EXPECT_EQ(cfg.num_subcarriers, 256);
    EXPECT_DOUBLE_EQ(cfg.symbol_duration_s, 1.0 / 15000.0);
    EXPECT_DOUBLE_EQ(cfg.noise_power_w, 1e-11);
    EXPECT_DOUBLE_EQ(cfg.path_loss_exp, 3.0);
    EXPECT_DOUBLE_EQ(cfg.edge_cpu_hz, 9.8e9);
    EXPECT_EQ(cfg.image_height, 128);
    EXPECT_EQ(cfg.image_width, 128);
    EXPECT_DOUBLE_EQ(cfg.encode_cycles_per_pixel, 2170.0);
    EXPECT_DOUBLE_EQ(cfg.decode_cycles_per_pixel, 2510.0);
    ASSERT_EQ(cfg.cr_catalog.size(), 4u);
    EXPECT_DOUBLE_EQ(cfg.cr_catalog[0], 1.0 / 6.0);
    EXPECT_DOUBLE_EQ(cfg.cr_catalog[1], 1.0 / 8.0);
    EXPECT_DOUBLE_EQ(cfg.cr_catalog[2], 1.0 / 12.0);
    EXPECT_DOUBLE_EQ(cfg.cr_catalog[3], 1.0 / 24.0);
    EXPECT_DOUBLE_EQ(cfg.source_symbols(), 49152.0);
}

TEST(DefaultLogisticTable, OrderedAndPlausible) {
    const auto& table = default_logistic_table();
    ASSERT_EQ(table.size(), 4u);
    double prev_a2 = 1.0;
    for (const auto& [cr, lp] : table) {
        // Iteration runs from the largest ratio down; quality ceilings follow.
        EXPECT_LT(lp.a2, prev_a2) << "cr=" << cr;
        prev_a2 = lp.a2;
        EXPECT_GE(lp.a1, 0.0);
        EXPECT_LE(lp.a2, 1.0);
        EXPECT_GT(lp.a2, lp.a1);
        EXPECT_GT(lp.c1, 0.0);
    }
    EXPECT_NEAR(table.at(1.0 / 6.0).a2, 0.97, 1e-2);
    EXPECT_NEAR(table.at(1.0 / 24.0).a2, 0.88, 1e-2);
}

TEST(ApplySystemOverrides, NoisePowerFromDbm) {
    SystemConfig cfg = default_system_config();
    apply_system_overrides(cfg, json{{"noise_power_dbm", -80.0}});
    EXPECT_NEAR(cfg.noise_power_w, 1e-11, 1e-11 * 1e-12);
}

TEST(ApplySystemOverrides, EdgeCpuFromPercent) {
    SystemConfig cfg = default_system_config();
    apply_system_overrides(cfg, json{{"edge_cpu_percent", "200%"}});
    EXPECT_DOUBLE_EQ(cfg.edge_cpu_hz, 9.8e9);

    apply_system_overrides(cfg, json{{"edge_cpu_percent", 150.0}});
    EXPECT_DOUBLE_EQ(cfg.edge_cpu_hz, 7.35e9);

    EXPECT_THROW(apply_system_overrides(cfg, json{{"edge_cpu_percent", "-5%"}}), ConfigError);
    EXPECT_THROW(apply_system_overrides(cfg, json{{"edge_cpu_percent", "fast"}}), ConfigError);
}

TEST(ApplySystemOverrides, RejectsAmbiguousAlternatives) {
    SystemConfig cfg = default_system_config();
    try {
        apply_system_overrides(cfg,
                               json{{"noise_power_w", 1e-11}, {"noise_power_dbm", -80.0}});
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("exactly one"), std::string::npos);
        EXPECT_EQ(std::string(e.what()).rfind("system", 0), 0u);
    }
    EXPECT_THROW(apply_system_overrides(
                     cfg, json{{"edge_cpu_hz", 9.8e9}, {"edge_cpu_percent", 200.0}}),
                 ConfigError);
}

TEST(ApplySystemOverrides, RejectsUnknownKeyWithDottedPath) {
    SystemConfig cfg = default_system_config();
    try {
        apply_system_overrides(cfg, json{{"bogus", 1}});
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("system.bogus", 0), 0u);
    }
}

TEST(ApplySystemOverrides, RevalidatesAfterCatalogOverride) {
    SystemConfig cfg = default_system_config();
    // Catalog entry without a quality-model row must be refused.
    EXPECT_THROW(apply_system_overrides(cfg, json{{"cr_catalog", {0.5}}}), ConfigError);
}

TEST(ScenarioFromJson, GenerateBlockMatchesDirectCall) {
    const json doc = {{"system", {{"edge_cpu_hz", 5.0e9}}},
                      {"generate", {{"device_count", 3}, {"seed", 9}}}};
    const Scenario sc = scenario_from_json(doc);
    EXPECT_DOUBLE_EQ(sc.config.edge_cpu_hz, 5.0e9);

    ScenarioSpec spec;
    spec.device_count = 3;
    spec.seed = 9;
    const Scenario direct = generate_scenario(spec);
    ASSERT_EQ(sc.devices.size(), direct.devices.size());
    for (std::size_t k = 0; k < sc.devices.size(); ++k) {
        EXPECT_EQ(sc.devices[k].image_count, direct.devices[k].image_count);
        EXPECT_EQ(sc.devices[k].distance_m, direct.devices[k].distance_m);
    }
}

TEST(ScenarioFromJson, ExplicitDeviceList) {
    const json doc = {{"devices",
                       {{{"image_count", 4},
                         {"local_cpu_hz", 1.5e9},
                         {"tx_power_w", 0.1},
                         {"distance_m", 42.0},
                         {"ssim_req", 0.9}}}}};
    const Scenario sc = scenario_from_json(doc);
    ASSERT_EQ(sc.devices.size(), 1u);
    EXPECT_EQ(sc.devices[0].image_count, 4);
    EXPECT_DOUBLE_EQ(sc.devices[0].distance_m, 42.0);
}

TEST(ScenarioFromJson, RequiresExactlyOneDeviceSource) {
    const json both = {{"devices", json::array()}, {"generate", json::object()}};
    EXPECT_THROW(scenario_from_json(both), ConfigError);
    const json neither = json::object();
    EXPECT_THROW(scenario_from_json(neither), ConfigError);
}

TEST(ScenarioFromJson, BadDeviceReportsItsPath) {
    const json doc = {{"devices",
                       {{{"image_count", 4},
                         {"local_cpu_hz", 1.5e9},
                         {"tx_power_w", 0.1},
                         {"distance_m", 42.0},
                         {"ssim_req", 1.5}}}}};
    try {
        scenario_from_json(doc);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("devices[0]"), std::string::npos);
    }
}

TEST(ReportJson, RoundTripsThroughText) {
    ScenarioSpec spec;
    spec.device_count = 2;
    spec.seed = 15;
    const Scenario sc = generate_scenario(spec);
    const PlanReport report = solve_optimal(sc.config, sc.devices);
    ASSERT_TRUE(report.ok());

    const json parsed = json::parse(report_to_json(report).dump());
    const PlanReport back = report_from_json(parsed);
    EXPECT_EQ(back.strategy, report.strategy);
    EXPECT_EQ(back.status, report.status);
    EXPECT_DOUBLE_EQ(back.system_delay_s, report.system_delay_s);
    EXPECT_DOUBLE_EQ(back.sum_tau, report.sum_tau);
    EXPECT_DOUBLE_EQ(back.delay_lower_s, report.delay_lower_s);
    EXPECT_DOUBLE_EQ(back.delay_upper_s, report.delay_upper_s);
    ASSERT_EQ(back.allocation.size(), report.allocation.size());
    for (std::size_t k = 0; k < report.allocation.size(); ++k) {
        EXPECT_EQ(back.allocation[k].cr_index, report.allocation[k].cr_index);
        EXPECT_DOUBLE_EQ(back.allocation[k].cr, report.allocation[k].cr);
        EXPECT_DOUBLE_EQ(back.allocation[k].threshold, report.allocation[k].threshold);
        EXPECT_DOUBLE_EQ(back.allocation[k].time_share, report.allocation[k].time_share);
        EXPECT_DOUBLE_EQ(back.allocation[k].edge_cpu_hz, report.allocation[k].edge_cpu_hz);
        EXPECT_DOUBLE_EQ(back.allocation[k].latency_total_s,
                         report.allocation[k].latency_total_s);
    }
    EXPECT_EQ(back.trace.size(), report.trace.size());
}

TEST(ReportJson, InfeasibleDelaySerializesAsNull) {
    ScenarioSpec spec;
    spec.device_count = 1;
    spec.seed = 16;
    Scenario sc = generate_scenario(spec);
    sc.devices[0].ssim_req = 0.99;
    const PlanReport report = solve_optimal(sc.config, sc.devices);
    ASSERT_FALSE(report.ok());
    ASSERT_TRUE(std::isnan(report.system_delay_s));

    const std::string text = report_to_json(report).dump();
    EXPECT_NE(text.find("\"system_delay_s\":null"), std::string::npos);

    const PlanReport back = report_from_json(json::parse(text));
    EXPECT_EQ(back.status, PlanStatus::kUnsatisfiableDevice);
    EXPECT_TRUE(std::isnan(back.system_delay_s));
}

TEST(LoadScenarioFile, SurfacesParseAndIoErrors) {
    const auto dir = std::filesystem::temp_directory_path() / "jsccplan-test-io";
    std::filesystem::create_directories(dir);
    const auto path = dir / "broken.json";
    {
        std::ofstream out(path);
        out << "{not json";
    }
    EXPECT_THROW(load_scenario_file(path.string()), ConfigError);
    EXPECT_THROW(load_scenario_file((dir / "missing.json").string()), ConfigError);
}

TEST(PlanBundle, PairsScenarioWithReport) {
    ScenarioSpec spec;
    spec.device_count = 2;
    spec.seed = 17;
    const Scenario sc = generate_scenario(spec);
    const PlanReport report = solve_heuristic(sc.config, sc.devices);
    ASSERT_TRUE(report.ok());

    const json bundle = plan_bundle_to_json(sc, report);
    ASSERT_TRUE(bundle.contains("scenario"));
    ASSERT_TRUE(bundle.contains("report"));
    EXPECT_TRUE(bundle["scenario"].contains("system"));
    EXPECT_TRUE(bundle["scenario"].contains("devices"));
    EXPECT_EQ(bundle["report"]["strategy"], "HEU");

    // The bundle's scenario must parse back into an equivalent instance.
    const Scenario back = scenario_from_json(bundle["scenario"]);
    ASSERT_EQ(back.devices.size(), sc.devices.size());
    EXPECT_DOUBLE_EQ(back.devices[1].distance_m, sc.devices[1].distance_m);
}

}  // namespace
