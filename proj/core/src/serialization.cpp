#include "jsccplan/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <string>

namespace jsccplan::experiments {
namespace {

using nlohmann::json;

constexpr double kReferenceCoreHz = 4.9e9;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void expect_object(const json& j, const std::string& path,
                   const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) fail(path + "." + item.key(), "unknown key");
    }
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

std::uint64_t as_seed(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !j.is_number_integer()) fail(path, "expected an integer");
    const auto v = j.get<std::int64_t>();
    if (v < 0) fail(path, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

double parse_edge_cpu_percent(const json& j, const std::string& path) {
    double pct = 0.0;
    if (j.is_number()) {
        pct = j.get<double>();
    } else if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t used = 0;
        try {
            pct = std::stod(s, &used);
        } catch (const std::exception&) {
            fail(path, "expected a percentage like 200 or \"200%\"");
        }
        while (used < s.size() && s[used] == ' ') ++used;
        if (used < s.size() && s[used] == '%') ++used;
        if (used != s.size()) fail(path, "expected a percentage like 200 or \"200%\"");
    } else {
        fail(path, "expected a percentage like 200 or \"200%\"");
    }
    if (!(pct > 0.0)) fail(path, "percentage must be positive");
    return pct / 100.0 * kReferenceCoreHz;
}

}  // namespace

void apply_system_overrides(SystemConfig& cfg, const json& overrides,
                            const std::string& path) {
    expect_object(overrides, path,
                  {"num_subcarriers", "symbol_duration_s", "noise_power_w",
                   "noise_power_dbm", "path_loss_exp", "edge_cpu_hz", "edge_cpu_percent",
                   "image_height", "image_width", "encode_cycles_per_pixel",
                   "decode_cycles_per_pixel", "cr_catalog", "logistic_table"});

    if (overrides.contains("noise_power_w") && overrides.contains("noise_power_dbm")) {
        fail(path, "give exactly one of noise_power_w or noise_power_dbm");
    }
    if (overrides.contains("edge_cpu_hz") && overrides.contains("edge_cpu_percent")) {
        fail(path, "give exactly one of edge_cpu_hz or edge_cpu_percent");
    }

    if (overrides.contains("num_subcarriers")) {
        cfg.num_subcarriers = as_int(overrides["num_subcarriers"], path + ".num_subcarriers");
    }
    if (overrides.contains("symbol_duration_s")) {
        cfg.symbol_duration_s =
            as_number(overrides["symbol_duration_s"], path + ".symbol_duration_s");
    }
    if (overrides.contains("noise_power_w")) {
        cfg.noise_power_w = as_number(overrides["noise_power_w"], path + ".noise_power_w");
    }
    if (overrides.contains("noise_power_dbm")) {
        const double dbm = as_number(overrides["noise_power_dbm"], path + ".noise_power_dbm");
        cfg.noise_power_w = std::pow(10.0, (dbm - 30.0) / 10.0);
    }
    if (overrides.contains("path_loss_exp")) {
        cfg.path_loss_exp = as_number(overrides["path_loss_exp"], path + ".path_loss_exp");
    }
    if (overrides.contains("edge_cpu_hz")) {
        cfg.edge_cpu_hz = as_number(overrides["edge_cpu_hz"], path + ".edge_cpu_hz");
    }
    if (overrides.contains("edge_cpu_percent")) {
        cfg.edge_cpu_hz =
            parse_edge_cpu_percent(overrides["edge_cpu_percent"], path + ".edge_cpu_percent");
    }
    if (overrides.contains("image_height")) {
        cfg.image_height = as_int(overrides["image_height"], path + ".image_height");
    }
    if (overrides.contains("image_width")) {
        cfg.image_width = as_int(overrides["image_width"], path + ".image_width");
    }
    if (overrides.contains("encode_cycles_per_pixel")) {
        cfg.encode_cycles_per_pixel =
            as_number(overrides["encode_cycles_per_pixel"], path + ".encode_cycles_per_pixel");
    }
    if (overrides.contains("decode_cycles_per_pixel")) {
        cfg.decode_cycles_per_pixel =
            as_number(overrides["decode_cycles_per_pixel"], path + ".decode_cycles_per_pixel");
    }
    if (overrides.contains("cr_catalog")) {
        const json& arr = overrides["cr_catalog"];
        if (!arr.is_array() || arr.empty()) fail(path + ".cr_catalog", "expected a non-empty array");
        cfg.cr_catalog.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            cfg.cr_catalog.push_back(
                as_number(arr[i], path + ".cr_catalog[" + std::to_string(i) + "]"));
        }
    }
    if (overrides.contains("logistic_table")) {
        const json& arr = overrides["logistic_table"];
        if (!arr.is_array()) fail(path + ".logistic_table", "expected an array");
        cfg.logistic_table.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string entry_path = path + ".logistic_table[" + std::to_string(i) + "]";
            expect_object(arr[i], entry_path, {"cr", "a1", "a2", "c1", "c2"});
            for (const char* key : {"cr", "a1", "a2", "c1", "c2"}) {
                if (!arr[i].contains(key)) fail(entry_path + "." + key, "missing");
            }
            LogisticParams lp;
            lp.a1 = as_number(arr[i]["a1"], entry_path + ".a1");
            lp.a2 = as_number(arr[i]["a2"], entry_path + ".a2");
            lp.c1 = as_number(arr[i]["c1"], entry_path + ".c1");
            lp.c2 = as_number(arr[i]["c2"], entry_path + ".c2");
            cfg.logistic_table[as_number(arr[i]["cr"], entry_path + ".cr")] = lp;
        }
    }

    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

std::vector<DeviceProfile> devices_from_json(const json& arr, const std::string& path) {
    if (!arr.is_array() || arr.empty()) fail(path, "expected a non-empty array");
    std::vector<DeviceProfile> devices;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string dev_path = path + "[" + std::to_string(i) + "]";
        expect_object(arr[i], dev_path,
                      {"image_count", "local_cpu_hz", "tx_power_w", "distance_m", "ssim_req"});
        DeviceProfile dev;
        for (const char* key :
             {"image_count", "local_cpu_hz", "tx_power_w", "distance_m", "ssim_req"}) {
            if (!arr[i].contains(key)) fail(dev_path + "." + key, "missing");
        }
        dev.image_count = as_int(arr[i]["image_count"], dev_path + ".image_count");
        dev.local_cpu_hz = as_number(arr[i]["local_cpu_hz"], dev_path + ".local_cpu_hz");
        dev.tx_power_w = as_number(arr[i]["tx_power_w"], dev_path + ".tx_power_w");
        dev.distance_m = as_number(arr[i]["distance_m"], dev_path + ".distance_m");
        dev.ssim_req = as_number(arr[i]["ssim_req"], dev_path + ".ssim_req");
        try {
            validate(dev);
        } catch (const std::invalid_argument& e) {
            fail(dev_path, e.what());
        }
        devices.push_back(dev);
    }
    return devices;
}

Scenario scenario_from_json(const json& doc) {
    expect_object(doc, "$", {"system", "devices", "generate"});
    SystemConfig cfg = default_system_config();
    if (doc.contains("system")) apply_system_overrides(cfg, doc["system"], "system");

    const bool has_devices = doc.contains("devices");
    const bool has_generate = doc.contains("generate");
    if (has_devices == has_generate) {
        fail("$", "give exactly one of devices or generate");
    }

    Scenario scenario;
    scenario.config = cfg;
    if (has_devices) {
        scenario.devices = devices_from_json(doc["devices"]);
        try {
            validate_scenario(scenario.config, scenario.devices);
        } catch (const std::invalid_argument& e) {
            fail("devices", e.what());
        }
        return scenario;
    }

    const json& gen = doc["generate"];
    expect_object(gen, "generate",
                  {"device_count", "seed", "image_count_min", "image_count_max",
                   "ssim_req_min", "ssim_req_max", "local_cpu_hz_min", "local_cpu_hz_max",
                   "distance_m_min", "distance_m_max", "tx_power_w"});
    ScenarioSpec spec;
    spec.system = cfg;
    if (gen.contains("device_count")) {
        spec.device_count = as_int(gen["device_count"], "generate.device_count");
    }
    if (gen.contains("seed")) spec.seed = as_seed(gen["seed"], "generate.seed");
    DistributionBounds& b = spec.bounds;
    if (gen.contains("image_count_min")) b.image_count_min = as_int(gen["image_count_min"], "generate.image_count_min");
    if (gen.contains("image_count_max")) b.image_count_max = as_int(gen["image_count_max"], "generate.image_count_max");
    if (gen.contains("ssim_req_min")) b.ssim_req_min = as_number(gen["ssim_req_min"], "generate.ssim_req_min");
    if (gen.contains("ssim_req_max")) b.ssim_req_max = as_number(gen["ssim_req_max"], "generate.ssim_req_max");
    if (gen.contains("local_cpu_hz_min")) b.local_cpu_hz_min = as_number(gen["local_cpu_hz_min"], "generate.local_cpu_hz_min");
    if (gen.contains("local_cpu_hz_max")) b.local_cpu_hz_max = as_number(gen["local_cpu_hz_max"], "generate.local_cpu_hz_max");
    if (gen.contains("distance_m_min")) b.distance_m_min = as_number(gen["distance_m_min"], "generate.distance_m_min");
    if (gen.contains("distance_m_max")) b.distance_m_max = as_number(gen["distance_m_max"], "generate.distance_m_max");
    if (gen.contains("tx_power_w")) b.tx_power_w = as_number(gen["tx_power_w"], "generate.tx_power_w");
    try {
        return generate_scenario(spec);
    } catch (const std::invalid_argument& e) {
        fail("generate", e.what());
    }
}

Scenario load_scenario_file(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) throw ConfigError(file_path + ": cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(file_path + ": " + e.what());
    }
    return scenario_from_json(doc);
}

json system_config_to_json(const SystemConfig& cfg) {
    json j;
    j["num_subcarriers"] = cfg.num_subcarriers;
    j["symbol_duration_s"] = cfg.symbol_duration_s;
    j["noise_power_w"] = cfg.noise_power_w;
    j["path_loss_exp"] = cfg.path_loss_exp;
    j["edge_cpu_hz"] = cfg.edge_cpu_hz;
    j["image_height"] = cfg.image_height;
    j["image_width"] = cfg.image_width;
    j["encode_cycles_per_pixel"] = cfg.encode_cycles_per_pixel;
    j["decode_cycles_per_pixel"] = cfg.decode_cycles_per_pixel;
    j["cr_catalog"] = cfg.cr_catalog;
    json table = json::array();
    for (const auto& [cr, lp] : cfg.logistic_table) {
        table.push_back({{"cr", cr}, {"a1", lp.a1}, {"a2", lp.a2}, {"c1", lp.c1},
                         {"c2", lp.c2}});
    }
    j["logistic_table"] = std::move(table);
    return j;
}

json devices_to_json(const std::vector<DeviceProfile>& devices) {
    json arr = json::array();
    for (const DeviceProfile& dev : devices) {
        arr.push_back({{"image_count", dev.image_count},
                       {"local_cpu_hz", dev.local_cpu_hz},
                       {"tx_power_w", dev.tx_power_w},
                       {"distance_m", dev.distance_m},
                       {"ssim_req", dev.ssim_req}});
    }
    return arr;
}

json scenario_to_json(const Scenario& scenario) {
    return {{"system", system_config_to_json(scenario.config)},
            {"devices", devices_to_json(scenario.devices)}};
}

json report_to_json(const PlanReport& report) {
    json j;
    j["strategy"] = to_string(report.strategy);
    j["status"] = to_string(report.status);
    j["message"] = report.message;
    j["system_delay_s"] = report.system_delay_s;
    j["sum_tau"] = report.sum_tau;
    j["delay_lower_s"] = report.delay_lower_s;
    j["delay_upper_s"] = report.delay_upper_s;
    j["p4_solves"] = report.p4_solves;
    j["cr_tuples_examined"] = report.cr_tuples_examined;
    json rows = json::array();
    for (std::size_t k = 0; k < report.allocation.size(); ++k) {
        const DeviceAllocation& row = report.allocation[k];
        rows.push_back({{"device", k},
                        {"cr_index", row.cr_index},
                        {"cr", row.cr},
                        {"threshold", row.threshold},
                        {"time_share", row.time_share},
                        {"edge_cpu_hz", row.edge_cpu_hz},
                        {"latency_local_s", row.latency_local_s},
                        {"latency_transmit_s", row.latency_transmit_s},
                        {"latency_decode_s", row.latency_decode_s},
                        {"latency_total_s", row.latency_total_s}});
    }
    j["allocation"] = std::move(rows);
    json trace = json::array();
    for (const TraceEntry& entry : report.trace) {
        trace.push_back({{"t_s", entry.T}, {"feasible", entry.feasible}});
    }
    j["trace"] = std::move(trace);
    return j;
}

PlanReport report_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("report: expected an object");
    PlanReport report;
    try {
        report.strategy = strategy_from_string(j.at("strategy").get<std::string>());
        const std::string status = j.at("status").get<std::string>();
        if (status == "ok") {
            report.status = PlanStatus::kOk;
        } else if (status == "unsatisfiable_device") {
            report.status = PlanStatus::kUnsatisfiableDevice;
        } else if (status == "infeasible_at_upper_bound") {
            report.status = PlanStatus::kInfeasibleAtUpperBound;
        } else if (status == "iteration_limit") {
            report.status = PlanStatus::kIterationLimit;
        } else {
            throw ConfigError("report.status: unknown value '" + status + "'");
        }
        report.message = j.value("message", std::string{});
        auto as_double_or_nan = [](const json& v) {
            return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
        };
        report.system_delay_s = as_double_or_nan(j.at("system_delay_s"));
        if (j.contains("sum_tau")) report.sum_tau = as_double_or_nan(j["sum_tau"]);
        if (j.contains("delay_lower_s")) report.delay_lower_s = as_double_or_nan(j["delay_lower_s"]);
        if (j.contains("delay_upper_s")) report.delay_upper_s = as_double_or_nan(j["delay_upper_s"]);
        report.p4_solves = j.value("p4_solves", std::uint64_t{0});
        report.cr_tuples_examined = j.value("cr_tuples_examined", std::uint64_t{0});
        for (const json& row_json : j.at("allocation")) {
            DeviceAllocation row;
            row.cr_index = row_json.at("cr_index").get<int>();
            row.cr = row_json.at("cr").get<double>();
            row.threshold = row_json.at("threshold").get<double>();
            row.time_share = row_json.at("time_share").get<double>();
            row.edge_cpu_hz = row_json.at("edge_cpu_hz").get<double>();
            row.latency_local_s = row_json.value("latency_local_s", 0.0);
            row.latency_transmit_s = row_json.value("latency_transmit_s", 0.0);
            row.latency_decode_s = row_json.value("latency_decode_s", 0.0);
            row.latency_total_s = row_json.value("latency_total_s", 0.0);
            report.allocation.push_back(row);
        }
        if (j.contains("trace")) {
            for (const json& entry : j.at("trace")) {
                report.trace.push_back(
                    {entry.at("t_s").get<double>(), entry.at("feasible").get<bool>()});
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string{"report: "} + e.what());
    }
    return report;
}

json plan_bundle_to_json(const Scenario& scenario, const PlanReport& report) {
    return {{"scenario", scenario_to_json(scenario)}, {"report", report_to_json(report)}};
}

}  // namespace jsccplan::experiments
