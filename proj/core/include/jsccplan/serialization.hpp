#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "jsccplan/planners.hpp"
#include "jsccplan/scenario.hpp"
#include "jsccplan/types.hpp"

namespace jsccplan::experiments {

/// Raised for any malformed configuration document; the message starts with
/// the dotted path of the offending field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Applies a partial "system" object on top of an existing config. Accepts
/// exactly one of noise_power_w / noise_power_dbm and exactly one of
/// edge_cpu_hz / edge_cpu_percent (percent of one 4.9 GHz reference core,
/// as a number or a string like "200%"); rejects unknown keys.
void apply_system_overrides(SystemConfig& cfg, const nlohmann::json& overrides,
                            const std::string& path = "system");

std::vector<DeviceProfile> devices_from_json(const nlohmann::json& arr,
                                             const std::string& path = "devices");

/// Full document: optional "system" overrides over the defaults, then exactly
/// one of an explicit "devices" array or a "generate" block
/// {device_count, seed, optional bounds overrides}.
Scenario scenario_from_json(const nlohmann::json& doc);

/// Reads and parses a scenario JSON file; parse errors surface as ConfigError.
Scenario load_scenario_file(const std::string& file_path);

nlohmann::json system_config_to_json(const SystemConfig& cfg);
nlohmann::json devices_to_json(const std::vector<DeviceProfile>& devices);
nlohmann::json scenario_to_json(const Scenario& scenario);

nlohmann::json report_to_json(const PlanReport& report);
PlanReport report_from_json(const nlohmann::json& j);

/// Self-contained result document: the scenario that was solved plus the plan.
nlohmann::json plan_bundle_to_json(const Scenario& scenario, const PlanReport& report);

}  // namespace jsccplan::experiments
