#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "unlearn/report.hpp"

namespace unlearn {

// A scenario is a named, seeded experiment. params carries scenario-specific
// knobs (defaults from default_params, overridable via config file); when
// output_dir is nonempty the report and its CSV tables are written there.
struct ScenarioConfig {
    std::string name;
    std::uint64_t seed = 0;
    nlohmann::ordered_json params;
    std::string output_dir;
};

std::vector<std::string> list_scenarios();

// Canonical spelling of a scenario name; accepts snake_case and the
// CamelCase aliases (OneDim, TwoDimRegion, ToyLandscape, RandomSets,
// KlomEnsemble). Throws on unknown names.
std::string canonical_scenario_name(const std::string& name);

nlohmann::ordered_json default_params(const std::string& name);
std::uint64_t default_seed(const std::string& name);

// Fills unset fields from the defaults, validates the rest.
ScenarioConfig resolve_config(const ScenarioConfig& cfg);

ExperimentReport run_scenario(const ScenarioConfig& cfg);

ExperimentReport run_one_dim(const ScenarioConfig& cfg);
ExperimentReport run_two_dim_region(const ScenarioConfig& cfg);
ExperimentReport run_toy_landscape(const ScenarioConfig& cfg);
ExperimentReport run_random_sets(const ScenarioConfig& cfg);
ExperimentReport run_klom_ensemble(const ScenarioConfig& cfg);

} // namespace unlearn
