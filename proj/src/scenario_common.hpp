#pragma once

#include "unlearn/scenarios.hpp"

namespace unlearn {
namespace detail {

inline ExperimentReport base_report(const ScenarioConfig& cfg) {
    ExperimentReport r;
    r.scenario = cfg.name;
    r.config_echo = nlohmann::ordered_json{
        {"name", cfg.name}, {"seed", cfg.seed}, {"params", cfg.params}};
    return r;
}

inline void maybe_write(const ExperimentReport& r, const ScenarioConfig& cfg) {
    if (!cfg.output_dir.empty()) r.write(cfg.output_dir);
}

} // namespace detail
} // namespace unlearn
