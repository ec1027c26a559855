#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unlearn/format.hpp"
#include "unlearn/report.hpp"
#include "unlearn/scenarios.hpp"

namespace {

std::string default_output_base() {
    if (const char* env = std::getenv("UNLEARN_LAB_OUT")) return env;
    return "runs";
}

unlearn::ScenarioConfig config_from_file(const std::string& scenario, const std::string& path) {
    unlearn::ScenarioConfig cfg;
    cfg.name = unlearn::canonical_scenario_name(scenario);
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
    if (j.contains("scenario")) {
        const auto named = unlearn::canonical_scenario_name(j.at("scenario").get<std::string>());
        if (named != cfg.name) {
            throw std::runtime_error("config file is for scenario '" + named + "', not '" +
                                     cfg.name + "'");
        }
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("params")) cfg.params = j.at("params");
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    return cfg;
}

int print_assertions(const unlearn::ExperimentReport& report) {
    int failures = 0;
    for (const auto& a : report.assertions) {
        std::cout << (a.pass ? "[PASS] " : "[FAIL] ") << a.claim_id
                  << " measured=" << unlearn::fmt_double(a.measured)
                  << " bound=" << unlearn::fmt_double(a.bound) << "\n";
        if (!a.pass) ++failures;
    }
    return failures;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiment harness for gradient-based unlearning studies"};
    app.require_subcommand(1);

    std::string scenario, config_path, out_dir;
    bool seed_given = false;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "run a scenario and write its report");
    run->add_option("scenario", scenario, "scenario name")->required();
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--seed", seed, "override the random seed")->each([&](const std::string&) {
        seed_given = true;
    });
    run->add_option("--out", out_dir, "output directory (default: $UNLEARN_LAB_OUT or ./runs)");

    std::string verify_scenario = "all";
    auto* verify = app.add_subcommand("verify", "run assertion suites; nonzero exit on failure");
    verify->add_option("scenario", verify_scenario, "scenario name or 'all'");
    verify->add_option("--config", config_path, "JSON config file");
    verify->add_option("--seed", seed, "override the random seed")->each([&](const std::string&) {
        seed_given = true;
    });

    auto* list = app.add_subcommand("list", "enumerate available scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : unlearn::list_scenarios()) std::cout << name << "\n";
            return 0;
        }
        if (run->parsed()) {
            unlearn::ScenarioConfig cfg = config_from_file(scenario, config_path);
            if (seed_given) cfg.seed = seed;
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            if (cfg.output_dir.empty()) {
                cfg.output_dir =
                    (std::filesystem::path(default_output_base()) / cfg.name).string();
            }
            const auto report = unlearn::run_scenario(cfg);
            const int failures = print_assertions(report);
            std::cout << "report written to "
                      << (std::filesystem::path(cfg.output_dir) / "report.json").string() << "\n";
            if (failures > 0) {
                std::cout << failures << " assertion(s) failed (see report)\n";
            }
            return 0;
        }
        // verify
        std::vector<std::string> names;
        if (verify_scenario == "all") {
            names = unlearn::list_scenarios();
        } else {
            names.push_back(unlearn::canonical_scenario_name(verify_scenario));
        }
        int failures = 0;
        for (const auto& name : names) {
            unlearn::ScenarioConfig cfg = config_from_file(name, config_path);
            if (seed_given) cfg.seed = seed;
            cfg.output_dir.clear();
            std::cout << "== " << name << " ==\n";
            failures += print_assertions(unlearn::run_scenario(cfg));
        }
        if (failures > 0) {
            std::cerr << failures << " assertion(s) failed\n";
            return 1;
        }
        std::cout << "all assertions passed\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
