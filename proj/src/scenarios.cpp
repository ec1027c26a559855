#include "unlearn/scenarios.hpp"

#include <stdexcept>

namespace unlearn {

std::vector<std::string> list_scenarios() {
    return {"one_dim", "two_dim_region", "toy_landscape", "random_sets", "klom_ensemble"};
}

std::string canonical_scenario_name(const std::string& name) {
    if (name == "one_dim" || name == "OneDim") return "one_dim";
    if (name == "two_dim_region" || name == "TwoDimRegion") return "two_dim_region";
    if (name == "toy_landscape" || name == "ToyLandscape") return "toy_landscape";
    if (name == "random_sets" || name == "RandomSets") return "random_sets";
    if (name == "klom_ensemble" || name == "KlomEnsemble") return "klom_ensemble";
    throw std::invalid_argument("unknown scenario: " + name);
}

std::uint64_t default_seed(const std::string& name) {
    const std::string canon = canonical_scenario_name(name);
    if (canon == "one_dim") return 101;
    if (canon == "two_dim_region") return 202;
    if (canon == "toy_landscape") return 303;
    if (canon == "random_sets") return 404;
    return 505; // klom_ensemble
}

nlohmann::ordered_json default_params(const std::string& name) {
    const std::string canon = canonical_scenario_name(name);
    nlohmann::ordered_json p;
    if (canon == "one_dim") {
        p["r_j"] = 10;
        p["retain_total"] = 100;
        p["forget_total"] = 25;
        p["lambda_grid"] = {1.0, 0.3, 0.1, 0.03, 0.01};
        p["alpha_grid"] = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.6};
        p["numeric"] = {{"max_iters", 2000000}, {"grad_tol", 1e-10}};
        p["order_check"] = {{"lambda", 0.1}, {"alpha", 0.1}, {"eta0", 0.01}, {"halvings", 3}};
    } else if (canon == "two_dim_region") {
        p["r_ij"] = 1;
        p["retain_total"] = 1000;
        p["forget_total"] = 500;
        p["comparison_forget_total"] = 250;
        p["lambda"] = 0.01;
        p["epsilon_step"] = 0.05;
        p["gs_epsilon_grid"] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        p["gs_alpha_grid"] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
        p["chain_epsilons"] = {0.3, 0.5, 0.6, 0.7, 0.9};
        p["gs"] = {{"max_iters", 100000}, {"grad_tol", 1e-10}};
        p["da_numeric"] = {{"eta", 1.0}, {"max_iters", 2000000}, {"grad_tol", 1e-12}};
    } else if (canon == "toy_landscape") {
        p["lambda"] = 0.1;
        p["starts_a"] = 8;
        p["starts_b"] = 4;
        p["grid_min"] = -6.0;
        p["grid_max"] = 6.0;
        p["eta"] = 0.5;
        p["max_iters"] = 200000;
        p["grad_tol"] = 1e-10;
        p["dedup_radius"] = 1e-3;
    } else if (canon == "random_sets") {
        p["population_accuracy"] = 0.9;
        p["forget_sizes"] = {10, 100, 1000};
        p["eps_grid"] = {0.05, 0.1, 0.2};
        p["trials"] = 10000;
    } else { // klom_ensemble
        p["epsilon"] = 0.5;
        p["block_count"] = 4;
        p["block_retain"] = 20;
        p["pair_retain"] = 40;
        p["pair_forget"] = 8;
        p["lambda"] = 0.05;
        p["train"] = {{"eta", 0.5}, {"max_iters", 20000}, {"grad_tol", 1e-9}};
        p["n_models"] = 100;
        p["bins"] = 20;
        p["smoothing"] = 1e-4;
        p["tau0_factor"] = 3.0;
        p["unlearn"] = {{"eta", 0.1}, {"steps", 60}, {"checkpoint_every", 10}};
    }
    return p;
}

ScenarioConfig resolve_config(const ScenarioConfig& cfg) {
    ScenarioConfig out = cfg;
    out.name = canonical_scenario_name(cfg.name);
    if (out.seed == 0) out.seed = default_seed(out.name);
    nlohmann::ordered_json params = default_params(out.name);
    if (!cfg.params.is_null()) {
        if (!cfg.params.is_object()) {
            throw std::invalid_argument("scenario params must be a JSON object");
        }
        for (const auto& [key, value] : cfg.params.items()) {
            if (!params.contains(key)) {
                throw std::invalid_argument("unknown param '" + key + "' for scenario " + out.name);
            }
            params[key] = value;
        }
    }
    out.params = params;
    return out;
}

ExperimentReport run_scenario(const ScenarioConfig& cfg) {
    const std::string canon = canonical_scenario_name(cfg.name);
    if (canon == "one_dim") return run_one_dim(cfg);
    if (canon == "two_dim_region") return run_two_dim_region(cfg);
    if (canon == "toy_landscape") return run_toy_landscape(cfg);
    if (canon == "random_sets") return run_random_sets(cfg);
    return run_klom_ensemble(cfg);
}

} // namespace unlearn
