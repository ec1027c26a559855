#include "unlearn/report.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace unlearn {

void ExperimentReport::add_table(const std::string& name, const std::string& csv) {
    tables.emplace_back(name, csv);
}

void ExperimentReport::assert_that(const std::string& claim_id, bool pass, double measured,
                                   double bound) {
    assertions.push_back({claim_id, pass, measured, bound});
}

bool ExperimentReport::all_pass() const {
    for (const auto& a : assertions) {
        if (!a.pass) return false;
    }
    return true;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["scenario"] = scenario;
    j["config_echo"] = config_echo;
    j["tables"] = nlohmann::ordered_json::object();
    for (const auto& [name, csv] : tables) j["tables"][name] = csv;
    j["assertions"] = nlohmann::ordered_json::array();
    for (const auto& a : assertions) {
        j["assertions"].push_back({{"claim_id", a.claim_id},
                                   {"pass", a.pass},
                                   {"measured", a.measured},
                                   {"bound", a.bound}});
    }
    j["notes"] = notes;
    return j;
}

std::string ExperimentReport::to_json_string() const { return to_json().dump(2) + "\n"; }

void ExperimentReport::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream out(fs::path(dir) / "report.json", std::ios::binary);
        if (!out) throw std::runtime_error("ExperimentReport::write: cannot open report.json");
        out << to_json_string();
    }
    for (const auto& [name, csv] : tables) {
        std::ofstream out(fs::path(dir) / (name + ".csv"), std::ios::binary);
        if (!out) throw std::runtime_error("ExperimentReport::write: cannot open " + name + ".csv");
        out << csv;
    }
}

std::string validate_report_json(const nlohmann::json& j) {
    if (!j.is_object()) return "report must be a JSON object";
    for (const char* key : {"scenario", "config_echo", "tables", "assertions", "notes"}) {
        if (!j.contains(key)) return std::string("missing key: ") + key;
    }
    if (!j["scenario"].is_string()) return "scenario must be a string";
    if (!j["config_echo"].is_object()) return "config_echo must be an object";
    if (!j["tables"].is_object()) return "tables must be an object";
    for (const auto& [name, value] : j["tables"].items()) {
        if (!value.is_string()) return "table " + name + " must be a CSV string";
    }
    if (!j["assertions"].is_array()) return "assertions must be an array";
    for (const auto& a : j["assertions"]) {
        if (!a.is_object()) return "assertion entries must be objects";
        if (!a.contains("claim_id") || !a["claim_id"].is_string()) {
            return "assertion missing string claim_id";
        }
        if (!a.contains("pass") || !a["pass"].is_boolean()) return "assertion missing boolean pass";
        if (!a.contains("measured") || !a["measured"].is_number()) {
            return "assertion missing numeric measured";
        }
        if (!a.contains("bound") || !a["bound"].is_number()) return "assertion missing numeric bound";
    }
    if (!j["notes"].is_array()) return "notes must be an array";
    for (const auto& n : j["notes"]) {
        if (!n.is_string()) return "notes entries must be strings";
    }
    return "";
}

} // namespace unlearn
