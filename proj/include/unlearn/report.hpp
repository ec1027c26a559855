#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace unlearn {

struct Assertion {
    std::string claim_id;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
};

// A scenario run: the resolved config, named CSV tables, and pass/fail
// assertions keyed by claim ids (see docs/claims.md). Serialization is
// fully ordered so a rerun with the same config and seed produces
// byte-identical output.
struct ExperimentReport {
    std::string scenario;
    nlohmann::ordered_json config_echo;
    std::vector<std::pair<std::string, std::string>> tables;
    std::vector<Assertion> assertions;
    std::vector<std::string> notes;

    void add_table(const std::string& name, const std::string& csv);
    void assert_that(const std::string& claim_id, bool pass, double measured, double bound);
    bool all_pass() const;

    nlohmann::ordered_json to_json() const;
    std::string to_json_string() const;

    // Writes report.json plus one <table>.csv per table into dir.
    void write(const std::string& dir) const;
};

// Structural check against the schema in docs/report.schema.json.
// Returns an empty string when valid, else a description of the violation.
std::string validate_report_json(const nlohmann::json& j);

} // namespace unlearn
