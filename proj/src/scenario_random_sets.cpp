#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "scenario_common.hpp"
#include "unlearn/format.hpp"
#include "unlearn/random_sets.hpp"

namespace unlearn {

ExperimentReport run_random_sets(const ScenarioConfig& raw) {
    const ScenarioConfig cfg = resolve_config(raw);
    const auto& p = cfg.params;
    const double pop = p.at("population_accuracy").get<double>();
    const auto sizes = p.at("forget_sizes").get<std::vector<long>>();
    const auto eps_grid = p.at("eps_grid").get<std::vector<double>>();
    const long trials = p.at("trials").get<long>();

    ExperimentReport report = detail::base_report(cfg);

    const GapStudy study = monte_carlo_gap(pop, sizes, eps_grid, trials, cfg.seed);
    report.add_table("gap_table", study.to_csv());

    std::string mean_csv = "forget_size,mean_forget_accuracy,population_accuracy\n";
    double worst_mean_excess = -1e300;
    for (const auto& [f, mean] : study.mean_accuracy_by_size) {
        mean_csv += std::to_string(f) + "," + fmt_double(mean) + "," + fmt_double(pop) + "\n";
        const double sigma =
            std::sqrt(pop * (1.0 - pop) / (static_cast<double>(f) * static_cast<double>(trials)));
        worst_mean_excess = std::max(worst_mean_excess, std::fabs(mean - pop) - 3.0 * sigma);
    }
    report.add_table("mean_accuracy", mean_csv);

    double worst_bound_excess = -1e300;
    for (const auto& c : study.cells) {
        const double slack =
            3.0 * std::sqrt(c.bound * (1.0 - c.bound) / static_cast<double>(c.trials));
        worst_bound_excess = std::max(worst_bound_excess, c.empirical_frequency - c.bound - slack);
    }

    // nonincreasing violation frequency in forget size at fixed eps, up to MC noise
    double worst_monotone_excess = -1e300;
    for (double eps : eps_grid) {
        const GapCell* prev = nullptr;
        for (const auto& c : study.cells) {
            if (c.eps != eps) continue;
            if (prev) {
                const double noise =
                    3.0 * (std::sqrt(prev->empirical_frequency *
                                     (1.0 - prev->empirical_frequency) /
                                     static_cast<double>(prev->trials)) +
                           std::sqrt(c.empirical_frequency * (1.0 - c.empirical_frequency) /
                                     static_cast<double>(c.trials)));
                worst_monotone_excess =
                    std::max(worst_monotone_excess,
                             c.empirical_frequency - prev->empirical_frequency - noise);
            }
            prev = &c;
        }
    }

    report.assert_that("random_sets.bound_holds", worst_bound_excess <= 0.0, worst_bound_excess,
                       0.0);
    report.assert_that("random_sets.unbiased_mean", worst_mean_excess <= 0.0, worst_mean_excess,
                       0.0);
    report.assert_that("random_sets.monotone_in_size", worst_monotone_excess <= 0.0,
                       worst_monotone_excess, 0.0);

    detail::maybe_write(report, cfg);
    return report;
}

} // namespace unlearn
