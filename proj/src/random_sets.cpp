#include "unlearn/random_sets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "unlearn/format.hpp"
#include "unlearn/rng.hpp"

namespace unlearn {

double hoeffding_bound(long forget_size, double eps) {
    if (forget_size < 1) throw std::invalid_argument("hoeffding_bound: forget_size must be >= 1");
    if (eps < 0.0) throw std::invalid_argument("hoeffding_bound: eps must be >= 0");
    const double f = static_cast<double>(forget_size);
    return std::min(1.0, 2.0 * std::exp(-2.0 * f * eps * eps));
}

GapStudy monte_carlo_gap(double population_accuracy, const std::vector<long>& forget_sizes,
                         const std::vector<double>& eps_grid, long trials,
                         std::uint64_t master_seed) {
    if (!(population_accuracy >= 0.0 && population_accuracy <= 1.0)) {
        throw std::invalid_argument("monte_carlo_gap: population_accuracy must lie in [0,1]");
    }
    if (trials < 1000) throw std::invalid_argument("monte_carlo_gap: trials must be >= 1000");

    GapStudy study;
    for (std::size_t si = 0; si < forget_sizes.size(); ++si) {
        const long f = forget_sizes[si];
        if (f < 1) throw std::invalid_argument("monte_carlo_gap: forget sizes must be >= 1");
        std::vector<long> violations(eps_grid.size(), 0);
        double acc_sum = 0.0;
        const std::uint64_t size_seed = derive_seed(master_seed, si);
        for (long t = 0; t < trials; ++t) {
            std::mt19937_64 rng(derive_seed(size_seed, static_cast<std::uint64_t>(t)));
            long correct = 0;
            for (long i = 0; i < f; ++i) {
                if (bernoulli(rng, population_accuracy)) ++correct;
            }
            const double acc_forget = static_cast<double>(correct) / static_cast<double>(f);
            acc_sum += acc_forget;
            const double gap = std::fabs(acc_forget - population_accuracy);
            for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
                if (gap >= eps_grid[ei]) ++violations[ei];
            }
        }
        for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
            GapCell cell;
            cell.forget_size = f;
            cell.eps = eps_grid[ei];
            cell.bound = hoeffding_bound(f, eps_grid[ei]);
            cell.empirical_frequency = static_cast<double>(violations[ei]) / static_cast<double>(trials);
            cell.trials = trials;
            study.cells.push_back(cell);
        }
        study.mean_accuracy_by_size.emplace_back(f, acc_sum / static_cast<double>(trials));
    }
    return study;
}

std::string GapStudy::to_csv() const {
    std::string csv = "forget_size,eps,bound,empirical_frequency,trials\n";
    for (const auto& c : cells) {
        csv += std::to_string(c.forget_size) + "," + fmt_double(c.eps) + "," + fmt_double(c.bound) +
               "," + fmt_double(c.empirical_frequency) + "," + std::to_string(c.trials) + "\n";
    }
    return csv;
}

} // namespace unlearn
