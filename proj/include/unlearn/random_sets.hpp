#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unlearn {

// min(1, 2 exp(-2 |F| eps^2)): probability bound on |Acc_F - Acc_T| >= eps
// when the forget set is drawn at random.
double hoeffding_bound(long forget_size, double eps);

// One Monte-Carlo cell: forget sets of a fixed size are drawn i.i.d. from a
// Bernoulli-correctness population with known accuracy, the accuracy gap is
// compared against each eps in the grid, and the violation frequency is
// recorded per eps.
struct GapCell {
    long forget_size = 0;
    double eps = 0.0;
    double bound = 0.0;
    double empirical_frequency = 0.0;
    long trials = 0;
};

struct GapStudy {
    std::vector<GapCell> cells;
    // mean forget-set accuracy across a size's trials, one entry per size
    std::vector<std::pair<long, double>> mean_accuracy_by_size;

    std::string to_csv() const; // forget_size,eps,bound,empirical_frequency,trials
};

// Draws `trials` forget sets of each size (each sample an independent
// Bernoulli with success probability population_accuracy), computes
// gap = |acc_forget - population_accuracy| per trial and reports, for each
// (forget_size, eps) pair, the fraction of trials with gap >= eps.
// Per-trial seeds derive from (master_seed, size index, trial index), so
// results are order-independent and reproducible.
GapStudy monte_carlo_gap(double population_accuracy, const std::vector<long>& forget_sizes,
                         const std::vector<double>& eps_grid, long trials,
                         std::uint64_t master_seed);

} // namespace unlearn
