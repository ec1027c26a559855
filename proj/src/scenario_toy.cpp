#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "scenario_common.hpp"
#include "unlearn/format.hpp"
#include "unlearn/losses.hpp"
#include "unlearn/optimizers.hpp"

namespace unlearn {
namespace {

struct Counts {
    long correct = 0;
    long incorrect = 0;
};

// sigma > 1/2 predicts +1 (the boundary is a*x + b*x^2 = -1 in logit terms)
Counts classify(std::pair<double, double> theta, const DenseDataset& data) {
    Counts c;
    for (const auto& smp : data.samples) {
        if (smp.multiplicity <= 0.0) continue;
        const double z = theta.first * smp.features[0] + theta.second * smp.features[1];
        const int pred = sigmoid_shifted(z) > 0.5 ? 1 : -1;
        const long units = std::lround(smp.multiplicity);
        if (pred == smp.label) {
            c.correct += units;
        } else {
            c.incorrect += units;
        }
    }
    return c;
}

struct Minimum {
    double a = 0.0, b = 0.0, loss = 0.0;
};

std::vector<Minimum> multi_start_minima(const DenseDataset& data, double lambda, int starts_a,
                                        int starts_b, double lo, double hi, double eta,
                                        long max_iters, double grad_tol, double dedup_radius) {
    Objective obj{
        [&data, lambda](const std::vector<double>& w) {
            return loss_mse_sigmoid({w[0], w[1]}, data, lambda);
        },
        [&data, lambda](const std::vector<double>& w) {
            auto g = grad_mse_sigmoid({w[0], w[1]}, data, lambda);
            return std::vector<double>{g.first, g.second};
        },
    };
    SolverConfig cfg;
    cfg.eta = eta;
    cfg.max_iters = max_iters;
    cfg.grad_tol = grad_tol;

    std::vector<Minimum> minima;
    for (int ia = 0; ia < starts_a; ++ia) {
        for (int ib = 0; ib < starts_b; ++ib) {
            const double a0 = lo + (hi - lo) * static_cast<double>(ia) /
                                       static_cast<double>(starts_a - 1);
            const double b0 = lo + (hi - lo) * static_cast<double>(ib) /
                                       static_cast<double>(starts_b - 1);
            const StationaryReport rep = gradient_descent(obj, {a0, b0}, cfg);
            if (rep.status != SolveStatus::Converged) continue;
            const Minimum m{rep.w_star[0], rep.w_star[1], obj.loss(rep.w_star)};
            bool dup = false;
            for (auto& known : minima) {
                const double d = std::hypot(m.a - known.a, m.b - known.b);
                if (d <= dedup_radius) {
                    dup = true;
                    if (m.loss < known.loss) known = m;
                    break;
                }
            }
            if (!dup) minima.push_back(m);
        }
    }
    std::sort(minima.begin(), minima.end(),
              [](const Minimum& l, const Minimum& r) { return l.loss < r.loss; });
    return minima;
}

double encode_counts(Counts c) {
    return static_cast<double>(c.correct) + 0.01 * static_cast<double>(c.incorrect);
}

} // namespace

ExperimentReport run_toy_landscape(const ScenarioConfig& raw) {
    const ScenarioConfig cfg = resolve_config(raw);
    const auto& p = cfg.params;
    const double lambda = p.at("lambda").get<double>();
    const int starts_a = p.at("starts_a").get<int>();
    const int starts_b = p.at("starts_b").get<int>();
    const double lo = p.at("grid_min").get<double>();
    const double hi = p.at("grid_max").get<double>();
    const double eta = p.at("eta").get<double>();
    const long max_iters = p.at("max_iters").get<long>();
    const double grad_tol = p.at("grad_tol").get<double>();
    const double dedup = p.at("dedup_radius").get<double>();

    ExperimentReport report = detail::base_report(cfg);

    const DenseDataset base = make_toy_dataset();
    const DenseDataset d_pre = apply_objective_weights(base, ObjectiveKind::Pretrain_D);
    const DenseDataset d_ret = apply_objective_weights(base, ObjectiveKind::Retrain_R);
    const DenseDataset d_gda = apply_objective_weights(base, ObjectiveKind::SimultaneousDA);

    struct Row {
        std::string weighting;
        const DenseDataset* data;
    };
    const Row rows[3] = {{"pretrain", &d_pre}, {"retrain", &d_ret}, {"gda", &d_gda}};

    std::string csv =
        "weighting,a,b,loss,correct_own,incorrect_own,correct_true,incorrect_true,is_best\n";
    Counts best_own[3];
    Counts best_true[3];
    Minimum best_min[3];
    for (int k = 0; k < 3; ++k) {
        const auto minima = multi_start_minima(*rows[k].data, lambda, starts_a, starts_b, lo, hi,
                                               eta, max_iters, grad_tol, dedup);
        for (std::size_t i = 0; i < minima.size(); ++i) {
            const auto& m = minima[i];
            const Counts own = classify({m.a, m.b}, *rows[k].data);
            const Counts truth = classify({m.a, m.b}, d_ret);
            if (i == 0) {
                best_own[k] = own;
                best_true[k] = truth;
                best_min[k] = m;
            }
            csv += rows[k].weighting + "," + fmt_double(m.a) + "," + fmt_double(m.b) + "," +
                   fmt_double(m.loss) + "," + std::to_string(own.correct) + "," +
                   std::to_string(own.incorrect) + "," + std::to_string(truth.correct) + "," +
                   std::to_string(truth.incorrect) + "," + fmt_bool(i == 0) + "\n";
        }
    }
    report.add_table("minima", csv);

    const double sep = std::hypot(best_min[2].a - best_min[1].a, best_min[2].b - best_min[1].b);

    report.assert_that("toy.pretrain_counts",
                       best_own[0].correct == 13 && best_own[0].incorrect == 1,
                       encode_counts(best_own[0]), 13.01);
    report.assert_that("toy.retrain_counts",
                       best_own[1].correct == 11 && best_own[1].incorrect == 1,
                       encode_counts(best_own[1]), 11.01);
    report.assert_that("toy.gda_own_counts",
                       best_own[2].correct == 10 && best_own[2].incorrect == 0,
                       encode_counts(best_own[2]), 10.0);
    report.assert_that("toy.gda_true_counts",
                       best_true[2].correct == 10 && best_true[2].incorrect == 2,
                       encode_counts(best_true[2]), 10.02);
    report.assert_that("toy.gda_differs_from_retrain", sep > dedup, sep, dedup);

    detail::maybe_write(report, cfg);
    return report;
}

} // namespace unlearn
