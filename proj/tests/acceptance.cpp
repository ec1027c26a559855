// End-to-end acceptance gate: twelve numbered checks, one line each, exit
// code = number of failures. Checks 1-6 exercise the library directly;
// 7-12 drive full scenarios.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "unlearn/analytic.hpp"
#include "unlearn/datasets.hpp"
#include "unlearn/lambertw.hpp"
#include "unlearn/optimizers.hpp"
#include "unlearn/random_sets.hpp"
#include "unlearn/rng.hpp"
#include "unlearn/scenarios.hpp"

using namespace unlearn;

namespace {

int failures = 0;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

void line(int id, const std::string& label, bool pass, const std::string& detail) {
    std::printf("[%s] %02d %-28s %s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const Assertion* find_assertion(const ExperimentReport& r, const std::string& claim_id) {
    for (const auto& a : r.assertions) {
        if (a.claim_id == claim_id) return &a;
    }
    return nullptr;
}

bool assertions_pass(const ExperimentReport& r, const std::vector<std::string>& ids,
                     std::string& detail) {
    bool ok = true;
    for (const auto& id : ids) {
        const Assertion* a = find_assertion(r, id);
        if (!a) {
            detail += " missing:" + id;
            ok = false;
        } else if (!a->pass) {
            detail += " fail:" + id + "(measured=" + fmt(a->measured) + ")";
            ok = false;
        }
    }
    if (ok) detail += " all assertions pass";
    return ok;
}

ExperimentReport run_default(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    return run_scenario(cfg);
}

// scalar ridge exponential objective: coeff * e^{-w} + lambda/2 w^2
StationaryReport solve_scalar(double coeff, double lambda, double init) {
    Objective obj;
    obj.loss = [coeff, lambda](const std::vector<double>& w) {
        return coeff * std::exp(-w[0]) + 0.5 * lambda * w[0] * w[0];
    };
    obj.grad = [coeff, lambda](const std::vector<double>& w) {
        return std::vector<double>{-coeff * std::exp(-w[0]) + lambda * w[0]};
    };
    SolverConfig cfg;
    cfg.eta = 1.0 / (std::exp(1.0) * std::fabs(coeff) + 2.0 * lambda);
    cfg.max_iters = 5000000;
    cfg.grad_tol = 1e-10;
    return gradient_descent(obj, {init}, cfg);
}

void check_01_lambert_identity() {
    const double t0 = now_seconds();
    const double inv_e = std::exp(-1.0);
    double worst = 0.0;
    auto probe = [&](double z, WBranch branch) {
        const double w = lambert_w(z, branch);
        const double res = std::fabs(w * std::exp(w) - z) / std::max(1.0, std::fabs(z));
        worst = std::max(worst, res);
    };
    for (int i = 0; i < 2500; ++i) { // branch-point neighborhood to moderate z
        probe(-inv_e + 1e-13 + (20.0 + inv_e) * i / 2499.0, WBranch::Principal);
    }
    for (int i = 0; i < 2500; ++i) { // log-spaced large z
        probe(std::exp(3.0 + (std::log(1e12) - 3.0) * i / 2499.0), WBranch::Principal);
    }
    for (int i = 0; i < 5000; ++i) { // covers (-1/e, 0) densely via z = -e^{-t}
        probe(-std::exp(-(1.0 + 1e-5 + 26.0 * i / 4999.0)), WBranch::Minus1);
    }
    const double dt = now_seconds() - t0;
    line(1, "lambert_identity", worst <= 1e-12 && dt < 1.0,
         "points=10000 worst_residual=" + fmt(worst) + " runtime=" + fmt(dt) + "s");
}

void check_02_closed_form_agreement() {
    const double t0 = now_seconds();
    std::mt19937_64 rng(20240817);
    const double lambdas[3] = {0.01, 0.1, 1.0};
    int configs = 0;
    double worst = 0.0;
    for (int rep = 0; rep < 210; ++rep) {
        const long rj = 1 + static_cast<long>(uniform_below(rng, 50));
        const long nr = rj + static_cast<long>(uniform_below(rng, 500));
        const long nf = 1 + static_cast<long>(uniform_below(rng, nr));
        const Sizes1d sizes{nr, nf, nr + nf};
        const double fr = static_cast<double>(nf) / static_cast<double>(nr);
        const double alpha = (rep % 3 == 0) ? 0.0 : fr * uniform_unit(rng);
        const double lambda = lambdas[rep % 3];
        const auto cf = closed_form_1d({rj, alpha}, sizes, lambda);

        const double r = static_cast<double>(rj) / static_cast<double>(nr);
        const double cd = (1.0 + alpha) * static_cast<double>(rj) /
                          static_cast<double>(sizes.dataset_total);
        const double cda = r * (1.0 - alpha / fr);

        const auto num_d = solve_scalar(cd, lambda, 0.0);
        const auto num_r = solve_scalar(r, lambda, num_d.w_star[0]);
        const auto num_da = solve_scalar(cda, lambda, num_d.w_star[0]);
        worst = std::max(worst, std::fabs(num_d.w_star[0] - cf.w_pretrain));
        worst = std::max(worst, std::fabs(num_r.w_star[0] - cf.w_retrain));
        worst = std::max(worst, std::fabs(num_da.w_star[0] - *cf.da.w_min));
        ++configs;
    }
    const double dt = now_seconds() - t0;
    line(2, "closed_form_agreement", worst <= 1e-6 && dt < 60.0,
         "configs=" + std::to_string(configs) + " worst_err=" + fmt(worst) +
             " runtime=" + fmt(dt) + "s");
}

void check_03_ordering_band() {
    const Sizes1d sizes{100, 25, 125};
    const double lo = ordering_band_alpha_low(sizes);
    const double hi = da_case2_alpha_low(sizes);
    int rows = 0, violations = 0;
    for (int i = 0; i <= 49; ++i) {
        const double alpha = lo + (hi - lo) * i / 49.0;
        for (double lambda : {1.0, 0.3, 0.1, 0.03, 0.01}) {
            const auto cf = closed_form_1d({10, alpha}, sizes, lambda);
            ++rows;
            if (!cf.da.w_min || !divergence_holds(cf.w_pretrain, cf.w_retrain, *cf.da.w_min)) {
                ++violations;
            }
        }
    }
    line(3, "ordering_band", violations == 0,
         "band=[" + fmt(lo) + "," + fmt(hi) + "] rows=" + std::to_string(rows) +
             " violations=" + std::to_string(violations));
}

void check_04_distance_bounds() {
    std::mt19937_64 rng(77);
    double worst_excess = -1e300;
    for (int rep = 0; rep < 300; ++rep) {
        const long rj = 1 + static_cast<long>(uniform_below(rng, 50));
        const long nr = rj + static_cast<long>(uniform_below(rng, 900));
        const long nf = static_cast<long>(uniform_below(rng, nr + 1));
        const Sizes1d sizes{nr, nf, nr + nf};
        const double alpha = nf == 0 ? 0.0 : 3.0 * uniform_unit(rng);
        const double lambda = std::pow(10.0, -2.0 + 2.0 * uniform_unit(rng));
        const auto cf = closed_form_1d({rj, alpha}, sizes, lambda);
        const double measured = std::fabs(cf.w_pretrain - cf.w_retrain);
        worst_excess = std::max(worst_excess, measured - distance_growth_bound(alpha, sizes));
    }

    const Sizes1d sizes{100, 25, 125};
    double worst_eq = 0.0;
    for (double lambda : {1.0, 0.3, 0.1, 0.03, 0.01}) {
        const auto cf = closed_form_1d({10, 0.25}, sizes, lambda);
        const double measured = std::fabs(cf.w_retrain - *cf.da.w_min);
        const double bound = distance_unlearn_lower({10, 0.25}, sizes, lambda);
        worst_eq = std::max(worst_eq, std::fabs(measured - bound));
    }
    line(4, "distance_bounds", worst_excess <= 1e-12 && worst_eq <= 1e-9,
         "growth_excess=" + fmt(worst_excess) + " boundary_equality_err=" + fmt(worst_eq));
}

void check_05_lambda_trend() {
    const Sizes1d sizes{100, 25, 125};
    bool rd_nonincreasing = true, rda_increasing = true;
    double prev_rd = 1e300, prev_rda = -1e300;
    std::string seq;
    for (double lambda : {1.0, 0.3, 0.1, 0.03, 0.01}) {
        const auto cf = closed_form_1d({10, 0.25}, sizes, lambda);
        const double rd = std::fabs(cf.w_pretrain - cf.w_retrain);
        const double rda = std::fabs(cf.w_retrain - *cf.da.w_min);
        if (rd > prev_rd + 1e-15) rd_nonincreasing = false;
        if (rda <= prev_rda) rda_increasing = false;
        prev_rd = rd;
        prev_rda = rda;
        seq += " " + fmt(rda);
    }
    line(5, "lambda_trend", rd_nonincreasing && rda_increasing,
         "rd_nonincreasing=" + std::string(rd_nonincreasing ? "yes" : "no") +
             " rda_sequence:" + seq);
}

void check_06_step_order() {
    const BlockDataset data = make_block_dataset({{10, 1}, {90, 24}});
    const double lambda = 0.1;
    const double refs[2] = {lambert_w0((0.1 - 0.04) / (2.0 * lambda)),
                            lambert_w0((0.9 - 0.96) / (2.0 * lambda))};
    std::vector<double> gaps;
    double eta = 1e-2;
    for (int h = 0; h <= 3; ++h) {
        SolverConfig cfg;
        cfg.eta = eta;
        cfg.max_iters = 50000000;
        cfg.grad_tol = 1e-12;
        const auto rep = iterative_da(data, lambda, cfg);
        double gap = 0.0;
        for (int j = 0; j < 2; ++j) gap = std::max(gap, std::fabs(rep.w_star[j] - refs[j]));
        gaps.push_back(gap);
        eta /= 2.0;
    }
    bool ok = true;
    std::string ratios;
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
        const double ratio = gaps[i] / gaps[i + 1];
        if (!(ratio >= 3.5 && ratio <= 4.5)) ok = false;
        ratios += (i ? "," : "") + fmt(ratio);
    }
    line(6, "step_order_check", ok,
         "required per-halving gap shrink in [3.5,4.5], measured ratios=" + ratios);
}

void check_07_gauss_seidel_grid() {
    int cells = 0, conv_fail = 0, res_fail = 0, dir_fail = 0, box_fail = 0, yx_fail = 0;
    double worst_res = 0.0;
    for (int ie = 1; ie <= 9; ++ie) {
        for (int ia = 1; ia <= 10; ++ia) {
            const double eps = 0.1 * ie;
            const double alpha = 0.1 * ia;
            const auto sys = make_two_dim_system(eps, alpha, 1, 1000, 500, 0.01);
            SolverConfig cfg;
            cfg.max_iters = 100000;
            cfg.grad_tol = 1e-10;
            cfg.record_trajectory = true;
            const auto res = gauss_seidel_2d(sys, cfg);
            ++cells;
            if (!res.converged) ++conv_fail;
            worst_res = std::max(worst_res, res.residual);
            if (res.residual > 1e-8) ++res_fail;
            // required iterate directions after the first sweep: x rising,
            // y falling
            for (std::size_t k = 2; k < res.trajectory.size(); ++k) {
                const bool x_up = res.trajectory[k].first >= res.trajectory[k - 1].first - 1e-15;
                const bool y_down =
                    res.trajectory[k].second <= res.trajectory[k - 1].second + 1e-15;
                if (!x_up || !y_down) {
                    ++dir_fail;
                    break;
                }
            }
            const auto box = pretrain_2d_bounds(sys);
            if (res.x < box.x_lo - 1e-9 || res.x > box.x_hi + 1e-9 || res.y < box.y_lo - 1e-9 ||
                res.y > box.y_hi + 1e-9) {
                ++box_fail;
            }
            if (res.y > res.x + 1e-12) ++yx_fail;
        }
    }
    const bool ok = conv_fail == 0 && res_fail == 0 && dir_fail == 0 && box_fail == 0 &&
                    yx_fail == 0;
    line(7, "gauss_seidel_grid", ok,
         "cells=" + std::to_string(cells) + " worst_residual=" + fmt(worst_res) +
             " nonconverged=" + std::to_string(conv_fail) +
             " monotone(x_up,y_down)_fail=" + std::to_string(dir_fail) +
             " out_of_bounds=" + std::to_string(box_fail) +
             " y>x=" + std::to_string(yx_fail));
}

void check_08_alpha_region() {
    const auto report = run_default("two_dim_region");
    std::string detail;
    const bool ok = assertions_pass(
        report,
        {"two_dim.band_nonempty_mid_eps", "two_dim.band_widens_with_forget",
         "two_dim.chain_ordering"},
        detail);
    line(8, "alpha_region_and_chain", ok, detail);
}

void check_09_toy_counts() {
    const auto report = run_default("toy_landscape");
    std::string detail;
    const bool ok = assertions_pass(report,
                                    {"toy.pretrain_counts", "toy.retrain_counts",
                                     "toy.gda_true_counts", "toy.gda_differs_from_retrain"},
                                    detail);
    line(9, "toy_counting_outcomes", ok, detail);
}

void check_10_random_sets() {
    const double t0 = now_seconds();
    const auto study = monte_carlo_gap(0.9, {10, 100, 1000}, {0.05, 0.1, 0.2}, 10000, 404);
    double worst_excess = -1e300;
    for (const auto& cell : study.cells) {
        const double slack = 3.0 * std::sqrt(cell.bound * (1.0 - cell.bound) / 10000.0);
        worst_excess = std::max(worst_excess, cell.empirical_frequency - cell.bound - slack);
    }
    const double dt = now_seconds() - t0;
    line(10, "random_forget_concentration", worst_excess <= 0.0 && dt < 30.0,
         "cells=9 trials=10000 worst_excess_over_bound=" + fmt(worst_excess) +
             " runtime=" + fmt(dt) + "s");
}

void check_11_klom() {
    const double t0 = now_seconds();
    const auto report = run_default("klom_ensemble");
    std::string detail;
    bool ok = assertions_pass(report,
                              {"klom.baseline_below_tau0", "klom.retrain_below_tau0",
                               "klom.pretrain_forget_exceeds_validation"},
                              detail);
    const double dt = now_seconds() - t0;
    if (dt >= 300.0) ok = false;
    line(11, "klom_sanity", ok, detail + " runtime=" + fmt(dt) + "s");
}

void check_12_determinism() {
    bool ok = true;
    std::string detail;
    for (const auto& name : list_scenarios()) {
        const auto a = run_default(name);
        const auto b = run_default(name);
        const bool same = a.to_json_string() == b.to_json_string();
        if (!same) {
            ok = false;
            detail += " differs:" + name;
        }
    }
    if (ok) detail = " all 5 scenario reports byte-identical across reruns";
    line(12, "determinism", ok, detail);
}

} // namespace

int main() {
    check_01_lambert_identity();
    check_02_closed_form_agreement();
    check_03_ordering_band();
    check_04_distance_bounds();
    check_05_lambda_trend();
    check_06_step_order();
    check_07_gauss_seidel_grid();
    check_08_alpha_region();
    check_09_toy_counts();
    check_10_random_sets();
    check_11_klom();
    check_12_determinism();
    std::printf("%d of 12 checks passed\n", 12 - failures);
    return failures;
}
