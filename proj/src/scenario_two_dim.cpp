#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "scenario_common.hpp"
#include "unlearn/analytic.hpp"
#include "unlearn/format.hpp"
#include "unlearn/optimizers.hpp"

namespace unlearn {
namespace {

struct DaSolve2d {
    double x = 0.0, y = 0.0;
    bool converged = false;
    long iters = 0;
};

// Descent on the two-coordinate descent-ascent objective in the underlying
// weights (w1, w2), margins x = w1 + eps*w2 (retain), y = eps*w1 + w2 (forget).
DaSolve2d solve_da_2d(const TwoDimSystem& sys, double eta, long max_iters, double grad_tol,
                      double w1_init, double w2_init) {
    const double a_r = static_cast<double>(sys.r_ij) / static_cast<double>(sys.total_retain);
    const double a_f = sys.alpha * static_cast<double>(sys.r_ij) /
                       static_cast<double>(sys.total_forget);
    const double eps = sys.epsilon;
    const double lambda = sys.lambda;
    Objective obj{
        [=](const std::vector<double>& w) {
            const double x = w[0] + eps * w[1];
            const double y = eps * w[0] + w[1];
            return a_r * std::exp(-x) - a_f * std::exp(-y) +
                   0.5 * lambda * (w[0] * w[0] + w[1] * w[1]);
        },
        [=](const std::vector<double>& w) {
            const double ex = std::exp(-(w[0] + eps * w[1]));
            const double ey = std::exp(-(eps * w[0] + w[1]));
            return std::vector<double>{-a_r * ex + a_f * eps * ey + lambda * w[0],
                                       -a_r * eps * ex + a_f * ey + lambda * w[1]};
        },
    };
    SolverConfig cfg;
    cfg.eta = eta;
    cfg.max_iters = max_iters;
    cfg.grad_tol = grad_tol;
    StationaryReport rep = gradient_descent(obj, {w1_init, w2_init}, cfg);
    DaSolve2d out;
    out.converged = rep.status == SolveStatus::Converged;
    out.iters = rep.iters;
    out.x = rep.w_star[0] + eps * rep.w_star[1];
    out.y = eps * rep.w_star[0] + rep.w_star[1];
    return out;
}

AlphaRegionTable region_table(const std::vector<double>& eps_grid, long nr, long nf,
                              double lambda) {
    AlphaRegionTable table;
    for (double eps : eps_grid) table.rows.push_back(alpha_thresholds_2d(eps, nr, nf, lambda));
    return table;
}

} // namespace

ExperimentReport run_two_dim_region(const ScenarioConfig& raw) {
    const ScenarioConfig cfg = resolve_config(raw);
    const auto& p = cfg.params;
    const long r_ij = p.at("r_ij").get<long>();
    const long nr = p.at("retain_total").get<long>();
    const long nf = p.at("forget_total").get<long>();
    const long nf_cmp = p.at("comparison_forget_total").get<long>();
    const double lambda = p.at("lambda").get<double>();
    const double eps_step = p.at("epsilon_step").get<double>();
    const auto gs_eps_grid = p.at("gs_epsilon_grid").get<std::vector<double>>();
    const auto gs_alpha_grid = p.at("gs_alpha_grid").get<std::vector<double>>();
    const auto chain_eps = p.at("chain_epsilons").get<std::vector<double>>();
    const long gs_max_iters = p.at("gs").at("max_iters").get<long>();
    const double gs_tol = p.at("gs").at("grad_tol").get<double>();
    const double da_eta = p.at("da_numeric").at("eta").get<double>();
    const long da_max_iters = p.at("da_numeric").at("max_iters").get<long>();
    const double da_tol = p.at("da_numeric").at("grad_tol").get<double>();

    ExperimentReport report = detail::base_report(cfg);

    std::vector<double> eps_grid;
    for (int i = 1; static_cast<double>(i) * eps_step < 1.0 - 1e-9; ++i) {
        eps_grid.push_back(static_cast<double>(i) * eps_step);
    }

    const AlphaRegionTable table_main = region_table(eps_grid, nr, nf, lambda);
    const AlphaRegionTable table_cmp = region_table(eps_grid, nr, nf_cmp, lambda);
    report.add_table("alpha_region", table_main.to_csv());
    report.add_table("alpha_region_comparison", table_cmp.to_csv());

    long mid_empty = 0;
    for (const auto& row : table_main.rows) {
        if (row.epsilon >= 0.3 - 1e-9 && row.epsilon <= 0.7 + 1e-9 && !row.region_nonempty) {
            ++mid_empty;
        }
    }

    double min_width_gain = 1e300;
    long shared_rows = 0;
    for (std::size_t i = 0; i < table_main.rows.size(); ++i) {
        const auto& a = table_main.rows[i];
        const auto& b = table_cmp.rows[i];
        if (a.region_nonempty && b.region_nonempty) {
            ++shared_rows;
            const double gain =
                (a.alpha_r_gt_d - a.alpha_d_gt_da) - (b.alpha_r_gt_d - b.alpha_d_gt_da);
            min_width_gain = std::min(min_width_gain, gain);
        }
    }

    // fixed-point sweep over the (epsilon, alpha) grid
    SolverConfig gs_cfg;
    gs_cfg.max_iters = gs_max_iters;
    gs_cfg.grad_tol = gs_tol;

    std::string gs_csv =
        "epsilon,alpha,x,y,iters,residual,in_bounds,y_le_x,"
        "x_nondecreasing_after_first,y_nonincreasing_after_first,"
        "x_nonincreasing_after_first,y_nondecreasing_after_first\n";
    double worst_residual = 0.0;
    long bounds_violations = 0;
    long y_le_x_violations = 0;
    long gs_not_converged = 0;
    for (double eps : gs_eps_grid) {
        for (double alpha : gs_alpha_grid) {
            const TwoDimSystem sys = make_two_dim_system(eps, alpha, r_ij, nr, nf, lambda);
            const GaussSeidelResult gs = gauss_seidel_2d(sys, gs_cfg);
            if (!gs.converged) ++gs_not_converged;
            worst_residual = std::max(worst_residual, gs.residual);
            const Bounds2d box = pretrain_2d_bounds(sys);
            const bool in_bounds = gs.x >= box.x_lo - 1e-9 && gs.x <= box.x_hi + 1e-9 &&
                                   gs.y >= box.y_lo - 1e-9 && gs.y <= box.y_hi + 1e-9;
            if (!in_bounds) ++bounds_violations;
            const bool y_le_x = gs.y <= gs.x + 1e-12;
            if (!y_le_x) ++y_le_x_violations;

            bool x_nondec = true, y_noninc = true, x_noninc = true, y_nondec = true;
            for (std::size_t k = 1; k + 1 < gs.trajectory.size(); ++k) {
                const auto& cur = gs.trajectory[k];
                const auto& nxt = gs.trajectory[k + 1];
                if (nxt.first < cur.first - 1e-15) x_nondec = false;
                if (nxt.second > cur.second + 1e-15) y_noninc = false;
                if (nxt.first > cur.first + 1e-15) x_noninc = false;
                if (nxt.second < cur.second - 1e-15) y_nondec = false;
            }
            gs_csv += fmt_double(eps) + "," + fmt_double(alpha) + "," + fmt_double(gs.x) + "," +
                      fmt_double(gs.y) + "," + std::to_string(gs.iters) + "," +
                      fmt_double(gs.residual) + "," + fmt_bool(in_bounds) + "," +
                      fmt_bool(y_le_x) + "," + fmt_bool(x_nondec) + "," + fmt_bool(y_noninc) +
                      "," + fmt_bool(x_noninc) + "," + fmt_bool(y_nondec) + "\n";
        }
    }
    report.add_table("gs_grid", gs_csv);

    // full ordering chain at sampled in-band points
    std::string chain_csv =
        "epsilon,alpha,x_R,x_D,x_DA,y_R,y_D,y_DA,min_margin,da_converged,"
        "x_hi_da_valid,x_hi_da,y_hi_da_valid,y_hi_da\n";
    double chain_min_margin = 1e300;
    long chain_da_failures = 0;
    long chain_rows = 0;
    for (double eps : chain_eps) {
        const AlphaRegionRow row = alpha_thresholds_2d(eps, nr, nf, lambda);
        if (!row.region_nonempty) continue;
        ++chain_rows;
        const double alpha = 0.5 * (row.alpha_d_gt_da + row.alpha_r_gt_d);
        const TwoDimSystem sys = make_two_dim_system(eps, alpha, r_ij, nr, nf, lambda);
        const Retrain2d rt = retrain_2d(sys);
        const GaussSeidelResult gs = gauss_seidel_2d(sys, gs_cfg);
        const double denom = 1.0 - eps * eps;
        const double w1 = (gs.x - eps * gs.y) / denom;
        const double w2 = (gs.y - eps * gs.x) / denom;
        const DaSolve2d da = solve_da_2d(sys, da_eta, da_max_iters, da_tol, w1, w2);
        if (!da.converged) ++chain_da_failures;
        const double margins[4] = {rt.x - gs.x, gs.x - da.x, rt.y - gs.y, gs.y - da.y};
        double mm = 1e300;
        for (double m : margins) mm = std::min(mm, m);
        chain_min_margin = std::min(chain_min_margin, mm);
        const DaUpper2d up = da_2d_upper(sys);
        chain_csv += fmt_double(eps) + "," + fmt_double(alpha) + "," + fmt_double(rt.x) + "," +
                     fmt_double(gs.x) + "," + fmt_double(da.x) + "," + fmt_double(rt.y) + "," +
                     fmt_double(gs.y) + "," + fmt_double(da.y) + "," + fmt_double(mm) + "," +
                     fmt_bool(da.converged) + "," + fmt_bool(up.x_valid) + "," +
                     (up.x_valid ? fmt_double(up.x_hi) : std::string()) + "," +
                     fmt_bool(up.y_valid) + "," +
                     (up.y_valid ? fmt_double(up.y_hi) : std::string()) + "\n";
    }
    report.add_table("chain", chain_csv);

    report.notes.push_back(
        "observed fixed-point sweep directions on this grid: after the first sweep x is "
        "nonincreasing and y is nondecreasing toward the solution (see gs_grid columns)");

    report.assert_that("two_dim.band_nonempty_mid_eps", mid_empty == 0,
                       static_cast<double>(mid_empty), 0.0);
    report.assert_that("two_dim.band_widens_with_forget",
                       shared_rows > 0 && min_width_gain > 0.0, min_width_gain, 0.0);
    report.assert_that("two_dim.gs_converged", gs_not_converged == 0,
                       static_cast<double>(gs_not_converged), 0.0);
    report.assert_that("two_dim.gs_residual", worst_residual <= 1e-8, worst_residual, 1e-8);
    report.assert_that("two_dim.gs_in_bounds", bounds_violations == 0,
                       static_cast<double>(bounds_violations), 0.0);
    report.assert_that("two_dim.gs_y_le_x", y_le_x_violations == 0,
                       static_cast<double>(y_le_x_violations), 0.0);
    report.assert_that("two_dim.chain_ordering",
                       chain_rows > 0 && chain_da_failures == 0 && chain_min_margin >= -1e-8,
                       chain_min_margin, 0.0);

    detail::maybe_write(report, cfg);
    return report;
}

} // namespace unlearn
