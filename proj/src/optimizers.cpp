#include "unlearn/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "unlearn/format.hpp"
#include "unlearn/lambertw.hpp"

namespace unlearn {
namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

bool guard_tripped(const std::vector<double>& w, double guard) {
    for (double x : w) {
        if (!std::isfinite(x) || std::fabs(x) > guard) return true;
    }
    return false;
}

} // namespace

Objective make_exp_objective(const BlockDataset& data, ObjectiveKind kind, double lambda) {
    return {
        [data, kind, lambda](const std::vector<double>& w) { return loss_exp(w, data, kind, lambda); },
        [data, kind, lambda](const std::vector<double>& w) { return grad_exp(w, data, kind, lambda); },
    };
}

StationaryReport gradient_descent(const Objective& objective, std::vector<double> init,
                                  const SolverConfig& cfg) {
    StationaryReport report;
    std::vector<double> w = std::move(init);
    auto record = [&](long iter, const std::vector<double>& g) {
        if (cfg.record_trajectory) {
            report.trajectory.push_back({iter, w, objective.loss(w), inf_norm(g)});
        }
    };
    for (long k = 0; k <= cfg.max_iters; ++k) {
        if (guard_tripped(w, cfg.divergence_guard)) {
            report.status = SolveStatus::Diverged;
            report.w_star = w;
            report.iters = k;
            report.residual = std::numeric_limits<double>::infinity();
            return report;
        }
        std::vector<double> g = objective.grad(w);
        double gn = inf_norm(g);
        record(k, g);
        if (gn <= cfg.grad_tol) {
            report.status = SolveStatus::Converged;
            report.w_star = w;
            report.iters = k;
            report.residual = gn;
            return report;
        }
        if (k == cfg.max_iters) {
            report.status = SolveStatus::MaxIters;
            report.w_star = w;
            report.iters = k;
            report.residual = gn;
            return report;
        }
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= cfg.eta * g[j];
    }
    return report; // unreachable
}

StationaryReport iterative_da(const BlockDataset& data, double lambda, const SolverConfig& cfg,
                              std::vector<double> init) {
    if (!(lambda > 0.0)) throw std::invalid_argument("iterative_da: lambda must be > 0");
    const int d = data.dimension();
    if (init.empty()) init.assign(d, 0.0);
    if (static_cast<int>(init.size()) != d) {
        throw std::invalid_argument("iterative_da: init dimension mismatch");
    }
    const double nr = static_cast<double>(data.total_retain);
    const double nf = static_cast<double>(data.total_forget);

    StationaryReport report;
    std::vector<double> w = std::move(init);
    auto record = [&](long iter, double disp) {
        if (cfg.record_trajectory) {
            report.trajectory.push_back(
                {iter, w, loss_exp(w, data, ObjectiveKind::SimultaneousDA, 2.0 * lambda), disp / cfg.eta});
        }
    };
    record(0, 0.0);
    for (long k = 1; k <= cfg.max_iters; ++k) {
        double disp = 0.0;
        for (int j = 0; j < d; ++j) {
            const auto& blk = data.blocks[j];
            const double r = static_cast<double>(blk.retain_count) / nr;
            const double f = nf > 0.0 ? static_cast<double>(blk.forget_count) / nf : 0.0;
            const double w0 = w[j];
            double v = w0 + cfg.eta * (r * std::exp(-w0) - lambda * w0);
            v = v - cfg.eta * (f * std::exp(-v) + lambda * v);
            disp = std::max(disp, std::fabs(v - w0));
            w[j] = v;
        }
        if (guard_tripped(w, cfg.divergence_guard)) {
            report.status = SolveStatus::Diverged;
            report.w_star = w;
            report.iters = k;
            report.residual = std::numeric_limits<double>::infinity();
            return report;
        }
        record(k, disp);
        if (disp / cfg.eta <= cfg.grad_tol) {
            report.status = SolveStatus::Converged;
            report.w_star = w;
            report.iters = k;
            report.residual = disp / cfg.eta;
            return report;
        }
        if (k == cfg.max_iters) {
            report.status = SolveStatus::MaxIters;
            report.w_star = w;
            report.iters = k;
            report.residual = disp / cfg.eta;
        }
    }
    return report;
}

GaussSeidelResult gauss_seidel_2d(const TwoDimSystem& sys, const SolverConfig& cfg) {
    if (sys.alpha > 1.0) {
        throw std::invalid_argument("gauss_seidel_2d: requires alpha <= 1");
    }
    const double b = sys.b();
    const double eps = sys.epsilon;
    const double alpha = sys.alpha;
    const double c_x = b * (1.0 + eps * eps);
    const double c_y = b * alpha * (1.0 + eps * eps);

    auto residual_of = [&](double x, double y) {
        double rx = x - c_x * std::exp(-x) - 2.0 * b * alpha * eps * std::exp(-y);
        double ry = y - 2.0 * b * eps * std::exp(-x) - c_y * std::exp(-y);
        return std::max(std::fabs(rx), std::fabs(ry));
    };

    GaussSeidelResult out;
    double x = lambert_w0(b * (1.0 + eps) * (1.0 + eps));
    double y = x;
    out.trajectory.emplace_back(x, y);
    for (long k = 1; k <= cfg.max_iters; ++k) {
        const double c1 = 2.0 * b * eps * std::exp(-x);
        y = c1 + lambert_w0(c_y * std::exp(-c1));
        const double c2 = 2.0 * b * alpha * eps * std::exp(-y);
        x = c2 + lambert_w0(c_x * std::exp(-c2));
        out.trajectory.emplace_back(x, y);
        out.iters = k;
        out.residual = residual_of(x, y);
        if (out.residual <= cfg.grad_tol) {
            out.converged = true;
            break;
        }
    }
    out.x = x;
    out.y = y;
    return out;
}

std::string trajectory_csv(const StationaryReport& report) {
    std::string csv = "iter";
    const std::size_t d = report.trajectory.empty() ? 0 : report.trajectory.front().w.size();
    for (std::size_t j = 0; j < d; ++j) csv += ",w" + std::to_string(j);
    csv += ",loss,grad_norm\n";
    for (const auto& p : report.trajectory) {
        csv += std::to_string(p.iter);
        for (double v : p.w) csv += "," + fmt_double(v);
        csv += "," + fmt_double(p.loss) + "," + fmt_double(p.grad_norm) + "\n";
    }
    return csv;
}

} // namespace unlearn
