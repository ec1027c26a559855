#pragma once

#include <functional>
#include <string>
#include <vector>

#include "unlearn/datasets.hpp"
#include "unlearn/losses.hpp"

namespace unlearn {

struct SolverConfig {
    double eta = 0.1;
    long max_iters = 100000;
    double grad_tol = 1e-10;          // stopping residual (infinity norm)
    double divergence_guard = 1e6;    // abort when any |w_j| exceeds this
    bool record_trajectory = false;
};

enum class SolveStatus { Converged, MaxIters, Diverged };

struct TrajectoryPoint {
    long iter = 0;
    std::vector<double> w;
    double loss = 0.0;
    double grad_norm = 0.0;
};

struct StationaryReport {
    std::vector<double> w_star;
    double residual = 0.0; // final gradient norm (infinity norm)
    long iters = 0;
    SolveStatus status = SolveStatus::MaxIters;
    std::vector<TrajectoryPoint> trajectory; // filled when record_trajectory
};

struct Objective {
    std::function<double(const std::vector<double>&)> loss;
    std::function<std::vector<double>(const std::vector<double>&)> grad;
};

Objective make_exp_objective(const BlockDataset& data, ObjectiveKind kind, double lambda);

// Fixed-step descent w <- w - eta * grad(w) until the gradient infinity norm
// drops to grad_tol, max_iters runs out, or the divergence guard trips.
StationaryReport gradient_descent(const Objective& objective, std::vector<double> init,
                                  const SolverConfig& cfg);

// Alternating two-step update on block data: a full descent step on the
// retain loss with ridge, then an ascent step on the forget-average term,
// also with ridge. Per coordinate, with r_j = |R_j|/|R|, f_j = |F_j|/|F|:
//   w  <- w + eta * (r_j * e^{-w} - lambda * w)
//   w  <- w - eta * (f_j * e^{-w} + lambda * w)
// The report records composed per-pair iterates; residual is the per-pair
// displacement divided by eta (a gradient-scale quantity), and the loss
// column tracks the simultaneous objective with doubled ridge, whose
// stationary point this scheme approaches as eta -> 0.
// init defaults to zero; pass the pretrained solution for unlearning runs.
StationaryReport iterative_da(const BlockDataset& data, double lambda, const SolverConfig& cfg,
                              std::vector<double> init = {});

// Nonlinear Gauss-Seidel for the 2D pretrain stationarity system
//   x = b(1+eps^2) e^{-x} + 2 b alpha eps e^{-y}
//   y = 2 b eps e^{-x} + b alpha (1+eps^2) e^{-y}
// starting from the symmetric all-retain solution x0 = y0 = W0(b(1+eps)^2)
// and updating y from the current x, then x from the fresh y:
//   y <- c1 + W0(b alpha (1+eps^2) e^{-c1}),  c1 = 2 b eps e^{-x}
//   x <- c2 + W0(b (1+eps^2) e^{-c2}),        c2 = 2 b alpha eps e^{-y}
// residual is the larger violation of the two stationarity equations.
struct GaussSeidelResult {
    double x = 0.0;
    double y = 0.0;
    long iters = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<std::pair<double, double>> trajectory;
};

GaussSeidelResult gauss_seidel_2d(const TwoDimSystem& sys, const SolverConfig& cfg);

// CSV dump with columns iter, w..., loss, grad_norm.
std::string trajectory_csv(const StationaryReport& report);

} // namespace unlearn
