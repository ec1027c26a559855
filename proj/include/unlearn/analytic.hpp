#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unlearn/datasets.hpp"

namespace unlearn {

// Closed-form stationary points of the three 1D objectives on one block,
// all expressed through Lambert W.
//
// The descent-ascent objective has stationary points where
// w * e^w = u,  u = (1 - alpha |R|/|F|) * |R_j| / (lambda |R|):
//   u >= 0           -> a unique minimum at W0(u)
//   -1/e <= u < 0    -> two stationary points; the second derivative
//                       lambda * (1 + w) is positive at W0(u) >= -1 and
//                       negative at Wm1(u) <= -1, so w_min = W0(u) and
//                       w_max = Wm1(u)
//   u < -1/e         -> no stationary point at all (the objective has no
//                       local minima and descent diverges)
enum class DaCaseKind { UniqueMin, MinAndMax, NoMinimum };

struct DaCase {
    DaCaseKind kind = DaCaseKind::UniqueMin;
    std::optional<double> w_min; // W0 value when it exists
    std::optional<double> w_max; // Wm1 value, MinAndMax only
    double lambert_arg = 0.0;    // u above
};

struct BlockSpec1d {
    long r_j = 0;       // |R_j|
    double alpha = 0.0; // |F_j| / |R_j|
};

struct Sizes1d {
    long retain_total = 0;  // |R|
    long forget_total = 0;  // |F|
    long dataset_total = 0; // |D| = |R| + |F|
};

struct ClosedForm1d {
    double w_pretrain = 0.0; // W0((1+alpha) |R_j| / (lambda |D|))
    double w_retrain = 0.0;  // W0(|R_j| / (lambda |R|))
    DaCase da;
};

ClosedForm1d closed_form_1d(BlockSpec1d block, Sizes1d sizes, double lambda);

// Case boundaries in alpha for fixed block/sizes/lambda:
//   unique-min range ends at |F|/|R|; the two-point range ends at
//   |F|/|R| + lambda |F| / (e |R_j|).
double da_case2_alpha_low(Sizes1d sizes);
double da_case2_alpha_high(BlockSpec1d block, Sizes1d sizes, double lambda);

// Lower end of the alpha band on which the ordering test below is proven:
// |F|^2 / (|R| (|F| + |D|)).
double ordering_band_alpha_low(Sizes1d sizes);

// Sign test (w_DA - w_D) * (w_D - w_R) >= 0.
bool divergence_holds(double w_pretrain, double w_retrain, double w_da);

// |ln((1+alpha) |R| / |D|)|, an upper bound on |w_D - w_R|.
double distance_growth_bound(double alpha, Sizes1d sizes);

// W0(|R_j| / (lambda |R|)), a lower bound on |w_R - w_DA| valid for
// alpha >= |F|/|R|.
double distance_unlearn_lower(BlockSpec1d block, Sizes1d sizes, double lambda);

// 2D closed forms and bounds (coordinates x = w_i + eps w_j, y = eps w_i + w_j).
struct Retrain2d {
    double x = 0.0; // W0((1+eps^2) |R_ij| / (lambda |R|))
    double y = 0.0; // (2 eps / (1+eps^2)) * x
};

Retrain2d retrain_2d(const TwoDimSystem& sys);

struct Bounds2d {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
};

// Box guaranteed to contain the pretrain solution for alpha <= 1; with
// b = |R_ij| / (lambda |D|):
//   x_lo = W0(b ((1+eps^2) + 2 alpha eps))
//   x_hi = (2 eps / (1+eps^2)) W0(alpha (1+eps^2) b) + W0((1+eps^2) b)
//   y_lo = W0(alpha (1+eps^2) b)
//   y_hi = W0(b (2 eps + alpha (1+eps^2)))
Bounds2d pretrain_2d_bounds(const TwoDimSystem& sys);

// Upper bounds for the descent-ascent solution when it exists; the Lambert
// arguments can drop below -1/e for large alpha, in which case the
// corresponding flag is cleared (the no-minimum analog).
struct DaUpper2d {
    bool x_valid = false, y_valid = false;
    double x_hi = 0.0, y_hi = 0.0;
    double x_arg = 0.0, y_arg = 0.0;
};

DaUpper2d da_2d_upper(const TwoDimSystem& sys);

// Per-epsilon alpha thresholds bounding the regime where descent-ascent is
// provably detrimental: alpha_d_gt_da is the smallest alpha at which the
// pretrain point dominates the descent-ascent point in both coordinates,
// alpha_rx / alpha_ry the largest at which retraining dominates pretraining
// per coordinate. A nonempty [alpha_d_gt_da, alpha_r_gt_d] band yields the
// full ordering chain. Thresholds are evaluated in r_ij = 1 units.
struct AlphaRegionRow {
    double epsilon = 0.0;
    double alpha_d_gt_da = 0.0;
    double alpha_rx = 0.0;
    double alpha_ry = 0.0;
    double alpha_r_gt_d = 0.0; // min(alpha_rx, alpha_ry)
    bool region_nonempty = false;
};

AlphaRegionRow alpha_thresholds_2d(double epsilon, long retain_total, long forget_total,
                                   double lambda);

struct AlphaRegionTable {
    std::vector<AlphaRegionRow> rows;
    std::string to_csv() const;
};

} // namespace unlearn
