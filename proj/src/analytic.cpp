#include "unlearn/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "unlearn/format.hpp"
#include "unlearn/lambertw.hpp"

namespace unlearn {
namespace {

constexpr double kBranchPoint = -0.36787944117144233; // -1/e

void check_1d(BlockSpec1d block, Sizes1d sizes, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("analytic: lambda must be > 0");
    if (block.r_j < 1) throw std::invalid_argument("analytic: |R_j| must be >= 1");
    if (block.alpha < 0.0) throw std::invalid_argument("analytic: alpha must be >= 0");
    if (sizes.retain_total < 1) throw std::invalid_argument("analytic: |R| must be >= 1");
    if (sizes.dataset_total != sizes.retain_total + sizes.forget_total) {
        throw std::invalid_argument("analytic: |D| must equal |R| + |F|");
    }
    if (block.alpha > 0.0 && sizes.forget_total < 1) {
        throw std::invalid_argument("analytic: alpha > 0 needs a nonempty forget set");
    }
}

} // namespace

ClosedForm1d closed_form_1d(BlockSpec1d block, Sizes1d sizes, double lambda) {
    check_1d(block, sizes, lambda);
    const double rj = static_cast<double>(block.r_j);
    const double nr = static_cast<double>(sizes.retain_total);
    const double nf = static_cast<double>(sizes.forget_total);
    const double nd = static_cast<double>(sizes.dataset_total);

    ClosedForm1d out;
    out.w_pretrain = lambert_w0((1.0 + block.alpha) * rj / (lambda * nd));
    out.w_retrain = lambert_w0(rj / (lambda * nr));

    double u = rj / (lambda * nr);
    if (block.alpha > 0.0) u *= 1.0 - block.alpha * nr / nf;
    out.da.lambert_arg = u;
    if (u >= 0.0) {
        out.da.kind = DaCaseKind::UniqueMin;
        out.da.w_min = lambert_w0(u);
    } else if (u >= kBranchPoint * (1.0 + 1e-12)) {
        out.da.kind = DaCaseKind::MinAndMax;
        out.da.w_min = lambert_w0(u);
        out.da.w_max = lambert_wm1(u);
    } else {
        out.da.kind = DaCaseKind::NoMinimum;
    }
    return out;
}

double da_case2_alpha_low(Sizes1d sizes) {
    return static_cast<double>(sizes.forget_total) / static_cast<double>(sizes.retain_total);
}

double da_case2_alpha_high(BlockSpec1d block, Sizes1d sizes, double lambda) {
    const double nf = static_cast<double>(sizes.forget_total);
    const double nr = static_cast<double>(sizes.retain_total);
    return nf / nr + lambda * nf / (std::exp(1.0) * static_cast<double>(block.r_j));
}

double ordering_band_alpha_low(Sizes1d sizes) {
    const double nf = static_cast<double>(sizes.forget_total);
    const double nr = static_cast<double>(sizes.retain_total);
    const double nd = static_cast<double>(sizes.dataset_total);
    return nf * nf / (nr * (nf + nd));
}

bool divergence_holds(double w_pretrain, double w_retrain, double w_da) {
    return (w_da - w_pretrain) * (w_pretrain - w_retrain) >= 0.0;
}

double distance_growth_bound(double alpha, Sizes1d sizes) {
    return std::fabs(std::log((1.0 + alpha) * static_cast<double>(sizes.retain_total) /
                              static_cast<double>(sizes.dataset_total)));
}

double distance_unlearn_lower(BlockSpec1d block, Sizes1d sizes, double lambda) {
    check_1d(block, sizes, lambda);
    const double threshold = da_case2_alpha_low(sizes);
    if (block.alpha < threshold * (1.0 - 1e-12)) {
        throw std::domain_error("distance_unlearn_lower: needs alpha >= |F|/|R|");
    }
    return lambert_w0(static_cast<double>(block.r_j) /
                      (lambda * static_cast<double>(sizes.retain_total)));
}

Retrain2d retrain_2d(const TwoDimSystem& sys) {
    const double e2 = 1.0 + sys.epsilon * sys.epsilon;
    Retrain2d out;
    out.x = lambert_w0(e2 * static_cast<double>(sys.r_ij) /
                       (sys.lambda * static_cast<double>(sys.total_retain)));
    out.y = 2.0 * sys.epsilon / e2 * out.x;
    return out;
}

Bounds2d pretrain_2d_bounds(const TwoDimSystem& sys) {
    if (sys.alpha > 1.0) {
        throw std::invalid_argument("pretrain_2d_bounds: requires alpha <= 1");
    }
    const double b = sys.b();
    const double eps = sys.epsilon;
    const double e2 = 1.0 + eps * eps;
    Bounds2d out;
    out.x_lo = lambert_w0(b * (e2 + 2.0 * sys.alpha * eps));
    out.x_hi = 2.0 * eps / e2 * lambert_w0(sys.alpha * e2 * b) + lambert_w0(e2 * b);
    out.y_lo = lambert_w0(sys.alpha * e2 * b);
    out.y_hi = lambert_w0(b * (2.0 * eps + sys.alpha * e2));
    return out;
}

DaUpper2d da_2d_upper(const TwoDimSystem& sys) {
    const double eps = sys.epsilon;
    const double e2 = 1.0 + eps * eps;
    const double a_r = static_cast<double>(sys.r_ij) /
                       (sys.lambda * static_cast<double>(sys.total_retain));
    double a_f = 0.0;
    if (sys.alpha > 0.0) {
        if (sys.total_forget < 1) {
            throw std::invalid_argument("da_2d_upper: alpha > 0 needs a nonempty forget set");
        }
        a_f = sys.alpha * static_cast<double>(sys.r_ij) /
              (sys.lambda * static_cast<double>(sys.total_forget));
    }
    DaUpper2d out;
    out.x_arg = a_r * e2 - a_f * 2.0 * eps;
    out.y_arg = a_r * 2.0 * eps - a_f * e2;
    out.x_valid = out.x_arg >= kBranchPoint * (1.0 + 1e-12);
    out.y_valid = out.y_arg >= kBranchPoint * (1.0 + 1e-12);
    if (out.x_valid) out.x_hi = lambert_w0(out.x_arg);
    if (out.y_valid) out.y_hi = lambert_w0(out.y_arg);
    return out;
}

AlphaRegionRow alpha_thresholds_2d(double epsilon, long retain_total, long forget_total,
                                   double lambda) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("alpha_thresholds_2d: epsilon must lie strictly in (0,1)");
    }
    if (!(lambda > 0.0)) throw std::invalid_argument("alpha_thresholds_2d: lambda must be > 0");
    const double nr = static_cast<double>(retain_total);
    const double nf = static_cast<double>(forget_total);
    const double nd = nr + nf;
    const double e2 = epsilon * epsilon + 1.0;
    const double te = 2.0 * epsilon;

    AlphaRegionRow row;
    row.epsilon = epsilon;
    row.alpha_d_gt_da = std::max(e2 / te * nf * nf / (nr * (nd + nf)),
                                 te / e2 * nf * nd / (nr * (nd + nf)));

    const double u_r = lambert_w0(e2 / (lambda * nr));
    const double u_d = lambert_w0(e2 / (lambda * nd));
    const double dw = u_r - u_d;
    row.alpha_rx = nd * lambda * dw * std::exp(e2 * dw / te) / te;
    row.alpha_ry = te * (nd * lambda * std::exp(te * u_r / e2) * u_r - e2) / (e2 * e2);
    row.alpha_r_gt_d = std::min(row.alpha_rx, row.alpha_ry);
    row.region_nonempty = row.alpha_d_gt_da <= row.alpha_r_gt_d;
    return row;
}

std::string AlphaRegionTable::to_csv() const {
    std::string csv = "epsilon,alpha_d_gt_da,alpha_rx,alpha_ry,alpha_r_gt_d,region_nonempty\n";
    for (const auto& r : rows) {
        csv += fmt_double(r.epsilon) + "," + fmt_double(r.alpha_d_gt_da) + "," +
               fmt_double(r.alpha_rx) + "," + fmt_double(r.alpha_ry) + "," +
               fmt_double(r.alpha_r_gt_d) + "," + fmt_bool(r.region_nonempty) + "\n";
    }
    return csv;
}

} // namespace unlearn
