#include "unlearn/lambertw.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace unlearn {
namespace {

constexpr double kBranchPoint = -0.36787944117144233; // -1/e
constexpr double kBranchClamp = 1e-12;

// One Halley step for f(w) = w*exp(w) - z.
double halley_step(double w, double z) {
    double ew = std::exp(w);
    double f = w * ew - z;
    double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0));
    return w - f / denom;
}

double halley(double w, double z) {
    for (int i = 0; i < 64; ++i) {
        double wn = halley_step(w, z);
        if (!std::isfinite(wn)) break;
        if (wn == w) return wn;
        double prev = w;
        w = wn;
        if (std::fabs(w - prev) <= 1e-16 * (1.0 + std::fabs(w))) {
            return halley_step(w, z);
        }
    }
    return w;
}

// Series around the branch point in p = sqrt(2*(e*z + 1)); the sign of the
// linear term selects the branch.
double branch_point_guess(double z, double sign) {
    double arg = 2.0 * (std::exp(1.0) * z + 1.0);
    double p = std::sqrt(arg > 0.0 ? arg : 0.0);
    return -1.0 + sign * p - p * p / 3.0 + sign * 11.0 * p * p * p / 72.0;
}

} // namespace

double lambert_w(double z, WBranch branch) {
    if (std::isnan(z)) throw std::domain_error("lambert_w: NaN argument");

    if (z < kBranchPoint) {
        if (z >= kBranchPoint * (1.0 + kBranchClamp)) {
            z = kBranchPoint;
        } else {
            throw std::domain_error("lambert_w: argument below -1/e: " + std::to_string(z));
        }
    }

    if (branch == WBranch::Principal) {
        if (z == 0.0) return 0.0;
        double w;
        if (z < kBranchPoint + 1e-5) {
            w = branch_point_guess(z, 1.0);
        } else if (z < 1.0) {
            w = std::fabs(z) < 0.5 ? z * std::exp(-z / 2.0) : 0.567 * z;
        } else {
            double l1 = std::log(z);
            if (l1 <= 1.0) {
                w = l1;
            } else {
                double l2 = std::log(l1);
                w = l1 - l2 + l2 / l1;
            }
        }
        return halley(w, z);
    }

    // Minus1 branch.
    if (z >= 0.0) {
        throw std::domain_error("lambert_w: Minus1 branch needs z in [-1/e, 0), got " + std::to_string(z));
    }
    double w;
    if (z < kBranchPoint + 1e-5) {
        w = branch_point_guess(z, -1.0);
    } else {
        double l1 = std::log(-z);
        double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    return halley(w, z);
}

double lambert_w0(double z) { return lambert_w(z, WBranch::Principal); }
double lambert_wm1(double z) { return lambert_w(z, WBranch::Minus1); }

} // namespace unlearn
