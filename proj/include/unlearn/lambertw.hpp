#pragma once

namespace unlearn {

// Real branches of the Lambert W function, i.e. solutions w of w*exp(w) = z.
//
//   Principal: defined for z >= -1/e, returns the branch with w >= -1.
//   Minus1:    defined for -1/e <= z < 0, returns the branch with w <= -1.
//
// Inputs outside the branch domain raise std::domain_error. Arguments that
// undershoot -1/e by at most 1e-12 (in relative terms) are treated as the
// branch point itself, so callers evaluating analytic expressions right at
// the boundary are not tripped up by rounding.
//
// Accuracy target: |w*exp(w) - z| <= 1e-12 * max(1, |z|) over both branches.
enum class WBranch { Principal, Minus1 };

double lambert_w(double z, WBranch branch);

// Convenience wrappers.
double lambert_w0(double z);
double lambert_wm1(double z);

} // namespace unlearn
