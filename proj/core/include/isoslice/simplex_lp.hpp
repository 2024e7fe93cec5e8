#pragma once

#include "isoslice/linalg.hpp"

namespace isoslice {

struct LpResult {
    bool feasible = false;
    double objective = 0.0;
    Vec x;
};

/// min c^T x  s.t.  A x = b, x >= 0.  Dense two-phase simplex with Bland's
/// rule; sized for the tiny systems that show up here (rows <= 6).
LpResult solve_lp_standard(const Mat& A, const Vec& b, const Vec& c);

/// Minkowski gauge of conv(columns of P) at x, for a hull with the origin in
/// its interior (symmetric hulls list both v and -v):
/// gauge(x) = min { 1^T c : P c = x, c >= 0 }.
/// Returns +inf when x is outside the cone spanned by the columns.
double vpoly_gauge(const Mat& P, const Vec& x);

}  // namespace isoslice
