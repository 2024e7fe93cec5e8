#pragma once

#include <cmath>

#include "json.hpp"

namespace isoslice {

/// Every tunable coefficient of the construction and every verification
/// threshold lives here, once, with its default. The CLI can override
/// entries from a JSON object; unknown keys are rejected.
struct Constants {
    // --- construction coefficients ---
    /// Main perturbation exponent: alpha = c_alpha · M · M*. The default
    /// 16e comes from the sufficient condition alpha + 1 > 4e · V1/V0 with
    /// V1/V0 <= 4·M·M*.
    double c_alpha = 16.0 * M_E;
    /// Near-origin pipeline exponent: alpha = c_near_origin · (1 + βδ/γ).
    double c_near_origin = 4.0 * M_E;
    /// Quasi pipeline exponent: alpha = c3_quasi · C / overlap.
    double c3_quasi = 8.0;
    /// Reference constant of the one-dimensional tail bound; the measured
    /// minimal value is reported alongside.
    double c1_tail = 3.0;

    // --- verification thresholds (pinned) ---
    double lem23_ratio_lo = 1.0 / 3.0;  // L_{K_f}/L_f window
    double lem23_ratio_hi = 3.0;
    double lt_lo = 0.2;  // isotropic constant window for perturbed bodies
    double lt_hi = 0.6;
    double dg_alpha_factor = 10.0;   // d_G <= factor · alpha
    double ball_dg_max = 1.05;       // d_G for the ball input
    double mass_sq_mprime_max = 10.0;  // E|x|²·(M')² ceiling
    double overlap_min = 0.5;        // ellipsoid-surrogate overlap floor
    double quasi_l_lo = 0.2;
    double quasi_l_hi = 0.8;
    double proj_cube_dg_max = 1.1;
    double lem51_factor = 3.0;       // Vol(K∩E)^{1/n} <= factor · L bound
    double lem22_spread_max = 2.0;   // stability spread of d_G·n/s
    double lem41_spread_max = 3.0;   // stability spread of the minimal tail constant
    double quasi_vs_convex_factor = 2.0;

    static const Constants& defaults();
    void apply_overrides(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

}  // namespace isoslice
