#pragma once

#include <cstdint>

#include "isoslice/body.hpp"
#include "isoslice/body_metrics.hpp"
#include "isoslice/constants.hpp"
#include "isoslice/density.hpp"
#include "isoslice/report.hpp"
#include "isoslice/sampling.hpp"

namespace isoslice {

/// Output of a perturbation run: the positioned input, the measured sphere
/// functionals, the perturbed body T and its quality figures.
struct PerturbationResult {
    Body positioned;
    double alpha = 0.0;
    double M = 0.0, M_star = 0.0, M_prime = 0.0;
    Body perturbed;
    Estimate L_T;
    Estimate d_G;        // optimal-scale gauge-ratio distance to the positioned body
    Estimate mass_ratio; // ∫F / Vol(core); > 1 since F ≡ 1 on the core
    nlohmann::ordered_json constants = nlohmann::ordered_json::object();
    std::string branch = "full";

    nlohmann::ordered_json to_json() const;
};

/// K ∩ (1/M')·D; the gauge is the max of the two gauges.
Body core_body(const Body& K, double m_prime);

/// The decaying density F = (1 - f_K)^{alpha·n} on K, where f_K interpolates
/// between the core K ∩ (1/M')·D and K. Line-s-concave with s = alpha·n;
/// F ≡ 1 on the core and 0 on ∂K away from the core.
Density build_F(const Body& K, double alpha);

/// Mass concentration of F: with alpha = c_alpha·M·M*, checks
/// ∫_K F < 2·Vol(K ∩ (1/M')·D) with a 3σ margin.
Report mass_concentration_check(const Body& K, double c_alpha,
                                std::int64_t n_samples = 100000, std::uint64_t seed = 1);

/// Full pipeline: isotropic positioning (the documented stand-in for the
/// l-position), sphere functionals, F, T = K_F, and the measured distance /
/// isotropic-constant figures.
PerturbationResult perturb_body(const Body& K, double c_alpha,
                                std::int64_t n_samples = 100000, std::uint64_t seed = 1);

}  // namespace isoslice
