#pragma once

#include <cstdint>
#include <vector>

#include "isoslice/body.hpp"
#include "isoslice/density.hpp"
#include "isoslice/estimate.hpp"
#include "isoslice/report.hpp"

namespace isoslice {

/// The norm ||x||_f = (∫_0^∞ f(r x) r^{n+1} dr)^{-1/(n+2)} of an even
/// density; +inf when f vanishes along the ray.
double gauge_f(const Density& f, const Vec& x);

/// The induced convex body K_f = {x : ||x||_f <= 1} as a Body whose gauge is
/// gauge_f (directional integrals are memoized behind a synchronized cache).
Body body_from_density(const Density& f);

/// One-dimensional non-increasing profile with g(0) = 1.
struct RadialProfile {
    std::function<double(double)> value;
    double radius = 0.0;     // support bound; +inf allowed with decay declared
    double decay_rate = 0.0;
    int decay_power = 1;
    bool log_concave = true;
    std::string name;

    static RadialProfile from_density(const Density& f, const Vec& theta);
};

struct MomentBounds {
    double lower = 0.0;  // n^{(n+2)/n} / (n+2)
    double ratio = 0.0;  // ∫ g t^{n+1} / (∫ g t^{n-1})^{(n+2)/n}
    double upper = 0.0;  // (n+1)! / ((n-1)!)^{(n+2)/n}
};

/// Moment sandwich for a non-increasing profile. The lower bound needs no
/// concavity; the upper bound applies to log-concave profiles only.
MomentBounds one_dim_moment_bounds(const RadialProfile& g, int n);

/// Distance between K_f and the support of a line-s-concave density with
/// s > n: measures the containment chain (n/(c2 s))·Supp ⊆ K_f ⊆ (1/c1)·Supp
/// and records the normalized distance d_G·n/s.
Report distance_support_check(const Density& f);

/// Compares L_f with L_{K_f} and verifies the polar-coordinate moment
/// identity ∫_{K_f} <x,y>² dx = (1/(n+2)) ∫ <x,y>² f on random directions y.
Report l_equivalence_check(const Density& f, std::int64_t n_samples = 100000,
                           std::uint64_t seed = 1);

/// Finite-family proxy for the worst-case constants: max L_f over the family
/// against max L_{K_f}; the ratio is bounded by the worst single-density
/// ratio.
Report ln_comparison_report(const std::vector<Density>& family,
                            std::int64_t n_samples = 100000, std::uint64_t seed = 1);

}  // namespace isoslice
