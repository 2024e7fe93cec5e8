#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "isoslice/body.hpp"
#include "json.hpp"

namespace isoslice {

/// Declared concavity of a density. Indicator functions are s-concave for
/// every s and get their own tag.
enum class ConcavityClass { Indicator, SConcave, LogConcave, LineSConcave };

std::string concavity_name(ConcavityClass c);

/// Even non-negative density with a directional support-radius oracle.
/// Concavity is declared by the closed-form constructors, not inferred;
/// spot_check_density validates declarations numerically.
struct Density {
    int dim = 0;
    std::function<double(const Vec&)> eval;
    /// sup{r : f(r·θ) > 0} along unit θ; +inf allowed when decay is declared.
    std::function<double(const Vec&)> support_radius;
    double decay_rate = 0.0;  // f(r·θ) ≲ e^{-rate · r^power} when support is infinite
    int decay_power = 1;
    ConcavityClass concavity = ConcavityClass::LogConcave;
    double s_param = 0.0;  // for (Line)SConcave
    double f0 = 1.0;       // f(0)
    std::optional<Body> support;  // bounded support body, when known
    std::string name;
    /// Optional per-direction profile compiler: returns r ↦ f(r·θ) for a unit
    /// θ, so radial integrals can precompute direction-specific structure
    /// once instead of re-deriving it at every quadrature node.
    std::function<std::function<double(double)>(const Vec&)> radial_profile_factory;

    double operator()(const Vec& x) const { return eval(x); }
    bool bounded_support() const { return support.has_value(); }
};

/// Characteristic function of a body.
Density indicator_density(const Body& K);
/// (1 - ||x||_K)_+^s on K; s-concave with parameter s.
Density power_density(const Body& K, double s);
/// exp(-||x||_K); log-concave with full support.
Density exp_gauge_density(const Body& K);
/// exp(-x^T A x / 2) for A positive definite.
Density gaussian_density(const Mat& form);
/// Product of tent functions ∏ (2 - |x_i|)_+ (each factor the self-
/// convolution of the interval indicator).
Density triangle_product_density(int dim);

/// CLI-facing constructor: {"type": "indicator"|"power"|"exp-gauge"|
/// "gaussian"|"triangle-product", ...}.
Density density_from_json(const nlohmann::json& j);

struct DensitySpotCheck {
    bool even_ok = false;
    bool concavity_ok = false;
    double worst_evenness = 0.0;   // max relative |f(x)-f(-x)|
    double worst_concavity = 0.0;  // max relative violation along lines through 0
};

/// Randomized validation of the declared evenness/concavity class.
DensitySpotCheck spot_check_density(const Density& f, std::uint64_t seed, int triples = 1000);

/// ∫_0^∞ f(r·θ) r^k dr by adaptive quadrature on [0, R] with R from the
/// support radius or the declared decay.
double radial_moment(const Density& f, const Vec& theta, int k);

}  // namespace isoslice
