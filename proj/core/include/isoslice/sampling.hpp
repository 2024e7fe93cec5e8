#pragma once

#include <cstdint>
#include <utility>

#include "isoslice/body.hpp"
#include "isoslice/density.hpp"
#include "isoslice/directions.hpp"
#include "isoslice/estimate.hpp"

namespace isoslice {

struct SampleOptions {
    bool allow_rejection = true;
    bool allow_hit_and_run = true;
    /// Rejection is used when the acceptance ratio is at least this.
    double min_acceptance = 1e-3;
};

/// `count` points uniform in the body (rows). Rejection from the tight
/// support box when the acceptance ratio allows it, hit-and-run chains
/// otherwise (burn-in 10·dim², thinning dim²). Chunk-seeded: the result is
/// bit-identical for a given seed at any thread count.
Mat uniform_sample(const Body& body, std::int64_t count, std::uint64_t seed,
                   const SampleOptions& opts = {});

/// Volume: closed form where the kernel has one; polar-coordinate quadrature
/// of radial^n for density-induced bodies; bounding-box rejection ratio
/// otherwise.
Estimate volume(const Body& body, std::int64_t mc_trials = 200000, std::uint64_t seed = 1);

struct CovarianceMatrix {
    Mat matrix;
    std::string provenance;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;

    double max_asymmetry() const { return (matrix - matrix.transpose()).cwiseAbs().maxCoeff(); }
};

/// Covariance of the uniform measure on the body (Monte Carlo; polar
/// quadrature for density-induced bodies).
CovarianceMatrix covariance(const Body& body, std::int64_t n_samples, std::uint64_t seed);
/// Covariance of a density: importance sampling from the support body with
/// weights f when the support is bounded, radial quadrature otherwise.
CovarianceMatrix covariance(const Density& f, std::int64_t n_samples, std::uint64_t seed);

/// Total mass ∫ f.
Estimate density_mass(const Density& f, std::int64_t n_samples, std::uint64_t seed);

/// Isotropic constant of the uniform measure on K: the second moment of the
/// volume-normalized covariance-whitened image, det(Cov)^{1/2n} / Vol^{1/n}.
Estimate isotropic_constant_body(const Body& body, std::int64_t n_samples = 100000,
                                 std::uint64_t seed = 1);

/// Isotropic constant of a density: (f(0)/∫f)^{1/n} det(M)^{1/2n}.
Estimate isotropic_constant_density(const Density& f, std::int64_t n_samples = 100000,
                                    std::uint64_t seed = 1);

/// Volume-1 isotropic image and the map that produces it.
std::pair<LinearMap, Body> isotropic_transform(const Body& body,
                                               std::int64_t n_samples = 100000,
                                               std::uint64_t seed = 1);

struct NormFunctionals {
    double M = 0.0;        // sphere average of the gauge
    double M_star = 0.0;   // sphere average of the support function
    double M_prime = 0.0;  // lower weighted median of the gauge
    double grid_error = 0.0;
};

NormFunctionals norm_functionals(const Body& body, const SphereQuadrature& quad);
NormFunctionals norm_functionals(const Body& body);

/// Mean of fn over `count` draws from a chunk-seeded stream; deterministic
/// for a given seed at any thread count.
Estimate mc_mean(std::int64_t count, std::uint64_t seed,
                 const std::function<double(Rng&)>& fn);

/// Volume and covariance of a star-shaped body by polar-coordinate
/// quadrature: Vol = (1/n)∮ radial^n, Cov·Vol = (1/(n+2))∮ radial^{n+2} θθᵀ.
std::pair<Estimate, Mat> polar_volume_covariance(const Body& body);

}  // namespace isoslice
