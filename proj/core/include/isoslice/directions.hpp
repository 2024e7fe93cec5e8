#pragma once

#include <functional>
#include <memory>

#include "isoslice/linalg.hpp"

namespace isoslice {

/// Finite set of unit directions used to realize suprema over the sphere.
/// Sets are closed under x -> -x so that centrally symmetric quantities come
/// out exactly even. `resolution` is the approximate covering radius in
/// radians, reported as the grid term of the error bound.
struct DirectionSet {
    int dim = 0;
    Mat points;  // one row per direction
    double resolution = 0.0;

    int size() const { return static_cast<int>(points.rows()); }
    Vec direction(int i) const { return points.row(i).transpose(); }

    /// Product angular grid (dims 2-3): `per_angle` nodes per angle.
    static DirectionSet angular_grid(int dim, int per_angle);
    /// Symmetrized low-discrepancy set (dims >= 2), `count` rounded up to even.
    static DirectionSet low_discrepancy(int dim, int count);

    /// Shared default set for one-shot suprema in this dimension.
    static std::shared_ptr<const DirectionSet> standard(int dim);
    /// Coarser shared set for inner-loop evaluation of oracle bodies.
    static std::shared_ptr<const DirectionSet> pipeline(int dim);
};

/// Locally maximizes g over the sphere near `seed` by golden-section sweeps
/// in spherical coordinates (dims 2-3; returns g(seed) unchanged otherwise).
double refine_sphere_max(const std::function<double(const Vec&)>& g, const Vec& seed,
                         double radius);

/// Quadrature for the rotation-invariant probability measure on S^{n-1}.
/// `sphere_area` records the constant between this measure and the surface
/// measure; `moment_defect` is the measured error of the identity
/// ∫ <x,e_i><x,e_j> dσ = δ_ij / n on this rule.
struct SphereQuadrature {
    int dim = 0;
    Mat points;
    Vec weights;  // sum to 1
    double sphere_area = 0.0;
    double moment_defect = 0.0;

    int size() const { return static_cast<int>(points.rows()); }
    Vec direction(int i) const { return points.row(i).transpose(); }

    /// Probability average of f over the sphere.
    double average(const std::function<double(const Vec&)>& f) const;
    /// Integral against the surface measure (average * sphere_area).
    double surface_integral(const std::function<double(const Vec&)>& f) const;

    static SphereQuadrature build(int dim, int level);
    static std::shared_ptr<const SphereQuadrature> standard(int dim);
};

/// Inverse standard normal CDF (Acklam's rational approximation with one
/// Halley correction); used to map low-discrepancy points to the sphere.
double inverse_normal_cdf(double p);

}  // namespace isoslice
