#pragma once

#include <memory>

#include "isoslice/body.hpp"
#include "isoslice/directions.hpp"
#include "isoslice/estimate.hpp"

namespace isoslice {

/// Two gauge-ratio distances between bodies of the same dimension.
///
/// Absolute:     max(1, max_θ ||θ||_T/||θ||_K) · max(1, max_θ ||θ||_K/||θ||_T)
///               — penalizes pure rescaling (distance of K vs 2K is 2).
/// OptimalScale: max_θ r(θ) / min_θ r(θ) with r = ||θ||_K/||θ||_T
///               — the sandwich constant after the best common rescaling,
///               which is the natural quantity for perturbation pipelines.
enum class DistanceMode { Absolute, OptimalScale };

/// Gauge-ratio distance over a direction set (grid maxima, locally refined in
/// dims 2-3). std_error carries the grid-resolution term.
Estimate geometric_distance(const Body& K, const Body& T,
                            DistanceMode mode = DistanceMode::Absolute,
                            std::shared_ptr<const DirectionSet> dirs = nullptr);

/// Interpolation gauge between a core C ⊆ K and K:
///   f(x) = inf { t in [0,1] : x ∈ (1-t) C + t K },
/// evaluated as sup over directions θ of clamp((<x,θ> - h_C)/(h_K - h_C)),
/// with 0/0 -> 0. The direction set is K's facet normals (when it has any)
/// merged with a quasi-uniform grid; support tables are precomputed once.
class MinkowskiInterpolation {
  public:
    MinkowskiInterpolation(Body outer, Body core,
                           std::shared_ptr<const DirectionSet> dirs = nullptr);

    /// f(x); requires x ∈ K (within tol).
    double operator()(const Vec& x) const;

    const Body& outer() const { return outer_; }
    const Body& core() const { return core_; }
    int table_size() const { return static_cast<int>(h_outer_.size()); }

  private:
    Body outer_, core_;
    Mat dirs_;      // one direction per row
    Vec h_outer_;   // h_K on dirs_
    Vec h_core_;    // h_C on dirs_
    Vec inv_gap_;   // 1/(h_K - h_C), 0 where degenerate
};

/// One-shot form of the interpolation gauge.
double minkowski_interpolation_gauge(const Body& outer, const Body& core, const Vec& x);

}  // namespace isoslice
