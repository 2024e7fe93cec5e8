#pragma once

#include <vector>

#include "isoslice/body.hpp"
#include "isoslice/directions.hpp"

namespace isoslice {

/// Vertices of {x : A x <= b} by enumerating row subsets (small dimensions;
/// throws when the combinatorics exceed a sanity cap).
Mat hpoly_vertices(const Mat& A, const Vec& b);

/// Exact volume of {x : A x <= b} via the recursive boundary decomposition
/// Vol = (1/d) Σ_i dist(0, H_i) · Vol_{d-1}(facet_i).
double hpoly_volume(const Mat& A, const Vec& b);

/// (d-1)-dimensional volume of each facet, in row order (0 for redundant rows).
Vec hpoly_facet_volumes(const Mat& A, const Vec& b);

/// Exact volume for bodies with facet descriptions (box/cross/hpoly and their
/// linear images).
double exact_polytope_volume(const Body& body);

/// Outer polytope approximation: one facet per direction, offset h_K(θ).
Body fit_hpoly(const Body& body, const DirectionSet& dirs);
/// Same, for K ∩ r·D: offsets are min(h_K(θ), r).
Body fit_hpoly_capped(const Body& body, double ball_radius, const DirectionSet& dirs);

/// First mixed volume against a polytope: V(K,1; C,n-1) = (1/n) ∫_{∂C} h_K(ν).
/// C must carry a facet description.
double mixed_volume_first(const Body& K, const Body& C);

/// Convex hull of pieces: an exact v-polytope when every piece has a vertex
/// description, otherwise a support-function hull oracle.
Body convex_hull_body(const std::vector<Body>& pieces);

}  // namespace isoslice
