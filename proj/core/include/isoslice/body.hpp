#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isoslice/linalg.hpp"
#include "json.hpp"

namespace isoslice {

enum class BodyKind {
    Ball,
    Box,
    Cross,
    Lp,
    HPoly,
    VPoly,
    Ellipsoid,
    DensityInduced,
    Transformed,
    IntersectionBall,  // K ∩ r·D, produced by the perturbation pipelines
    SupportHull,       // conv of pieces given through their support functions
    Slice,             // K ∩ E viewed inside the subspace E
};

std::string body_kind_name(BodyKind k);

/// Oracle bundle behind a Body. Kernels are immutable and shared.
class BodyKernel {
  public:
    virtual ~BodyKernel() = default;
    virtual int dim() const = 0;
    virtual BodyKind kind() const = 0;

    /// Minkowski gauge ||x||_K (0 iff x = 0, 1-homogeneous).
    virtual double gauge(const Vec& x) const = 0;

    /// Closed-form support function, when one exists.
    virtual std::optional<double> support_closed(const Vec& theta) const {
        (void)theta;
        return std::nullopt;
    }
    /// Closed-form volume, when one exists.
    virtual std::optional<double> volume_closed() const { return std::nullopt; }
    /// Closed-form inscribed Euclidean radius, when one exists.
    virtual std::optional<double> in_radius_closed() const { return std::nullopt; }

    /// Vertex rows for polytopal kernels (all vertices, negatives included).
    virtual std::optional<Mat> vertex_rows() const { return std::nullopt; }
    /// Facet normal rows + offsets for polytopal kernels.
    virtual std::optional<std::pair<Mat, Vec>> facet_rows() const { return std::nullopt; }

    virtual std::string describe() const = 0;
};

/// Centrally symmetric convex body as a value type: a shared immutable
/// kernel plus lazily cached radii. Safe to copy and share across threads.
class Body {
  public:
    Body() = default;
    explicit Body(std::shared_ptr<const BodyKernel> kernel);

    bool valid() const { return kernel_ != nullptr; }
    int dim() const;
    BodyKind kind() const;
    std::string name() const;

    double gauge(const Vec& x) const;
    /// Support function h_K. Closed form where available, otherwise a
    /// maximization of <theta,u>·radial(u) over the pipeline direction set
    /// with local refinement (dims 2-3).
    double support(const Vec& theta) const;
    /// Radial function along theta (normalized internally): sup{r : r·θ ∈ K}.
    double radial(const Vec& theta) const;
    bool contains(const Vec& x, double tol = 1e-9) const;

    /// Tight axis-aligned bound: component i is h_K(e_i).
    Vec support_box() const;
    /// Euclidean outer radius bound (norm of the support box).
    double out_radius() const;
    /// Inscribed Euclidean ball radius (closed form, or min radial over the
    /// pipeline direction set for oracle kinds).
    double in_radius() const;

    std::optional<double> closed_volume() const;
    std::optional<Mat> vertex_rows() const { return kernel_->vertex_rows(); }
    std::optional<std::pair<Mat, Vec>> facet_rows() const { return kernel_->facet_rows(); }
    const BodyKernel& kernel() const { return *kernel_; }
    std::shared_ptr<const BodyKernel> kernel_ptr() const { return kernel_; }

    /// Image T(K) = {T x : x in K}. Closed-form kinds stay closed-form.
    Body transformed(const LinearMap& map) const;
    Body scaled(double s) const;
    /// Polar body; only kinds with closed-form duals are supported.
    Body polar() const;
    /// K ∩ r·D.
    Body intersect_ball(double radius) const;
    /// K ∩ E inside the subspace spanned by the orthonormal rows of `basis`.
    Body slice(const Mat& basis_rows) const;

    // --- factories ---
    static Body ball(int dim, double radius = 1.0);
    static Body box(Vec half_widths);
    static Body cube(int dim, double half_width = 1.0);
    static Body cross(Vec scale);
    static Body cross_unit(int dim);
    static Body lp_ball(int dim, double p, std::optional<Vec> scale = std::nullopt);
    static Body hpoly(Mat normal_rows, Vec offsets);
    static Body vpoly(Mat vertex_rows);
    static Body ellipsoid(Mat form);
    static Body ellipsoid(const Ellipsoid& e) { return ellipsoid(e.form()); }
    static Body support_hull(std::vector<Body> pieces);

    nlohmann::ordered_json to_json() const;
    static Body from_json(const nlohmann::json& j);

  private:
    struct RadiiCache;
    std::shared_ptr<const BodyKernel> kernel_;
    std::shared_ptr<RadiiCache> radii_;
};

}  // namespace isoslice
