#include "isoslice/body.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "isoslice/directions.hpp"
#include "isoslice/simplex_lp.hpp"

namespace isoslice {

namespace {

void check_finite(const Vec& x, const char* where) {
    if (!x.allFinite()) throw std::invalid_argument(std::string(where) + ": non-finite input");
}

// Appends the negated rows and removes duplicates (exact within tol).
Mat symmetrize_rows(const Mat& rows, double tol = 1e-12) {
    Mat all(2 * rows.rows(), rows.cols());
    all.topRows(rows.rows()) = rows;
    all.bottomRows(rows.rows()) = -rows;
    std::vector<int> keep;
    for (int i = 0; i < all.rows(); ++i) {
        bool dup = false;
        for (int j : keep) {
            if ((all.row(i) - all.row(j)).cwiseAbs().maxCoeff() <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) keep.push_back(i);
    }
    Mat out(keep.size(), rows.cols());
    for (size_t i = 0; i < keep.size(); ++i) out.row(i) = all.row(keep[i]);
    return out;
}

class BallKernel final : public BodyKernel {
  public:
    BallKernel(int dim, double radius) : dim_(dim), radius_(radius) {
        if (dim < 1) throw std::invalid_argument("ball: dim must be positive");
        if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    }
    int dim() const override { return dim_; }
    BodyKind kind() const override { return BodyKind::Ball; }
    double gauge(const Vec& x) const override { return x.norm() / radius_; }
    std::optional<double> support_closed(const Vec& t) const override {
        return radius_ * t.norm();
    }
    std::optional<double> volume_closed() const override {
        return unit_ball_volume(dim_) * std::pow(radius_, dim_);
    }
    std::optional<double> in_radius_closed() const override { return radius_; }
    std::string describe() const override {
        std::ostringstream os;
        os << "ball:" << dim_;
        if (radius_ != 1.0) os << ":r=" << radius_;
        return os.str();
    }
    double radius() const { return radius_; }

  private:
    int dim_;
    double radius_;
};

class BoxKernel final : public BodyKernel {
  public:
    explicit BoxKernel(Vec half) : half_(std::move(half)) {
        if (half_.size() < 1 || half_.minCoeff() <= 0.0)
            throw std::invalid_argument("box: half widths must be positive");
    }
    int dim() const override { return static_cast<int>(half_.size()); }
    BodyKind kind() const override { return BodyKind::Box; }
    double gauge(const Vec& x) const override {
        return (x.cwiseQuotient(half_)).cwiseAbs().maxCoeff();
    }
    std::optional<double> support_closed(const Vec& t) const override {
        return t.cwiseAbs().dot(half_);
    }
    std::optional<double> volume_closed() const override {
        return std::pow(2.0, dim()) * half_.prod();
    }
    std::optional<double> in_radius_closed() const override { return half_.minCoeff(); }
    std::optional<Mat> vertex_rows() const override {
        int n = dim();
        Mat v(1 << n, n);
        for (int mask = 0; mask < (1 << n); ++mask)
            for (int i = 0; i < n; ++i) v(mask, i) = (mask >> i & 1) ? half_[i] : -half_[i];
        return v;
    }
    std::optional<std::pair<Mat, Vec>> facet_rows() const override {
        int n = dim();
        Mat nr = Mat::Zero(2 * n, n);
        for (int i = 0; i < n; ++i) {
            nr(2 * i, i) = 1.0 / half_[i];
            nr(2 * i + 1, i) = -1.0 / half_[i];
        }
        return std::make_pair(nr, Vec::Ones(2 * n));
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "box:" << dim();
        return os.str();
    }
    const Vec& half() const { return half_; }

  private:
    Vec half_;
};

class CrossKernel final : public BodyKernel {
  public:
    explicit CrossKernel(Vec scale) : scale_(std::move(scale)) {
        if (scale_.size() < 1 || scale_.minCoeff() <= 0.0)
            throw std::invalid_argument("cross: scale must be positive");
    }
    int dim() const override { return static_cast<int>(scale_.size()); }
    BodyKind kind() const override { return BodyKind::Cross; }
    double gauge(const Vec& x) const override {
        return (x.cwiseQuotient(scale_)).cwiseAbs().sum();
    }
    std::optional<double> support_closed(const Vec& t) const override {
        return (t.cwiseProduct(scale_)).cwiseAbs().maxCoeff();
    }
    std::optional<double> volume_closed() const override {
        return std::pow(2.0, dim()) * scale_.prod() / std::tgamma(dim() + 1.0);
    }
    std::optional<double> in_radius_closed() const override {
        return 1.0 / scale_.cwiseInverse().norm();
    }
    std::optional<Mat> vertex_rows() const override {
        int n = dim();
        Mat v = Mat::Zero(2 * n, n);
        for (int i = 0; i < n; ++i) {
            v(2 * i, i) = scale_[i];
            v(2 * i + 1, i) = -scale_[i];
        }
        return v;
    }
    std::optional<std::pair<Mat, Vec>> facet_rows() const override {
        int n = dim();
        Mat nr(1 << n, n);
        for (int mask = 0; mask < (1 << n); ++mask)
            for (int i = 0; i < n; ++i)
                nr(mask, i) = ((mask >> i & 1) ? 1.0 : -1.0) / scale_[i];
        return std::make_pair(nr, Vec::Ones(1 << n));
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "cross:" << dim();
        return os.str();
    }
    const Vec& scale() const { return scale_; }

  private:
    Vec scale_;
};

class LpKernel final : public BodyKernel {
  public:
    LpKernel(int dim, double p, Vec scale) : p_(p), scale_(std::move(scale)) {
        if (dim < 1 || scale_.size() != dim)
            throw std::invalid_argument("lp: bad dimension/scale");
        if (!(p >= 1.0)) throw std::invalid_argument("lp: need p >= 1");
        if (scale_.minCoeff() <= 0.0) throw std::invalid_argument("lp: scale must be positive");
    }
    int dim() const override { return static_cast<int>(scale_.size()); }
    BodyKind kind() const override { return BodyKind::Lp; }
    double gauge(const Vec& x) const override {
        double s = 0.0;
        for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / scale_[i], p_);
        return std::pow(s, 1.0 / p_);
    }
    std::optional<double> support_closed(const Vec& t) const override {
        if (p_ == 1.0) return (t.cwiseProduct(scale_)).cwiseAbs().maxCoeff();
        double q = p_ / (p_ - 1.0);
        double s = 0.0;
        for (int i = 0; i < t.size(); ++i) s += std::pow(std::abs(t[i]) * scale_[i], q);
        return std::pow(s, 1.0 / q);
    }
    std::optional<double> volume_closed() const override {
        int n = dim();
        double v = std::pow(2.0 * std::tgamma(1.0 + 1.0 / p_), n) / std::tgamma(1.0 + n / p_);
        return v * scale_.prod();
    }
    std::optional<double> in_radius_closed() const override {
        double smin = scale_.minCoeff();
        int n = dim();
        // unit lp ball contains r·D with r = n^{min(0, 1/2 - 1/p)}
        double r = p_ >= 2.0 ? 1.0 : std::pow(n, 0.5 - 1.0 / p_);
        return smin * r;
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "lp:" << dim() << ":p=" << p_;
        return os.str();
    }
    double p() const { return p_; }
    const Vec& scale() const { return scale_; }

  private:
    double p_;
    Vec scale_;
};

class HPolyKernel final : public BodyKernel {
  public:
    HPolyKernel(Mat normals, Vec offsets) {
        if (normals.rows() != offsets.size() || normals.rows() < 1)
            throw std::invalid_argument("hpoly: normals/offsets mismatch");
        if (offsets.minCoeff() <= 0.0)
            throw std::invalid_argument("hpoly: offsets must be positive (origin interior)");
        // Fold offsets into the normals, then symmetrize: rows of g with
        // gauge(x) = max <g_i, x>.
        Mat g(normals.rows(), normals.cols());
        for (int i = 0; i < normals.rows(); ++i) g.row(i) = normals.row(i) / offsets[i];
        grad_ = symmetrize_rows(g);
        // Bounded iff the gradients span all directions; checked cheaply via
        // positive definiteness of the Gram sum.
        Mat gram = grad_.transpose() * grad_;
        Eigen::SelfAdjointEigenSolver<Mat> es(gram);
        if (es.eigenvalues().minCoeff() <= 1e-12 * es.eigenvalues().maxCoeff())
            throw std::invalid_argument("hpoly: facets do not bound the body");
    }
    int dim() const override { return static_cast<int>(grad_.cols()); }
    BodyKind kind() const override { return BodyKind::HPoly; }
    double gauge(const Vec& x) const override {
        return std::max(0.0, (grad_ * x).maxCoeff());
    }
    std::optional<double> support_closed(const Vec& t) const override {
        // h_K = gauge of the polar hull of the facet gradients.
        return vpoly_gauge(grad_.transpose(), t);
    }
    std::optional<Mat> vertex_rows() const override { return std::nullopt; }
    std::optional<std::pair<Mat, Vec>> facet_rows() const override {
        return std::make_pair(grad_, Vec::Ones(grad_.rows()));
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "hpoly:" << dim() << ":m=" << grad_.rows();
        return os.str();
    }
    const Mat& gradients() const { return grad_; }

  private:
    Mat grad_;  // facet normals scaled so offsets are 1
};

class VPolyKernel final : public BodyKernel {
  public:
    explicit VPolyKernel(Mat vertices) {
        if (vertices.rows() < 1) throw std::invalid_argument("vpoly: no vertices");
        verts_ = symmetrize_rows(vertices);
        if (verts_.rows() < 2 * verts_.cols())
            throw std::invalid_argument("vpoly: too few vertices to have interior");
        Mat gram = verts_.transpose() * verts_;
        Eigen::SelfAdjointEigenSolver<Mat> es(gram);
        if (es.eigenvalues().minCoeff() <= 1e-12 * es.eigenvalues().maxCoeff())
            throw std::invalid_argument("vpoly: vertices do not span the space");
    }
    int dim() const override { return static_cast<int>(verts_.cols()); }
    BodyKind kind() const override { return BodyKind::VPoly; }
    double gauge(const Vec& x) const override { return vpoly_gauge(verts_.transpose(), x); }
    std::optional<double> support_closed(const Vec& t) const override {
        return (verts_ * t).maxCoeff();
    }
    std::optional<Mat> vertex_rows() const override { return verts_; }
    std::string describe() const override {
        std::ostringstream os;
        os << "vpoly:" << dim() << ":m=" << verts_.rows();
        return os.str();
    }
    const Mat& vertices() const { return verts_; }

  private:
    Mat verts_;
};

class EllipsoidKernel final : public BodyKernel {
  public:
    explicit EllipsoidKernel(Mat form) : shape_(std::move(form)) {
        inv_form_ = shape_.inv_sqrt_form() * shape_.inv_sqrt_form();
    }
    int dim() const override { return shape_.dim(); }
    BodyKind kind() const override { return BodyKind::Ellipsoid; }
    double gauge(const Vec& x) const override {
        return std::sqrt(std::max(0.0, x.dot(shape_.form() * x)));
    }
    std::optional<double> support_closed(const Vec& t) const override {
        return std::sqrt(std::max(0.0, t.dot(inv_form_ * t)));
    }
    std::optional<double> volume_closed() const override { return shape_.volume(); }
    std::optional<double> in_radius_closed() const override {
        Eigen::SelfAdjointEigenSolver<Mat> es(shape_.form());
        return 1.0 / std::sqrt(es.eigenvalues().maxCoeff());
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "ellipsoid:" << dim();
        return os.str();
    }
    const Ellipsoid& shape() const { return shape_; }

  private:
    Ellipsoid shape_;
    Mat inv_form_;
};

class TransformedKernel final : public BodyKernel {
  public:
    TransformedKernel(std::shared_ptr<const BodyKernel> base, LinearMap map)
        : base_(std::move(base)), map_(std::move(map)) {
        if (base_->dim() != map_.dim())
            throw std::invalid_argument("transformed: dimension mismatch");
    }
    int dim() const override { return base_->dim(); }
    BodyKind kind() const override { return BodyKind::Transformed; }
    double gauge(const Vec& x) const override { return base_->gauge(map_.apply_inverse(x)); }
    std::optional<double> support_closed(const Vec& t) const override {
        if (auto h = base_->support_closed(map_.matrix().transpose() * t)) return h;
        return std::nullopt;
    }
    std::optional<double> volume_closed() const override {
        if (auto v = base_->volume_closed()) return *v * std::abs(map_.det());
        return std::nullopt;
    }
    std::optional<Mat> vertex_rows() const override {
        if (auto v = base_->vertex_rows()) return *v * map_.matrix().transpose();
        return std::nullopt;
    }
    std::optional<std::pair<Mat, Vec>> facet_rows() const override {
        if (auto f = base_->facet_rows()) {
            return std::make_pair<Mat, Vec>(f->first * map_.inverse(), Vec(f->second));
        }
        return std::nullopt;
    }
    std::string describe() const override { return "transformed(" + base_->describe() + ")"; }
    const BodyKernel& base() const { return *base_; }
    const LinearMap& map() const { return map_; }
    std::shared_ptr<const BodyKernel> base_ptr() const { return base_; }

  private:
    std::shared_ptr<const BodyKernel> base_;
    LinearMap map_;
};

class IntersectionBallKernel final : public BodyKernel {
  public:
    IntersectionBallKernel(std::shared_ptr<const BodyKernel> base, double radius)
        : base_(std::move(base)), radius_(radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("intersect_ball: radius <= 0");
    }
    int dim() const override { return base_->dim(); }
    BodyKind kind() const override { return BodyKind::IntersectionBall; }
    double gauge(const Vec& x) const override {
        return std::max(base_->gauge(x), x.norm() / radius_);
    }
    std::optional<double> in_radius_closed() const override {
        if (auto r = base_->in_radius_closed()) return std::min(*r, radius_);
        return std::nullopt;
    }
    std::string describe() const override {
        std::ostringstream os;
        os << base_->describe() << "&ball(r=" << radius_ << ")";
        return os.str();
    }
    double radius() const { return radius_; }
    const BodyKernel& base() const { return *base_; }

  private:
    std::shared_ptr<const BodyKernel> base_;
    double radius_;
};

class SupportHullKernel final : public BodyKernel {
  public:
    explicit SupportHullKernel(std::vector<Body> pieces) : pieces_(std::move(pieces)) {
        if (pieces_.empty()) throw std::invalid_argument("support_hull: no pieces");
        for (const auto& p : pieces_)
            if (p.dim() != pieces_[0].dim())
                throw std::invalid_argument("support_hull: dimension mismatch");
    }
    int dim() const override { return pieces_[0].dim(); }
    BodyKind kind() const override { return BodyKind::SupportHull; }
    double support_exact(const Vec& t) const {
        double h = -std::numeric_limits<double>::infinity();
        for (const auto& p : pieces_) h = std::max(h, p.support(t));
        return h;
    }
    double gauge(const Vec& x) const override {
        // gauge(x) = sup_theta <x,theta> / h(theta); grid + local refinement.
        ensure_table();
        double nx = x.norm();
        if (nx == 0.0) return 0.0;
        const auto& set = *set_;
        int best = 0;
        double best_val = -1.0;
        for (int i = 0; i < set.size(); ++i) {
            double v = set.points.row(i).dot(x) / table_[i];
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        auto obj = [&](const Vec& th) { return th.dot(x) / support_exact(th); };
        if (dim() <= 3)
            best_val = std::max(best_val, refine_sphere_max(obj, set.direction(best),
                                                            2.0 * set.resolution));
        return std::max(best_val, 0.0);
    }
    std::optional<double> support_closed(const Vec& t) const override {
        return support_exact(t);
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "hull[" << pieces_.size() << "]:" << dim();
        return os.str();
    }

  private:
    void ensure_table() const {
        std::call_once(once_, [this]() {
            set_ = DirectionSet::pipeline(dim());
            table_.resize(set_->size());
            for (int i = 0; i < set_->size(); ++i) table_[i] = support_exact(set_->direction(i));
        });
    }
    std::vector<Body> pieces_;
    mutable std::once_flag once_;
    mutable std::shared_ptr<const DirectionSet> set_;
    mutable std::vector<double> table_;
};

class SliceKernel final : public BodyKernel {
  public:
    SliceKernel(std::shared_ptr<const BodyKernel> base, Mat basis_rows)
        : base_(std::move(base)), basis_(std::move(basis_rows)) {
        if (basis_.cols() != base_->dim())
            throw std::invalid_argument("slice: basis/body dimension mismatch");
        Mat g = basis_ * basis_.transpose() - Mat::Identity(basis_.rows(), basis_.rows());
        if (g.cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("slice: basis rows must be orthonormal");
    }
    int dim() const override { return static_cast<int>(basis_.rows()); }
    BodyKind kind() const override { return BodyKind::Slice; }
    double gauge(const Vec& y) const override {
        return base_->gauge(basis_.transpose() * y);
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "slice:" << dim() << "(" << base_->describe() << ")";
        return os.str();
    }

  private:
    std::shared_ptr<const BodyKernel> base_;
    Mat basis_;  // rows orthonormal, span E
};

}  // namespace

std::string body_kind_name(BodyKind k) {
    switch (k) {
        case BodyKind::Ball: return "ball";
        case BodyKind::Box: return "box";
        case BodyKind::Cross: return "cross";
        case BodyKind::Lp: return "lp";
        case BodyKind::HPoly: return "hpoly";
        case BodyKind::VPoly: return "vpoly";
        case BodyKind::Ellipsoid: return "ellipsoid";
        case BodyKind::DensityInduced: return "density-induced";
        case BodyKind::Transformed: return "transformed";
        case BodyKind::IntersectionBall: return "intersection";
        case BodyKind::SupportHull: return "support-hull";
        case BodyKind::Slice: return "slice";
    }
    return "?";
}

struct Body::RadiiCache {
    std::once_flag once;
    Vec support_box;
    double out_radius = 0.0;
    double in_radius = 0.0;
};

Body::Body(std::shared_ptr<const BodyKernel> kernel)
    : kernel_(std::move(kernel)), radii_(std::make_shared<RadiiCache>()) {
    if (!kernel_) throw std::invalid_argument("Body: null kernel");
}

int Body::dim() const { return kernel_->dim(); }
BodyKind Body::kind() const { return kernel_->kind(); }
std::string Body::name() const { return kernel_->describe(); }

double Body::gauge(const Vec& x) const {
    if (x.size() != dim()) throw std::invalid_argument("gauge: dimension mismatch");
    check_finite(x, "gauge");
    return kernel_->gauge(x);
}

double Body::support(const Vec& theta) const {
    if (theta.size() != dim()) throw std::invalid_argument("support: dimension mismatch");
    check_finite(theta, "support");
    double nt = theta.norm();
    if (nt == 0.0) throw std::invalid_argument("support: zero direction");
    if (auto h = kernel_->support_closed(theta)) return *h;
    // Oracle fallback: h(theta) = max_u <theta,u> * radial(u).
    auto set = DirectionSet::pipeline(dim());
    double best = -std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int i = 0; i < set->size(); ++i) {
        Vec u = set->direction(i);
        double v = theta.dot(u) / kernel_->gauge(u);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    if (dim() <= 3) {
        auto obj = [&](const Vec& u) { return theta.dot(u) / kernel_->gauge(u); };
        best = std::max(best, refine_sphere_max(obj, set->direction(arg), 2.0 * set->resolution));
    }
    return best;
}

double Body::radial(const Vec& theta) const {
    double nt = theta.norm();
    if (nt == 0.0) throw std::invalid_argument("radial: zero direction");
    return nt / gauge(theta);
}

bool Body::contains(const Vec& x, double tol) const { return gauge(x) <= 1.0 + tol; }

Vec Body::support_box() const {
    std::call_once(radii_->once, [this]() {
        int n = dim();
        Vec sb(n);
        for (int i = 0; i < n; ++i) sb[i] = support(Vec::Unit(n, i));
        radii_->support_box = sb;
        radii_->out_radius = sb.norm();
        if (auto r = kernel_->in_radius_closed()) {
            radii_->in_radius = *r;
        } else {
            auto set = DirectionSet::pipeline(n);
            double g = 0.0;
            for (int i = 0; i < set->size(); ++i)
                g = std::max(g, kernel_->gauge(set->direction(i)));
            radii_->in_radius = 1.0 / g;
        }
    });
    return radii_->support_box;
}

double Body::out_radius() const {
    support_box();
    return radii_->out_radius;
}

double Body::in_radius() const {
    support_box();
    return radii_->in_radius;
}

std::optional<double> Body::closed_volume() const { return kernel_->volume_closed(); }

Body Body::transformed(const LinearMap& map) const {
    if (map.dim() != dim()) throw std::invalid_argument("transformed: dimension mismatch");
    bool diagonal = true;
    const Mat& m = map.matrix();
    for (int i = 0; i < m.rows() && diagonal; ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != 0.0) {
                diagonal = false;
                break;
            }
    switch (kind()) {
        case BodyKind::Ball: {
            const auto& k = static_cast<const BallKernel&>(*kernel_);
            if (diagonal && (m.diagonal().cwiseAbs().array() == std::abs(m(0, 0))).all())
                return ball(dim(), k.radius() * std::abs(m(0, 0)));
            Mat a = (map.matrix() * map.matrix().transpose()).inverse() /
                    (k.radius() * k.radius());
            return ellipsoid(0.5 * (a + a.transpose()));
        }
        case BodyKind::Box: {
            const auto& k = static_cast<const BoxKernel&>(*kernel_);
            if (diagonal) return box(k.half().cwiseProduct(m.diagonal().cwiseAbs()));
            auto fr = kernel_->facet_rows();
            Mat nr = fr->first * map.inverse();  // rows: nu^T T^{-1}
            return hpoly(nr, fr->second);
        }
        case BodyKind::Cross: {
            const auto& k = static_cast<const CrossKernel&>(*kernel_);
            if (diagonal) return cross(k.scale().cwiseProduct(m.diagonal().cwiseAbs()));
            return vpoly(*kernel_->vertex_rows() * map.matrix().transpose());
        }
        case BodyKind::Lp: {
            const auto& k = static_cast<const LpKernel&>(*kernel_);
            if (diagonal) {
                Vec s = k.scale().cwiseProduct(m.diagonal().cwiseAbs());
                return lp_ball(dim(), k.p(), s);
            }
            break;
        }
        case BodyKind::HPoly: {
            const auto& k = static_cast<const HPolyKernel&>(*kernel_);
            Mat nr = k.gradients() * map.inverse();
            return hpoly(nr, Vec::Ones(nr.rows()));
        }
        case BodyKind::VPoly: {
            const auto& k = static_cast<const VPolyKernel&>(*kernel_);
            return vpoly(k.vertices() * map.matrix().transpose());
        }
        case BodyKind::Ellipsoid: {
            const auto& k = static_cast<const EllipsoidKernel&>(*kernel_);
            Mat a = map.inverse().transpose() * k.shape().form() * map.inverse();
            return ellipsoid(0.5 * (a + a.transpose()));
        }
        case BodyKind::Transformed: {
            const auto& k = static_cast<const TransformedKernel&>(*kernel_);
            return Body(std::make_shared<TransformedKernel>(k.base_ptr(),
                                                            map.compose(k.map())));
        }
        default: break;
    }
    return Body(std::make_shared<TransformedKernel>(kernel_, map));
}

Body Body::scaled(double s) const {
    if (!(s != 0.0)) throw std::invalid_argument("scaled: zero factor");
    return transformed(LinearMap::scaling(dim(), s));
}

Body Body::polar() const {
    switch (kind()) {
        case BodyKind::Ball: {
            const auto& k = static_cast<const BallKernel&>(*kernel_);
            return ball(dim(), 1.0 / k.radius());
        }
        case BodyKind::Box: {
            const auto& k = static_cast<const BoxKernel&>(*kernel_);
            return cross(k.half().cwiseInverse());
        }
        case BodyKind::Cross: {
            const auto& k = static_cast<const CrossKernel&>(*kernel_);
            return box(k.scale().cwiseInverse());
        }
        case BodyKind::Ellipsoid: {
            const auto& k = static_cast<const EllipsoidKernel&>(*kernel_);
            Mat a = k.shape().form().inverse();
            return ellipsoid(0.5 * (a + a.transpose()));
        }
        case BodyKind::HPoly: {
            const auto& k = static_cast<const HPolyKernel&>(*kernel_);
            return vpoly(k.gradients());
        }
        case BodyKind::VPoly: {
            const auto& k = static_cast<const VPolyKernel&>(*kernel_);
            return hpoly(k.vertices(), Vec::Ones(k.vertices().rows()));
        }
        default:
            throw std::domain_error("polar: no closed-form polar for kind " +
                                    body_kind_name(kind()));
    }
}

Body Body::intersect_ball(double radius) const {
    return Body(std::make_shared<IntersectionBallKernel>(kernel_, radius));
}

Body Body::slice(const Mat& basis_rows) const {
    return Body(std::make_shared<SliceKernel>(kernel_, basis_rows));
}

Body Body::ball(int dim, double radius) {
    return Body(std::make_shared<BallKernel>(dim, radius));
}
Body Body::box(Vec half_widths) {
    return Body(std::make_shared<BoxKernel>(std::move(half_widths)));
}
Body Body::cube(int dim, double half_width) {
    return box(Vec::Constant(dim, half_width));
}
Body Body::cross(Vec scale) { return Body(std::make_shared<CrossKernel>(std::move(scale))); }
Body Body::cross_unit(int dim) { return cross(Vec::Ones(dim)); }
Body Body::lp_ball(int dim, double p, std::optional<Vec> scale) {
    Vec s = scale ? *scale : Vec::Ones(dim);
    return Body(std::make_shared<LpKernel>(dim, p, std::move(s)));
}
Body Body::hpoly(Mat normal_rows, Vec offsets) {
    return Body(std::make_shared<HPolyKernel>(std::move(normal_rows), std::move(offsets)));
}
Body Body::vpoly(Mat vertex_rows) {
    return Body(std::make_shared<VPolyKernel>(std::move(vertex_rows)));
}
Body Body::ellipsoid(Mat form) {
    return Body(std::make_shared<EllipsoidKernel>(std::move(form)));
}
Body Body::support_hull(std::vector<Body> pieces) {
    return Body(std::make_shared<SupportHullKernel>(std::move(pieces)));
}

namespace {

Mat json_to_matrix(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + ": bad matrix");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j.at(0).size());
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j.at(i).size()) != cols)
            throw std::invalid_argument(std::string(what) + ": ragged matrix");
        for (int k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
    }
    return m;
}

nlohmann::ordered_json matrix_to_json(const Mat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Vec json_to_vector(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": bad vector");
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v[i] = j.at(i).get<double>();
    return v;
}

nlohmann::ordered_json vector_to_json(const Vec& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace

nlohmann::ordered_json Body::to_json() const {
    nlohmann::ordered_json j;
    j["dim"] = dim();
    switch (kind()) {
        case BodyKind::Ball: {
            const auto& k = static_cast<const BallKernel&>(*kernel_);
            j["kind"] = "ball";
            j["radius"] = k.radius();
            return j;
        }
        case BodyKind::Box: {
            const auto& k = static_cast<const BoxKernel&>(*kernel_);
            j["kind"] = "box";
            j["half_widths"] = vector_to_json(k.half());
            return j;
        }
        case BodyKind::Cross: {
            const auto& k = static_cast<const CrossKernel&>(*kernel_);
            j["kind"] = "cross";
            j["scale"] = vector_to_json(k.scale());
            return j;
        }
        case BodyKind::Lp: {
            const auto& k = static_cast<const LpKernel&>(*kernel_);
            j["kind"] = "lp";
            j["p"] = k.p();
            j["scale"] = vector_to_json(k.scale());
            return j;
        }
        case BodyKind::HPoly: {
            const auto& k = static_cast<const HPolyKernel&>(*kernel_);
            j["kind"] = "hpoly";
            j["normals"] = matrix_to_json(k.gradients());
            j["offsets"] = vector_to_json(Vec::Ones(k.gradients().rows()));
            return j;
        }
        case BodyKind::VPoly: {
            const auto& k = static_cast<const VPolyKernel&>(*kernel_);
            j["kind"] = "vpoly";
            j["vertices"] = matrix_to_json(k.vertices());
            return j;
        }
        case BodyKind::Ellipsoid: {
            const auto& k = static_cast<const EllipsoidKernel&>(*kernel_);
            j["kind"] = "ellipsoid";
            j["form"] = matrix_to_json(k.shape().form());
            return j;
        }
        default:
            throw std::domain_error("to_json: kind " + body_kind_name(kind()) +
                                    " has no file representation");
    }
}

Body Body::from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("kind"))
        throw std::invalid_argument("body json: missing dim/kind");
    int dim = j.at("dim").get<int>();
    if (dim < 1 || dim > 16) throw std::invalid_argument("body json: bad dim");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball") return ball(dim, j.value("radius", 1.0));
    if (kind == "box") {
        if (j.contains("half_widths")) {
            Vec h = json_to_vector(j.at("half_widths"), "box");
            if (h.size() != dim) throw std::invalid_argument("box: half_widths size != dim");
            return box(h);
        }
        return cube(dim);
    }
    if (kind == "cross") {
        if (j.contains("scale")) {
            Vec s = json_to_vector(j.at("scale"), "cross");
            if (s.size() != dim) throw std::invalid_argument("cross: scale size != dim");
            return cross(s);
        }
        return cross_unit(dim);
    }
    if (kind == "lp") {
        double p = j.at("p").get<double>();
        std::optional<Vec> s;
        if (j.contains("scale")) s = json_to_vector(j.at("scale"), "lp");
        return lp_ball(dim, p, s);
    }
    if (kind == "hpoly") {
        Mat n = json_to_matrix(j.at("normals"), "hpoly");
        Vec b = json_to_vector(j.at("offsets"), "hpoly");
        if (n.cols() != dim) throw std::invalid_argument("hpoly: normals width != dim");
        return hpoly(n, b);
    }
    if (kind == "vpoly") {
        Mat v = json_to_matrix(j.at("vertices"), "vpoly");
        if (v.cols() != dim) throw std::invalid_argument("vpoly: vertices width != dim");
        return vpoly(v);
    }
    if (kind == "ellipsoid") {
        Mat a = json_to_matrix(j.at("form"), "ellipsoid");
        if (a.rows() != dim || a.cols() != dim)
            throw std::invalid_argument("ellipsoid: form shape != dim x dim");
        return ellipsoid(a);
    }
    throw std::invalid_argument("body json: unknown kind '" + kind + "'");
}

}  // namespace isoslice
