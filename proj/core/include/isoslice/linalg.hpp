#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace isoslice {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Volume of the unit Euclidean ball in dimension n.
inline double unit_ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface area of the unit sphere S^{n-1}.
inline double unit_sphere_area(int n) {
    return n * unit_ball_volume(n);
}

/// Invertible linear map with determinant bookkeeping.
class LinearMap {
  public:
    explicit LinearMap(Mat matrix) : matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols())
            throw std::invalid_argument("LinearMap: matrix must be square");
        Eigen::PartialPivLU<Mat> lu(matrix_);
        det_ = lu.determinant();
        if (!(std::abs(det_) > 0.0) || !std::isfinite(det_))
            throw std::invalid_argument("LinearMap: matrix is singular");
        inverse_ = lu.inverse();
    }

    static LinearMap identity(int dim) { return LinearMap(Mat::Identity(dim, dim)); }

    static LinearMap scaling(int dim, double s) {
        return LinearMap(Mat::Identity(dim, dim) * s);
    }

    const Mat& matrix() const { return matrix_; }
    const Mat& inverse() const { return inverse_; }
    double det() const { return det_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

    Vec apply(const Vec& x) const { return matrix_ * x; }
    Vec apply_inverse(const Vec& x) const { return inverse_ * x; }

    LinearMap compose(const LinearMap& other) const {  // this ∘ other
        return LinearMap(matrix_ * other.matrix_);
    }

  private:
    Mat matrix_;
    Mat inverse_;
    double det_ = 0.0;
};

/// Centered ellipsoid {x : x^T A x <= 1} with A symmetric positive definite.
class Ellipsoid {
  public:
    explicit Ellipsoid(Mat form) : form_(std::move(form)) {
        if (form_.rows() != form_.cols())
            throw std::invalid_argument("Ellipsoid: form must be square");
        form_ = 0.5 * (form_ + form_.transpose().eval());
        Eigen::SelfAdjointEigenSolver<Mat> es(form_);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("Ellipsoid: eigendecomposition failed");
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw std::invalid_argument("Ellipsoid: form is not positive definite");
        eigvals_ = es.eigenvalues();
        eigvecs_ = es.eigenvectors();
    }

    static Ellipsoid unit_ball(int dim) { return Ellipsoid(Mat::Identity(dim, dim)); }

    int dim() const { return static_cast<int>(form_.rows()); }
    const Mat& form() const { return form_; }

    double det_form() const { return eigvals_.prod(); }

    double volume() const { return unit_ball_volume(dim()) / std::sqrt(det_form()); }

    /// Maps the ellipsoid onto the unit ball: x -> A^{1/2} x.
    Mat sqrt_form() const {
        return eigvecs_ * eigvals_.cwiseSqrt().asDiagonal() * eigvecs_.transpose();
    }

    Mat inv_sqrt_form() const {
        return eigvecs_ * eigvals_.cwiseSqrt().cwiseInverse().asDiagonal() *
               eigvecs_.transpose();
    }

    /// Same shape rescaled so that volume() == target.
    Ellipsoid with_volume(double target) const {
        if (!(target > 0.0)) throw std::invalid_argument("Ellipsoid: volume must be positive");
        double ratio = volume() / target;  // scale form by ratio^{2/n}
        return Ellipsoid(form_ * std::pow(ratio, 2.0 / dim()));
    }

  private:
    Mat form_;
    Vec eigvals_;
    Mat eigvecs_;
};

/// Symmetric PSD inverse square root, with eigenvalue floor for conditioning.
inline Mat spd_inv_sqrt(const Mat& a, double floor_rel = 1e-12) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spd_inv_sqrt: eigendecomposition failed");
    Vec ev = es.eigenvalues();
    double top = ev.maxCoeff();
    if (!(top > 0.0)) throw std::invalid_argument("spd_inv_sqrt: matrix is not positive");
    Vec inv = ev.unaryExpr([&](double v) {
        return 1.0 / std::sqrt(std::max(v, floor_rel * top));
    });
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace isoslice
