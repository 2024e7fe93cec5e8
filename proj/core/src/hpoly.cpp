#include "isoslice/hpoly.hpp"

#include <cmath>
#include <stdexcept>

namespace isoslice {

namespace {

constexpr double kRowTol = 1e-11;

// Orthonormal basis of the hyperplane {x : <normal, x> = 0} (columns).
Mat hyperplane_basis(const Vec& normal) {
    int n = static_cast<int>(normal.size());
    Eigen::HouseholderQR<Mat> qr(normal);
    Mat q = qr.householderQ();
    return q.rightCols(n - 1);
}

struct ChildSystem {
    Mat A;
    Vec b;
    bool empty = false;
};

// Constraints of facet i expressed in the coordinates of its hyperplane.
ChildSystem facet_system(const Mat& A, const Vec& b, int facet) {
    ChildSystem child;
    const int m = static_cast<int>(A.rows());
    const int d = static_cast<int>(A.cols());
    Vec ai = A.row(facet).transpose();
    double na = ai.norm();
    Vec foot = ai * (b[facet] / (na * na));
    Mat Q = hyperplane_basis(ai);
    std::vector<Vec> rows;
    std::vector<double> offs;
    rows.reserve(m - 1);
    for (int j = 0; j < m; ++j) {
        if (j == facet) continue;
        Vec aj = Q.transpose() * A.row(j).transpose();
        double bj = b[j] - A.row(j).dot(foot);
        double nj = aj.norm();
        double scale_ref = A.row(j).norm();
        if (nj <= kRowTol * std::max(1.0, scale_ref)) {
            if (bj < -1e-9 * std::max(1.0, scale_ref)) {
                child.empty = true;
                return child;
            }
            continue;  // constraint inactive on this hyperplane
        }
        Vec u = aj / nj;
        double o = bj / nj;
        bool merged = false;
        for (size_t r = 0; r < rows.size(); ++r) {
            if ((rows[r] - u).cwiseAbs().maxCoeff() < 1e-10) {
                offs[r] = std::min(offs[r], o);
                merged = true;
                break;
            }
        }
        if (!merged) {
            rows.push_back(u);
            offs.push_back(o);
        }
    }
    child.A.resize(rows.size(), d - 1);
    child.b.resize(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        child.A.row(r) = rows[r].transpose();
        child.b[r] = offs[r];
    }
    return child;
}

double interval_length(const Mat& A, const Vec& b) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int j = 0; j < A.rows(); ++j) {
        double a = A(j, 0);
        if (a > kRowTol)
            hi = std::min(hi, b[j] / a);
        else if (a < -kRowTol)
            lo = std::max(lo, b[j] / a);
        else if (b[j] < -1e-9)
            return 0.0;
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::runtime_error("hpoly: unbounded interval in volume recursion");
    return std::max(0.0, hi - lo);
}

double volume_rec(const Mat& A, const Vec& b, Vec* facet_out) {
    const int d = static_cast<int>(A.cols());
    if (d == 1) {
        double len = interval_length(A, b);
        if (facet_out) {
            *facet_out = Vec::Zero(A.rows());
            // Endpoint "facets" have 0-dimensional volume 1 when active.
            if (len > 0.0) {
                double lo = -std::numeric_limits<double>::infinity(), hi = lo * -1.0;
                hi = std::numeric_limits<double>::infinity();
                int ilo = -1, ihi = -1;
                for (int j = 0; j < A.rows(); ++j) {
                    double a = A(j, 0);
                    if (a > kRowTol && b[j] / a < hi) {
                        hi = b[j] / a;
                        ihi = j;
                    } else if (a < -kRowTol && b[j] / a > lo) {
                        lo = b[j] / a;
                        ilo = j;
                    }
                }
                if (ihi >= 0) (*facet_out)[ihi] = 1.0;
                if (ilo >= 0) (*facet_out)[ilo] = 1.0;
            }
        }
        return len;
    }
    double vol = 0.0;
    if (facet_out) *facet_out = Vec::Zero(A.rows());
    for (int i = 0; i < A.rows(); ++i) {
        ChildSystem child = facet_system(A, b, i);
        if (child.empty) return 0.0;
        double fv = child.A.rows() == 0 ? 0.0 : volume_rec(child.A, child.b, nullptr);
        if (facet_out) (*facet_out)[i] = fv;
        vol += (b[i] / A.row(i).norm()) * fv;
    }
    return std::max(0.0, vol / d);
}

}  // namespace

Mat hpoly_vertices(const Mat& A, const Vec& b) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (m < n) throw std::invalid_argument("hpoly_vertices: fewer rows than dim");
    double combos = 1.0;
    for (int i = 0; i < n; ++i) combos *= static_cast<double>(m - i) / (i + 1);
    if (combos > 4e6) throw std::runtime_error("hpoly_vertices: too many facet combinations");

    std::vector<Vec> verts;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    auto advance = [&]() {
        int k = n - 1;
        while (k >= 0 && idx[k] == m - n + k) --k;
        if (k < 0) return false;
        ++idx[k];
        for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    Mat sub(n, n);
    Vec rhs(n);
    do {
        for (int r = 0; r < n; ++r) {
            sub.row(r) = A.row(idx[r]);
            rhs[r] = b[idx[r]];
        }
        Eigen::FullPivLU<Mat> lu(sub);
        if (lu.rank() < n) continue;
        Vec x = lu.solve(rhs);
        double scale = std::max(1.0, x.norm());
        bool feasible = true;
        for (int j = 0; j < m && feasible; ++j) {
            if (A.row(j).dot(x) > b[j] + 1e-8 * scale * std::max(1.0, A.row(j).norm()))
                feasible = false;
        }
        if (!feasible) continue;
        bool dup = false;
        for (const auto& v : verts) {
            if ((v - x).norm() < 1e-8 * scale) {
                dup = true;
                break;
            }
        }
        if (!dup) verts.push_back(x);
    } while (advance());

    Mat out(verts.size(), n);
    for (size_t i = 0; i < verts.size(); ++i) out.row(i) = verts[i].transpose();
    return out;
}

double hpoly_volume(const Mat& A, const Vec& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("hpoly_volume: shape mismatch");
    return volume_rec(A, b, nullptr);
}

Vec hpoly_facet_volumes(const Mat& A, const Vec& b) {
    if (A.rows() != b.size())
        throw std::invalid_argument("hpoly_facet_volumes: shape mismatch");
    Vec out;
    volume_rec(A, b, &out);
    return out;
}

double exact_polytope_volume(const Body& body) {
    auto fr = body.facet_rows();
    if (!fr) throw std::invalid_argument("exact_polytope_volume: body has no facet data");
    return hpoly_volume(fr->first, fr->second);
}

Body fit_hpoly(const Body& body, const DirectionSet& dirs) {
    if (dirs.dim != body.dim()) throw std::invalid_argument("fit_hpoly: dimension mismatch");
    Vec offs(dirs.size());
    for (int i = 0; i < dirs.size(); ++i) offs[i] = body.support(dirs.direction(i));
    return Body::hpoly(dirs.points, offs);
}

Body fit_hpoly_capped(const Body& body, double ball_radius, const DirectionSet& dirs) {
    Vec offs(dirs.size());
    for (int i = 0; i < dirs.size(); ++i)
        offs[i] = std::min(body.support(dirs.direction(i)), ball_radius);
    return Body::hpoly(dirs.points, offs);
}

double mixed_volume_first(const Body& K, const Body& C) {
    if (K.dim() != C.dim()) throw std::invalid_argument("mixed_volume_first: dim mismatch");
    auto fr = C.facet_rows();
    if (!fr)
        throw std::invalid_argument("mixed_volume_first: C must carry a facet description");
    const Mat& A = fr->first;
    const Vec& b = fr->second;
    Vec areas = hpoly_facet_volumes(A, b);
    double sum = 0.0;
    for (int i = 0; i < A.rows(); ++i) {
        if (areas[i] <= 0.0) continue;
        Vec nu = A.row(i).transpose();
        nu /= nu.norm();
        sum += areas[i] * K.support(nu);
    }
    return sum / K.dim();
}

Body convex_hull_body(const std::vector<Body>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("convex_hull_body: no pieces");
    if (pieces.size() == 1) return pieces[0];
    std::vector<Mat> vertex_sets;
    bool all_vertices = true;
    for (const auto& p : pieces) {
        if (auto v = p.vertex_rows()) {
            vertex_sets.push_back(*v);
        } else if (auto f = p.facet_rows()) {
            vertex_sets.push_back(hpoly_vertices(f->first, f->second));
        } else {
            all_vertices = false;
            break;
        }
    }
    if (all_vertices) {
        int total = 0, dim = pieces[0].dim();
        for (const auto& v : vertex_sets) total += static_cast<int>(v.rows());
        Mat stacked(total, dim);
        int r = 0;
        for (const auto& v : vertex_sets) {
            stacked.middleRows(r, v.rows()) = v;
            r += static_cast<int>(v.rows());
        }
        return Body::vpoly(stacked);
    }
    return Body::support_hull(pieces);
}

}  // namespace isoslice
