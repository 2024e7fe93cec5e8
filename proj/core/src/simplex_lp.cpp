#include "isoslice/simplex_lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace isoslice {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-9;
constexpr int kMaxIters = 20000;

// Full-tableau simplex. Rows 0..m-1 hold constraints, row m holds reduced
// costs; the last column is the RHS / negated objective.
class Tableau {
  public:
    Tableau(int m, int n) : m_(m), n_(n), t_(Mat::Zero(m + 1, n + 1)), basis_(m, -1) {}

    Mat& data() { return t_; }
    std::vector<int>& basis() { return basis_; }

    // Bland's rule: smallest-index entering column with negative reduced cost.
    int entering() const {
        for (int j = 0; j < n_; ++j)
            if (t_(m_, j) < -kCostTol) return j;
        return -1;
    }

    int leaving(int col) const {
        int row = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m_; ++i) {
            double a = t_(i, col);
            if (a <= kPivotTol) continue;
            double ratio = t_(i, n_) / a;
            if (ratio < best - 1e-14 ||
                (ratio < best + 1e-14 && (row < 0 || basis_[i] < basis_[row]))) {
                best = ratio;
                row = i;
            }
        }
        return row;
    }

    void pivot(int row, int col) {
        t_.row(row) /= t_(row, col);
        for (int i = 0; i <= m_; ++i) {
            if (i == row) continue;
            double f = t_(i, col);
            if (f != 0.0) t_.row(i) -= f * t_.row(row);
        }
        basis_[row] = col;
    }

    // Returns false on iteration overrun (treated as numerical failure).
    bool run() {
        for (int it = 0; it < kMaxIters; ++it) {
            int col = entering();
            if (col < 0) return true;
            int row = leaving(col);
            if (row < 0) throw std::runtime_error("simplex: unbounded problem");
            pivot(row, col);
        }
        return false;
    }

    double objective() const { return -t_(m_, n_); }

    int m_, n_;
    Mat t_;
    std::vector<int> basis_;
};

}  // namespace

LpResult solve_lp_standard(const Mat& A, const Vec& b, const Vec& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || c.size() != n)
        throw std::invalid_argument("solve_lp_standard: dimension mismatch");

    // Phase 1 with artificial variables; flip rows so RHS >= 0.
    Tableau ph1(m, n + m);
    for (int i = 0; i < m; ++i) {
        double s = b[i] < 0.0 ? -1.0 : 1.0;
        ph1.data().block(i, 0, 1, n) = s * A.row(i);
        ph1.data()(i, n + i) = 1.0;
        ph1.data()(i, n + m) = s * b[i];
        ph1.basis()[i] = n + i;
    }
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += ph1.data()(i, j);
        ph1.data()(m, j) = -s;
    }
    double rhs_sum = ph1.data().col(n + m).head(m).sum();
    ph1.data()(m, n + m) = -rhs_sum;
    if (!ph1.run()) throw std::runtime_error("simplex: phase 1 stalled");
    if (ph1.objective() > 1e-7 * (1.0 + std::abs(rhs_sum))) return LpResult{false, 0.0, {}};

    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (ph1.basis()[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(ph1.data()(i, j)) > 1e-8) {
                col = j;
                break;
            }
        }
        if (col >= 0) ph1.pivot(i, col);
        // else: redundant row, harmless to leave the zero-level artificial.
    }

    // Phase 2 on the original columns.
    Tableau ph2(m, n);
    ph2.data().block(0, 0, m, n) = ph1.data().block(0, 0, m, n);
    ph2.data().col(n).head(m) = ph1.data().col(n + m).head(m);
    ph2.basis() = ph1.basis();
    for (int i = 0; i < m; ++i) {
        if (ph2.basis()[i] >= n) ph2.basis()[i] = -1;  // zero-level artificial row
    }
    for (int j = 0; j < n; ++j) ph2.data()(m, j) = c[j];
    double obj0 = 0.0;
    for (int i = 0; i < m; ++i) {
        int bj = ph2.basis()[i];
        if (bj < 0) continue;
        double cb = c[bj];
        if (cb != 0.0) {
            ph2.data().row(m).head(n) -= cb * ph2.data().row(i).head(n);
            obj0 += cb * ph2.data()(i, n);
        }
    }
    ph2.data()(m, n) = -obj0;
    if (!ph2.run()) throw std::runtime_error("simplex: phase 2 stalled");

    LpResult res;
    res.feasible = true;
    res.objective = ph2.objective();
    res.x = Vec::Zero(n);
    for (int i = 0; i < m; ++i) {
        if (ph2.basis()[i] >= 0) res.x[ph2.basis()[i]] = ph2.data()(i, n);
    }
    return res;
}

double vpoly_gauge(const Mat& P, const Vec& x) {
    if (P.rows() != x.size()) throw std::invalid_argument("vpoly_gauge: dimension mismatch");
    if (x.norm() == 0.0) return 0.0;
    // Scale to unit norm for conditioning; the gauge is 1-homogeneous.
    double nrm = x.norm();
    LpResult lp = solve_lp_standard(P, x / nrm, Vec::Ones(P.cols()));
    if (!lp.feasible) return std::numeric_limits<double>::infinity();
    return lp.objective * nrm;
}

}  // namespace isoslice
