#include "isoslice/directions.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "isoslice/quadrature1d.hpp"

namespace isoslice {

namespace {

// Kronecker sequence with the generalized golden ratio (the R_d sequence):
// equidistributed in [0,1)^d, mapped through the normal quantile to get a
// quasi-uniform set on the sphere.
Mat rd_sequence(int dim, int count) {
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
    Vec alpha(dim);
    double p = 1.0;
    for (int j = 0; j < dim; ++j) {
        p /= phi;
        alpha[j] = p;
    }
    Mat u(count, dim);
    for (int k = 0; k < count; ++k) {
        for (int j = 0; j < dim; ++j) {
            double v = 0.5 + (k + 1) * alpha[j];
            u(k, j) = v - std::floor(v);
        }
    }
    return u;
}

std::pair<double, double> golden_max(const std::function<double(double)>& f, double a,
                                     double b, int iters = 64) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

double measure_moment_defect(const Mat& pts, const Vec& w) {
    int dim = static_cast<int>(pts.cols());
    Mat second = Mat::Zero(dim, dim);
    for (int k = 0; k < pts.rows(); ++k)
        second += w[k] * pts.row(k).transpose() * pts.row(k);
    second -= Mat::Identity(dim, dim) / dim;
    return second.cwiseAbs().maxCoeff();
}

}  // namespace

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p outside (0,1)");
    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Halley step against the exact CDF.
    double e = 0.5 * std::erfc(-x / M_SQRT2) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

DirectionSet DirectionSet::angular_grid(int dim, int per_angle) {
    if (per_angle < 4) throw std::invalid_argument("angular_grid: need >= 4 nodes");
    if (per_angle % 2) ++per_angle;  // keep the set symmetric
    DirectionSet set;
    set.dim = dim;
    if (dim == 2) {
        set.points.resize(per_angle, 2);
        for (int i = 0; i < per_angle; ++i) {
            double t = 2.0 * M_PI * i / per_angle;
            set.points(i, 0) = std::cos(t);
            set.points(i, 1) = std::sin(t);
        }
        set.resolution = M_PI / per_angle;
    } else if (dim == 3) {
        int np = per_angle, na = per_angle;
        set.points.resize(np * na, 3);
        int r = 0;
        for (int i = 0; i < np; ++i) {
            double theta = M_PI * (i + 0.5) / np;
            double st = std::sin(theta), ct = std::cos(theta);
            for (int j = 0; j < na; ++j) {
                double phi = 2.0 * M_PI * j / na;
                set.points(r, 0) = st * std::cos(phi);
                set.points(r, 1) = st * std::sin(phi);
                set.points(r, 2) = ct;
                ++r;
            }
        }
        set.resolution = M_PI / per_angle;
    } else {
        throw std::invalid_argument("angular_grid: only dims 2-3");
    }
    return set;
}

DirectionSet DirectionSet::low_discrepancy(int dim, int count) {
    if (dim < 2) throw std::invalid_argument("low_discrepancy: dim < 2");
    int half = (count + 1) / 2;
    Mat u = rd_sequence(dim, half);
    DirectionSet set;
    set.dim = dim;
    set.points.resize(2 * half, dim);
    for (int k = 0; k < half; ++k) {
        Vec z(dim);
        for (int j = 0; j < dim; ++j) z[j] = inverse_normal_cdf(u(k, j));
        double nrm = z.norm();
        if (nrm < 1e-12) z[0] = nrm = 1.0;
        z /= nrm;
        set.points.row(2 * k) = z.transpose();
        set.points.row(2 * k + 1) = -z.transpose();
    }
    set.resolution = M_PI * std::pow(static_cast<double>(2 * half), -1.0 / (dim - 1));
    return set;
}

namespace {

std::shared_ptr<const DirectionSet> make_cached(int dim, int res, bool grid) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, bool>, std::shared_ptr<const DirectionSet>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(dim, res, grid);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto made = std::make_shared<DirectionSet>(
        grid ? DirectionSet::angular_grid(dim, res) : DirectionSet::low_discrepancy(dim, res));
    cache.emplace(key, made);
    return made;
}

}  // namespace

std::shared_ptr<const DirectionSet> DirectionSet::standard(int dim) {
    if (dim == 2) return make_cached(2, 720, true);
    if (dim == 3) return make_cached(3, 720, true);
    return make_cached(dim, 1 << 14, false);
}

std::shared_ptr<const DirectionSet> DirectionSet::pipeline(int dim) {
    if (dim == 2) return make_cached(2, 720, true);
    if (dim == 3) return make_cached(3, 96, true);
    return make_cached(dim, 1 << 13, false);
}

double refine_sphere_max(const std::function<double(const Vec&)>& g, const Vec& seed,
                         double radius) {
    int dim = static_cast<int>(seed.size());
    if (dim == 2) {
        double t0 = std::atan2(seed[1], seed[0]);
        auto f = [&](double t) {
            Vec v(2);
            v << std::cos(t), std::sin(t);
            return g(v);
        };
        return golden_max(f, t0 - radius, t0 + radius).second;
    }
    if (dim == 3) {
        double theta = std::acos(std::clamp(seed[2], -1.0, 1.0));
        double phi = std::atan2(seed[1], seed[0]);
        auto eval = [&](double th, double ph) {
            Vec v(3);
            v << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
            return g(v);
        };
        double best = eval(theta, phi);
        for (int sweep = 0; sweep < 3; ++sweep) {
            if (std::sin(theta) > 1e-8) {
                double span = radius / std::max(std::sin(theta), 0.1);
                auto [p, fp] = golden_max([&](double ph) { return eval(theta, ph); },
                                          phi - span, phi + span);
                phi = p;
                best = std::max(best, fp);
            }
            auto [t, ft] =
                golden_max([&](double th) { return eval(th, phi); }, theta - radius,
                           theta + radius);
            theta = t;
            best = std::max(best, ft);
        }
        return best;
    }
    return g(seed);
}

double SphereQuadrature::average(const std::function<double(const Vec&)>& f) const {
    double sum = 0.0;
    for (int i = 0; i < size(); ++i) sum += weights[i] * f(direction(i));
    return sum;
}

double SphereQuadrature::surface_integral(const std::function<double(const Vec&)>& f) const {
    return sphere_area * average(f);
}

SphereQuadrature SphereQuadrature::build(int dim, int level) {
    SphereQuadrature q;
    q.dim = dim;
    q.sphere_area = unit_sphere_area(dim);
    if (dim == 2) {
        int n = std::max(8, level);
        if (n % 2) ++n;
        q.points.resize(n, 2);
        q.weights = Vec::Constant(n, 1.0 / n);
        for (int i = 0; i < n; ++i) {
            double t = 2.0 * M_PI * i / n;
            q.points(i, 0) = std::cos(t);
            q.points(i, 1) = std::sin(t);
        }
    } else if (dim == 3) {
        // Area element on S^2 is dz dphi: Gauss-Legendre in z, uniform phi.
        int nz = std::max(4, level), na = 2 * nz;
        const GaussLegendre& gl = GaussLegendre::order(nz);
        q.points.resize(nz * na, 3);
        q.weights.resize(nz * na);
        int r = 0;
        for (int i = 0; i < nz; ++i) {
            double z = gl.nodes[i], s = std::sqrt(std::max(0.0, 1.0 - z * z));
            for (int j = 0; j < na; ++j) {
                double phi = 2.0 * M_PI * j / na;
                q.points(r, 0) = s * std::cos(phi);
                q.points(r, 1) = s * std::sin(phi);
                q.points(r, 2) = z;
                q.weights[r] = gl.weights[i] / (2.0 * na);
                ++r;
            }
        }
    } else if (dim == 4) {
        // x = (cos t, sin t * w), w in S^2; surface factor sin^2 t.
        int nt = std::max(4, level);
        const GaussLegendre& gl = GaussLegendre::order(nt);
        SphereQuadrature inner = build(3, level);
        q.points.resize(nt * inner.size(), 4);
        q.weights.resize(nt * inner.size());
        double norm = 0.0;
        int r = 0;
        for (int i = 0; i < nt; ++i) {
            double t = 0.5 * M_PI * (gl.nodes[i] + 1.0);
            double wt = gl.weights[i] * (0.5 * M_PI) * std::pow(std::sin(t), 2);
            for (int j = 0; j < inner.size(); ++j) {
                q.points(r, 0) = std::cos(t);
                q.points.block(r, 1, 1, 3) = std::sin(t) * inner.points.row(j);
                q.weights[r] = wt * inner.weights[j];
                norm += q.weights[r];
                ++r;
            }
        }
        q.weights /= norm;
    } else {
        auto set = DirectionSet::low_discrepancy(dim, level * level);
        q.points = set.points;
        q.weights = Vec::Constant(set.size(), 1.0 / set.size());
    }
    q.moment_defect = measure_moment_defect(q.points, q.weights);
    return q;
}

std::shared_ptr<const SphereQuadrature> SphereQuadrature::standard(int dim) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const SphereQuadrature>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(dim);
    if (it != cache.end()) return it->second;
    int level = dim == 2 ? 720 : dim == 3 ? 64 : dim == 4 ? 16 : 128;
    auto made = std::make_shared<SphereQuadrature>(build(dim, level));
    cache.emplace(dim, made);
    return made;
}

}  // namespace isoslice
