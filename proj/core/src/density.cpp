#include "isoslice/density.hpp"

#include <cmath>
#include <sstream>

#include "isoslice/quadrature1d.hpp"
#include "isoslice/rng.hpp"

namespace isoslice {

std::string concavity_name(ConcavityClass c) {
    switch (c) {
        case ConcavityClass::Indicator: return "indicator";
        case ConcavityClass::SConcave: return "s-concave";
        case ConcavityClass::LogConcave: return "log-concave";
        case ConcavityClass::LineSConcave: return "line-s-concave";
    }
    return "?";
}

Density indicator_density(const Body& K) {
    Density f;
    f.dim = K.dim();
    f.eval = [K](const Vec& x) { return K.gauge(x) <= 1.0 ? 1.0 : 0.0; };
    f.support_radius = [K](const Vec& th) { return K.radial(th); };
    f.concavity = ConcavityClass::Indicator;
    f.f0 = 1.0;
    f.support = K;
    f.name = "indicator(" + K.name() + ")";
    return f;
}

Density power_density(const Body& K, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("power_density: s must be positive");
    Density f;
    f.dim = K.dim();
    f.eval = [K, s](const Vec& x) {
        double g = K.gauge(x);
        return g < 1.0 ? std::pow(1.0 - g, s) : 0.0;
    };
    f.support_radius = [K](const Vec& th) { return K.radial(th); };
    f.concavity = ConcavityClass::SConcave;
    f.s_param = s;
    f.f0 = 1.0;
    f.support = K;
    std::ostringstream os;
    os << "power(" << K.name() << ",s=" << s << ")";
    f.name = os.str();
    return f;
}

Density exp_gauge_density(const Body& K) {
    Density f;
    f.dim = K.dim();
    f.eval = [K](const Vec& x) { return std::exp(-K.gauge(x)); };
    f.support_radius = [](const Vec&) { return std::numeric_limits<double>::infinity(); };
    f.decay_rate = 1.0 / K.out_radius();  // gauge(x) >= |x| / R_out
    f.decay_power = 1;
    f.concavity = ConcavityClass::LogConcave;
    f.f0 = 1.0;
    f.name = "exp-gauge(" + K.name() + ")";
    return f;
}

Density gaussian_density(const Mat& form) {
    Ellipsoid shape(form);  // validates SPD
    Density f;
    f.dim = shape.dim();
    Mat a = shape.form();
    f.eval = [a](const Vec& x) { return std::exp(-0.5 * x.dot(a * x)); };
    f.support_radius = [](const Vec&) { return std::numeric_limits<double>::infinity(); };
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    f.decay_rate = 0.5 * es.eigenvalues().minCoeff();
    f.decay_power = 2;
    f.concavity = ConcavityClass::LogConcave;
    f.f0 = 1.0;
    f.name = "gaussian:" + std::to_string(shape.dim());
    return f;
}

Density triangle_product_density(int dim) {
    if (dim < 1) throw std::invalid_argument("triangle_product_density: dim < 1");
    Density f;
    f.dim = dim;
    f.eval = [](const Vec& x) {
        double v = 1.0;
        for (int i = 0; i < x.size(); ++i) {
            double t = 2.0 - std::abs(x[i]);
            if (t <= 0.0) return 0.0;
            v *= t;
        }
        return v;
    };
    Body supp = Body::cube(dim, 2.0);
    f.support_radius = [supp](const Vec& th) { return supp.radial(th); };
    f.concavity = ConcavityClass::LogConcave;
    f.f0 = std::pow(2.0, dim);
    f.support = supp;
    f.name = "triangle-product:" + std::to_string(dim);
    return f;
}

Density density_from_json(const nlohmann::json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "indicator") return indicator_density(Body::from_json(j.at("body")));
    if (type == "power")
        return power_density(Body::from_json(j.at("body")), j.at("s").get<double>());
    if (type == "exp-gauge") return exp_gauge_density(Body::from_json(j.at("body")));
    if (type == "gaussian") {
        auto rows = j.at("form");
        Mat a(rows.size(), rows.size());
        for (size_t r = 0; r < rows.size(); ++r)
            for (size_t c = 0; c < rows.size(); ++c) a(r, c) = rows.at(r).at(c).get<double>();
        return gaussian_density(a);
    }
    if (type == "triangle-product") return triangle_product_density(j.at("dim").get<int>());
    throw std::invalid_argument("density json: unknown type '" + type + "'");
}

DensitySpotCheck spot_check_density(const Density& f, std::uint64_t seed, int triples) {
    Rng rng(derive_seed(seed, "density-spot-check"));
    DensitySpotCheck out;
    double scale = 1.0;
    if (f.support) scale = f.support->out_radius();
    else if (f.decay_rate > 0.0)
        scale = decay_truncation_radius(f.decay_rate, f.decay_power, 0, 1e-6);

    for (int t = 0; t < triples; ++t) {
        Vec th = rng.sphere_direction(f.dim);
        double r = rng.uniform() * scale;
        Vec x = r * th;
        double fx = f(x), fmx = f(-x);
        double rel = std::abs(fx - fmx) / std::max({fx, fmx, 1e-300});
        out.worst_evenness = std::max(out.worst_evenness, rel);

        // Concavity along the line through the origin spanned by th.
        double a = rng.uniform(-scale, scale), b = rng.uniform(-scale, scale);
        double fa = f(a * th), fb = f(b * th), fm = f(0.5 * (a + b) * th);
        if (fa <= 0.0 || fb <= 0.0) continue;
        double lhs, rhs;
        switch (f.concavity) {
            case ConcavityClass::Indicator:
                lhs = fm;
                rhs = std::min(fa, fb);
                break;
            case ConcavityClass::LogConcave:
                lhs = std::log(std::max(fm, 1e-300));
                rhs = 0.5 * (std::log(fa) + std::log(fb));
                break;
            case ConcavityClass::SConcave:
            case ConcavityClass::LineSConcave: {
                double inv_s = 1.0 / f.s_param;
                lhs = std::pow(fm, inv_s);
                rhs = 0.5 * (std::pow(fa, inv_s) + std::pow(fb, inv_s));
                break;
            }
        }
        double viol = (rhs - lhs) / std::max(std::abs(rhs), 1.0);
        out.worst_concavity = std::max(out.worst_concavity, viol);
    }
    out.even_ok = out.worst_evenness <= 1e-10;
    out.concavity_ok = out.worst_concavity <= 1e-8;
    return out;
}

double radial_moment(const Density& f, const Vec& theta, int k) {
    if (k < 0) throw std::invalid_argument("radial_moment: k < 0");
    if (theta.size() != f.dim) throw std::invalid_argument("radial_moment: dim mismatch");
    Vec th = theta / theta.norm();
    double radius = f.support_radius(th);
    if (!std::isfinite(radius)) {
        if (!(f.decay_rate > 0.0))
            throw std::domain_error("radial_moment: infinite support without declared decay");
        radius = decay_truncation_radius(f.decay_rate, f.decay_power, k);
    }
    if (radius <= 0.0) return 0.0;
    QuadratureOptions opts;
    opts.rel_tol = 1e-11;
    if (f.radial_profile_factory) {
        auto g = f.radial_profile_factory(th);
        return integrate_adaptive([&](double r) { return g(r) * std::pow(r, k); }, 0.0,
                                  radius, opts);
    }
    auto integrand = [&](double r) { return f(r * th) * std::pow(r, k); };
    return integrate_adaptive(integrand, 0.0, radius, opts);
}

}  // namespace isoslice
