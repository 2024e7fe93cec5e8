#include "isoslice/quadrature1d.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace isoslice {

namespace {

GaussLegendre build_rule(int n) {
    // Newton iteration on Legendre polynomials, symmetric nodes.
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussLegendre& GaussLegendre::order(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double a,
                                double b) const {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return sum * half;
}

namespace {

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             const GaussLegendre& rule, const QuadratureOptions& opts, double global_scale,
             int depth) {
    double mid = 0.5 * (a + b);
    double left = rule.integrate(f, a, mid);
    double right = rule.integrate(f, mid, b);
    double delta = left + right - whole;
    double tol = opts.rel_tol * std::max(global_scale, std::abs(left + right)) + opts.abs_tol;
    if (std::abs(delta) <= tol || depth >= opts.max_depth) return left + right;
    return adapt(f, a, mid, left, rule, opts, global_scale, depth + 1) +
           adapt(f, mid, b, right, rule, opts, global_scale, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opts) {
    if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: b < a");
    if (a == b) return 0.0;
    const GaussLegendre& rule = GaussLegendre::order(opts.order);
    double whole = rule.integrate(f, a, b);
    return adapt(f, a, b, whole, rule, opts, std::abs(whole), 0);
}

double decay_truncation_radius(double rate, int power, int k, double eps) {
    if (!(rate > 0.0)) throw std::invalid_argument("decay_truncation_radius: rate <= 0");
    if (power != 1 && power != 2)
        throw std::invalid_argument("decay_truncation_radius: power must be 1 or 2");
    double target = -std::log(eps);
    double r = std::pow(target / rate, 1.0 / power);
    for (int it = 0; it < 8; ++it) {
        double need = target + k * std::log(std::max(r, M_E));
        r = std::pow(need / rate, 1.0 / power);
    }
    return 1.5 * r;
}

}  // namespace isoslice
