#pragma once

#include <functional>
#include <vector>

namespace isoslice {

/// Gauss–Legendre rule on [-1, 1]; nodes/weights computed once per order.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    static const GaussLegendre& order(int n);

    double integrate(const std::function<double(double)>& f, double a, double b) const;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;  // pure relative control by default
    int max_depth = 48;
    int order = 15;
};

/// Adaptive Gauss–Legendre on [a, b]: accepts an interval when the order-n
/// estimate agrees with the two-halves estimate, otherwise recurses.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opts = {});

/// Truncation radius R such that the tail of e^{-rate·r^power} r^k past R is
/// below eps relative to the bulk. Solved by fixed-point iteration on
/// rate·R^power = -log(eps) + k·log(R).
double decay_truncation_radius(double rate, int power, int k, double eps = 1e-16);

}  // namespace isoslice
