#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>

namespace isoslice {

/// Exact C(n, k) in 64-bit arithmetic; valid through n = 62 (peak value
/// C(62,31) < 2^63). Each intermediate product stays divisible.
inline std::uint64_t binomial_exact(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("binomial_exact: k out of range");
    if (k > n - k) k = n - k;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return c;
}

struct BinomBounds {
    double lower;   // (n/k)^k
    double value;   // C(n,k)
    double upper;   // (e n/k)^k
};

/// Two-sided elementary bounds around the binomial coefficient,
/// (n/k)^k <= C(n,k) < (e n/k)^k for 1 <= k <= n.
inline BinomBounds binom_bounds(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("binom_bounds: need 1 <= k <= n");
    double nk = static_cast<double>(n) / k;
    return BinomBounds{std::pow(nk, k), static_cast<double>(binomial_exact(n, k)),
                       std::pow(M_E * nk, k)};
}

/// ∫_0^1 s^a (1-s)^b ds = 1 / ((a+b+1) C(a+b, a)) for integers a, b >= 0.
inline double beta_integral(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("beta_integral: negative input");
    if (a + b <= 62) {
        return 1.0 / ((a + b + 1.0) * static_cast<double>(binomial_exact(a + b, a)));
    }
    return std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
}

/// Real-parameter Beta function B(p, q); the continuous extension used where
/// an exponent alpha·n is not an integer.
inline double beta_real(double p, double q) {
    return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
}

}  // namespace isoslice
