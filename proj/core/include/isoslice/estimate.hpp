#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "json.hpp"

namespace isoslice {

/// Scalar measurement with uncertainty. Every Monte Carlo (and quadrature)
/// result travels as an Estimate, never as a bare number. For quadrature
/// results std_error carries the grid-refinement defect and seed is 0.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;

    static Estimate exact(double v) { return Estimate{v, 0.0, 0, 0}; }

    Estimate scaled(double c) const {
        return Estimate{c * value, std::abs(c) * std_error, n_samples, seed};
    }

    /// Ratio of two independent estimates, first-order error propagation.
    static Estimate ratio(const Estimate& num, const Estimate& den) {
        if (den.value == 0.0) throw std::domain_error("Estimate::ratio: zero denominator");
        double v = num.value / den.value;
        double rel2 = 0.0;
        if (num.value != 0.0) rel2 += std::pow(num.std_error / num.value, 2);
        rel2 += std::pow(den.std_error / den.value, 2);
        return Estimate{v, std::abs(v) * std::sqrt(rel2),
                        std::min(num.n_samples, den.n_samples), num.seed};
    }

    nlohmann::ordered_json to_json() const {
        return {{"value", value}, {"std_error", std_error}, {"n", n_samples}, {"seed", seed}};
    }

    static Estimate from_json(const nlohmann::json& j) {
        Estimate e;
        e.value = j.at("value").get<double>();
        e.std_error = j.at("std_error").get<double>();
        e.n_samples = j.at("n").get<std::int64_t>();
        e.seed = j.at("seed").get<std::uint64_t>();
        return e;
    }
};

/// Mean-type accumulator: value = mean, std_error = sd / sqrt(n).
class MeanAccumulator {
  public:
    void add(double x) {
        ++n_;
        sum_ += x;
        sum_sq_ += x * x;
    }
    void merge(const MeanAccumulator& o) {
        n_ += o.n_;
        sum_ += o.sum_;
        sum_sq_ += o.sum_sq_;
    }
    std::int64_t count() const { return n_; }
    double mean() const { return n_ > 0 ? sum_ / n_ : 0.0; }
    double variance() const {
        if (n_ < 2) return 0.0;
        double m = mean();
        double v = (sum_sq_ - n_ * m * m) / (n_ - 1);
        return v > 0.0 ? v : 0.0;
    }
    Estimate estimate(std::uint64_t seed) const {
        return Estimate{mean(), n_ > 1 ? std::sqrt(variance() / n_) : 0.0, n_, seed};
    }

  private:
    std::int64_t n_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

}  // namespace isoslice
