#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "isoslice/linalg.hpp"

namespace isoslice {

/// SplitMix64 step; used to derive well-separated sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed for a labeled child stream (chunk index, stage id...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
    std::uint64_t s = seed ^ (0x4cf5ad432745937fULL * (label + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return derive_seed(seed, h);
}

/// Seeded stream with hand-rolled double transforms.
///
/// mt19937_64's output sequence is pinned by the standard; the distribution
/// transforms are written out here so results are bit-identical across
/// standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // Lemire-style rejection-free bound would be overkill here; modulo
        // bias is < 2^-53 for the small n used in the samplers.
        return engine_() % n;
    }

    /// Standard normal via Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    Vec normal_vector(int dim) {
        Vec x(dim);
        for (int i = 0; i < dim; ++i) x[i] = normal();
        return x;
    }

    /// Uniform direction on S^{dim-1}.
    Vec sphere_direction(int dim) {
        Vec x = normal_vector(dim);
        double nrm = x.norm();
        while (nrm < 1e-300) {
            x = normal_vector(dim);
            nrm = x.norm();
        }
        return x / nrm;
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace isoslice
