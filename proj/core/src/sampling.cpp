#include "isoslice/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "isoslice/parallel.hpp"
#include "isoslice/rng.hpp"

namespace isoslice {

namespace {

double bbox_volume(const Vec& sb) {
    double v = 1.0;
    for (int i = 0; i < sb.size(); ++i) v *= 2.0 * sb[i];
    return v;
}

Vec random_box_point(Rng& rng, const Vec& sb) {
    Vec x(sb.size());
    for (int i = 0; i < sb.size(); ++i) x[i] = rng.uniform(-sb[i], sb[i]);
    return x;
}

double acceptance_ratio(const Body& body, const Vec& sb, std::uint64_t seed) {
    if (auto v = body.closed_volume()) return *v / bbox_volume(sb);
    Rng rng(derive_seed(seed, "acceptance-probe"));
    const int trials = 4096;
    int hits = 0;
    for (int t = 0; t < trials; ++t)
        if (body.gauge(random_box_point(rng, sb)) <= 1.0) ++hits;
    return static_cast<double>(hits) / trials;
}

void rejection_fill(const Body& body, const Vec& sb, Mat& out, Rng& rng) {
    const std::int64_t cap = 50'000'000;
    std::int64_t proposals = 0;
    for (int r = 0; r < out.rows(); ++r) {
        for (;;) {
            if (++proposals > cap)
                throw std::runtime_error("uniform_sample: acceptance collapsed");
            Vec x = random_box_point(rng, sb);
            if (body.gauge(x) <= 1.0) {
                out.row(r) = x.transpose();
                break;
            }
        }
    }
}

void hit_and_run_fill(const Body& body, Mat& out, Rng& rng) {
    const int n = body.dim();
    const int burn_in = 10 * n * n;
    const int thin = n * n;
    const double reach = body.out_radius() + 1.0;
    Vec x = Vec::Zero(n);
    auto step = [&]() {
        Vec u = rng.sphere_direction(n);
        // The chord {t : gauge(x + t u) <= 1} is an interval containing 0.
        auto boundary = [&](double dir) {
            double lo = 0.0, hi = reach + x.norm();
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                if (body.gauge(x + dir * mid * u) <= 1.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return dir * lo;
        };
        double tp = boundary(1.0), tm = boundary(-1.0);
        x += rng.uniform(tm, tp) * u;
    };
    for (int b = 0; b < burn_in; ++b) step();
    for (int r = 0; r < out.rows(); ++r) {
        for (int s = 0; s < thin; ++s) step();
        out.row(r) = x.transpose();
    }
}

}  // namespace

Mat uniform_sample(const Body& body, std::int64_t count, std::uint64_t seed,
                   const SampleOptions& opts) {
    if (count < 1) throw std::invalid_argument("uniform_sample: count < 1");
    Vec sb = body.support_box();
    double acc = acceptance_ratio(body, sb, seed);
    bool use_rejection = opts.allow_rejection && acc >= opts.min_acceptance;
    if (!use_rejection && !opts.allow_hit_and_run)
        throw std::runtime_error(
            "uniform_sample: acceptance below threshold and hit-and-run disabled");

    std::int64_t n_chunks = (count + kChunkSamples - 1) / kChunkSamples;
    std::vector<Mat> parts(n_chunks);
    run_chunks(n_chunks, [&](std::int64_t c) {
        std::int64_t lo = c * kChunkSamples;
        std::int64_t cnt = std::min<std::int64_t>(kChunkSamples, count - lo);
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        parts[c].resize(cnt, body.dim());
        if (use_rejection)
            rejection_fill(body, sb, parts[c], rng);
        else
            hit_and_run_fill(body, parts[c], rng);
    });
    Mat out(count, body.dim());
    std::int64_t r = 0;
    for (const auto& p : parts) {
        out.middleRows(r, p.rows()) = p;
        r += p.rows();
    }
    return out;
}

Estimate mc_mean(std::int64_t count, std::uint64_t seed,
                 const std::function<double(Rng&)>& fn) {
    std::int64_t n_chunks = (count + kChunkSamples - 1) / kChunkSamples;
    std::vector<MeanAccumulator> parts(n_chunks);
    run_chunks(n_chunks, [&](std::int64_t c) {
        std::int64_t lo = c * kChunkSamples;
        std::int64_t cnt = std::min<std::int64_t>(kChunkSamples, count - lo);
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        for (std::int64_t i = 0; i < cnt; ++i) parts[c].add(fn(rng));
    });
    MeanAccumulator total;
    for (const auto& p : parts) total.merge(p);
    return total.estimate(seed);
}

std::pair<Estimate, Mat> polar_volume_covariance(const Body& body) {
    const int n = body.dim();
    auto eval = [&](const SphereQuadrature& q) {
        double vol_acc = 0.0;
        Mat sec = Mat::Zero(n, n);
        for (int i = 0; i < q.size(); ++i) {
            Vec th = q.direction(i);
            double r = body.radial(th);
            vol_acc += q.weights[i] * std::pow(r, n);
            sec += (q.weights[i] * std::pow(r, n + 2)) * (th * th.transpose());
        }
        double vol = q.sphere_area / n * vol_acc;
        Mat cov = q.sphere_area / (n + 2) * sec / vol;
        return std::make_pair(vol, cov);
    };
    auto fine = SphereQuadrature::standard(n);
    int coarse_level = n == 2 ? 360 : n == 3 ? 32 : n == 4 ? 11 : 90;
    SphereQuadrature coarse = SphereQuadrature::build(n, coarse_level);
    auto [v1, c1] = eval(*fine);
    auto [v0, c0] = eval(coarse);
    Estimate vol{v1, std::abs(v1 - v0), fine->size(), 0};
    (void)c0;
    return {vol, c1};
}

Estimate volume(const Body& body, std::int64_t mc_trials, std::uint64_t seed) {
    if (auto v = body.closed_volume()) return Estimate::exact(*v);
    if (body.kind() == BodyKind::DensityInduced) return polar_volume_covariance(body).first;
    Vec sb = body.support_box();
    double bbox = bbox_volume(sb);
    Estimate hit = mc_mean(mc_trials, derive_seed(seed, "volume"), [&](Rng& rng) {
        return body.gauge(random_box_point(rng, sb)) <= 1.0 ? 1.0 : 0.0;
    });
    return hit.scaled(bbox);
}

CovarianceMatrix covariance(const Body& body, std::int64_t n_samples, std::uint64_t seed) {
    CovarianceMatrix out;
    out.seed = seed;
    if (body.kind() == BodyKind::DensityInduced) {
        auto [vol, cov] = polar_volume_covariance(body);
        (void)vol;
        out.matrix = cov;
        out.provenance = "polar-quadrature(" + body.name() + ")";
        out.n_samples = SphereQuadrature::standard(body.dim())->size();
        return out;
    }
    Mat x = uniform_sample(body, n_samples, derive_seed(seed, "covariance"));
    out.matrix = x.transpose() * x / static_cast<double>(n_samples);
    out.provenance = "mc(" + body.name() + ")";
    out.n_samples = n_samples;
    return out;
}

CovarianceMatrix covariance(const Density& f, std::int64_t n_samples, std::uint64_t seed) {
    CovarianceMatrix out;
    out.seed = seed;
    const int n = f.dim;
    if (f.bounded_support()) {
        Mat x = uniform_sample(*f.support, n_samples, derive_seed(seed, "density-cov"));
        Mat sec = Mat::Zero(n, n);
        double wsum = 0.0;
        for (int i = 0; i < x.rows(); ++i) {
            double w = f(x.row(i).transpose());
            wsum += w;
            sec += w * x.row(i).transpose() * x.row(i);
        }
        if (wsum <= 0.0) throw std::domain_error("covariance: density has zero mass");
        out.matrix = sec / wsum;
        out.provenance = "importance(" + f.name + ")";
        out.n_samples = n_samples;
        return out;
    }
    auto quad = SphereQuadrature::standard(n);
    Mat num = Mat::Zero(n, n);
    double den = 0.0;
    for (int i = 0; i < quad->size(); ++i) {
        Vec th = quad->direction(i);
        num += quad->weights[i] * radial_moment(f, th, n + 1) * (th * th.transpose());
        den += quad->weights[i] * radial_moment(f, th, n - 1);
    }
    if (den <= 0.0) throw std::domain_error("covariance: density has zero mass");
    out.matrix = num / den;
    out.provenance = "radial-quadrature(" + f.name + ")";
    out.n_samples = quad->size();
    return out;
}

Estimate density_mass(const Density& f, std::int64_t n_samples, std::uint64_t seed) {
    const int n = f.dim;
    if (f.bounded_support()) {
        const Body& supp = *f.support;
        Estimate supp_vol = volume(supp, n_samples, derive_seed(seed, "mass-vol"));
        Mat x = uniform_sample(supp, n_samples, derive_seed(seed, "mass"));
        MeanAccumulator acc;
        for (int i = 0; i < x.rows(); ++i) acc.add(f(x.row(i).transpose()));
        Estimate mean = acc.estimate(seed);
        double value = mean.value * supp_vol.value;
        double rel2 = 0.0;
        if (mean.value > 0.0) rel2 += std::pow(mean.std_error / mean.value, 2);
        if (supp_vol.value > 0.0) rel2 += std::pow(supp_vol.std_error / supp_vol.value, 2);
        return Estimate{value, value > 0 ? value * std::sqrt(rel2) : 0.0, n_samples, seed};
    }
    auto quad = SphereQuadrature::standard(n);
    int coarse_level = n == 2 ? 360 : n == 3 ? 32 : n == 4 ? 11 : 90;
    SphereQuadrature coarse = SphereQuadrature::build(n, coarse_level);
    auto total = [&](const SphereQuadrature& q) {
        double s = 0.0;
        for (int i = 0; i < q.size(); ++i)
            s += q.weights[i] * radial_moment(f, q.direction(i), n - 1);
        return q.sphere_area * s;
    };
    double v1 = total(*quad), v0 = total(coarse);
    return Estimate{v1, std::abs(v1 - v0), quad->size(), 0};
}

namespace {

double iso_constant_from(double vol, const Mat& cov) {
    const int n = static_cast<int>(cov.rows());
    Eigen::SelfAdjointEigenSolver<Mat> es(cov);
    double logdet = es.eigenvalues().array().max(1e-300).log().sum();
    return std::exp(logdet / (2.0 * n)) / std::pow(vol, 1.0 / n);
}

}  // namespace

Estimate isotropic_constant_body(const Body& body, std::int64_t n_samples,
                                 std::uint64_t seed) {
    const int n = body.dim();
    if (body.kind() == BodyKind::DensityInduced) {
        auto eval = [&](const SphereQuadrature& q) {
            double vol_acc = 0.0;
            Mat sec = Mat::Zero(n, n);
            for (int i = 0; i < q.size(); ++i) {
                Vec th = q.direction(i);
                double r = body.radial(th);
                vol_acc += q.weights[i] * std::pow(r, n);
                sec += (q.weights[i] * std::pow(r, n + 2)) * (th * th.transpose());
            }
            double vol = q.sphere_area / n * vol_acc;
            Mat cov = q.sphere_area / (n + 2) * sec / vol;
            return iso_constant_from(vol, cov);
        };
        auto fine = SphereQuadrature::standard(n);
        int coarse_level = n == 2 ? 360 : n == 3 ? 32 : n == 4 ? 11 : 90;
        SphereQuadrature coarse = SphereQuadrature::build(n, coarse_level);
        double l1 = eval(*fine), l0 = eval(coarse);
        return Estimate{l1, std::abs(l1 - l0), fine->size(), 0};
    }
    const int replicates = 8;
    std::int64_t per = std::max<std::int64_t>(n_samples / replicates, 512);
    MeanAccumulator ls;
    for (int r = 0; r < replicates; ++r) {
        std::uint64_t s = derive_seed(seed, derive_seed(r + 1, "lk-replicate"));
        double vol;
        if (auto cv = body.closed_volume())
            vol = *cv;
        else
            vol = volume(body, per, s).value;
        Mat x = uniform_sample(body, per, derive_seed(s, "samples"));
        Mat cov = x.transpose() * x / static_cast<double>(per);
        ls.add(iso_constant_from(vol, cov));
    }
    Estimate e = ls.estimate(seed);
    e.n_samples = per * replicates;
    return e;
}

Estimate isotropic_constant_density(const Density& f, std::int64_t n_samples,
                                    std::uint64_t seed) {
    if (!(f.f0 > 0.0)) throw std::domain_error("isotropic_constant_density: f(0) = 0");
    const int n = f.dim;
    if (f.bounded_support()) {
        const int replicates = 8;
        std::int64_t per = std::max<std::int64_t>(n_samples / replicates, 512);
        const Body& supp = *f.support;
        double supp_vol;
        if (auto cv = supp.closed_volume())
            supp_vol = *cv;
        else
            supp_vol = volume(supp, n_samples, derive_seed(seed, "suppvol")).value;
        MeanAccumulator ls;
        for (int r = 0; r < replicates; ++r) {
            std::uint64_t s = derive_seed(seed, derive_seed(r + 1, "lf-replicate"));
            Mat x = uniform_sample(supp, per, s);
            Mat sec = Mat::Zero(n, n);
            double wsum = 0.0;
            for (int i = 0; i < x.rows(); ++i) {
                double w = f(x.row(i).transpose());
                wsum += w;
                sec += w * x.row(i).transpose() * x.row(i);
            }
            if (wsum <= 0.0) throw std::domain_error("isotropic_constant_density: zero mass");
            double mass = supp_vol * wsum / per;
            Mat cov = sec / wsum;
            Eigen::SelfAdjointEigenSolver<Mat> es(cov);
            double logdet = es.eigenvalues().array().max(1e-300).log().sum();
            ls.add(std::pow(f.f0 / mass, 1.0 / n) * std::exp(logdet / (2.0 * n)));
        }
        Estimate e = ls.estimate(seed);
        e.n_samples = per * replicates;
        return e;
    }
    auto eval = [&](const SphereQuadrature& q) {
        Mat num = Mat::Zero(n, n);
        double den = 0.0;
        for (int i = 0; i < q.size(); ++i) {
            Vec th = q.direction(i);
            num += q.weights[i] * radial_moment(f, th, n + 1) * (th * th.transpose());
            den += q.weights[i] * radial_moment(f, th, n - 1);
        }
        double mass = q.sphere_area * den;
        Mat cov = num / den;
        Eigen::SelfAdjointEigenSolver<Mat> es(cov);
        double logdet = es.eigenvalues().array().max(1e-300).log().sum();
        return std::pow(f.f0 / mass, 1.0 / n) * std::exp(logdet / (2.0 * n));
    };
    auto fine = SphereQuadrature::standard(n);
    int coarse_level = n == 2 ? 360 : n == 3 ? 32 : n == 4 ? 11 : 90;
    SphereQuadrature coarse = SphereQuadrature::build(n, coarse_level);
    double l1 = eval(*fine), l0 = eval(coarse);
    return Estimate{l1, std::abs(l1 - l0), fine->size(), 0};
}

std::pair<LinearMap, Body> isotropic_transform(const Body& body, std::int64_t n_samples,
                                               std::uint64_t seed) {
    Mat cov = covariance(body, n_samples, derive_seed(seed, "iso-cov")).matrix;
    double vol;
    if (auto cv = body.closed_volume())
        vol = *cv;
    else
        vol = volume(body, n_samples, derive_seed(seed, "iso-vol")).value;
    const int n = body.dim();
    Eigen::SelfAdjointEigenSolver<Mat> es(cov);
    double logdet = es.eigenvalues().array().max(1e-300).log().sum();
    double s = std::exp((0.5 * logdet - std::log(vol)) / n);
    LinearMap map(s * spd_inv_sqrt(cov));
    return {map, body.transformed(map)};
}

NormFunctionals norm_functionals(const Body& body, const SphereQuadrature& quad) {
    if (quad.dim != body.dim())
        throw std::invalid_argument("norm_functionals: quadrature dimension mismatch");
    NormFunctionals out;
    std::vector<std::pair<double, double>> gauges(quad.size());
    for (int i = 0; i < quad.size(); ++i) {
        Vec th = quad.direction(i);
        double g = body.gauge(th);
        out.M += quad.weights[i] * g;
        out.M_star += quad.weights[i] * body.support(th);
        gauges[i] = {g, quad.weights[i]};
    }
    std::sort(gauges.begin(), gauges.end());
    double cum = 0.0;
    out.M_prime = gauges.back().first;
    for (const auto& [g, w] : gauges) {
        cum += w;
        if (cum >= 0.5 - 1e-15) {
            out.M_prime = g;  // lower weighted median
            break;
        }
    }
    out.grid_error = quad.moment_defect;
    return out;
}

NormFunctionals norm_functionals(const Body& body) {
    return norm_functionals(body, *SphereQuadrature::standard(body.dim()));
}

}  // namespace isoslice
