#include "plcap/volume.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plcap/kernels.hpp"
#include "plcap/parallel.hpp"
#include "plcap/rng.hpp"

namespace plcap {

namespace {

constexpr uint64_t kChunk = 8192;

// Fill a column-major batch with uniform points of `ball`, one philox stream
// per sample index.
void fill_ball_points(const Ball& ball, uint64_t first, uint64_t count,
                      const double* uniforms, int blocks, PointBatch& batch) {
    const int dim = ball.space.real_dim();
    const int gpairs = (dim + 1) / 2;
    for (uint64_t s = 0; s < count; ++s) {
        const double* u = uniforms + s * (size_t)(2 * blocks);
        double g[16];
        for (int k = 0; k < gpairs; ++k) {
            const double u1 = std::max(u[2 * k], 0x1.0p-60);
            const double u2 = u[2 * k + 1];
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double t = 2.0 * std::numbers::pi * u2;
            g[2 * k] = r * std::cos(t);
            g[2 * k + 1] = r * std::sin(t);
        }
        double n2 = 0.0;
        for (int d = 0; d < dim; ++d) n2 += g[d] * g[d];
        const double nrm = n2 > 0.0 ? std::sqrt(n2) : 1.0;
        const double rad =
            ball.radius * std::pow(u[2 * gpairs], 1.0 / dim);
        for (int d = 0; d < dim; ++d)
            batch.col(d)[s] = ball.center[(size_t)d] + rad * g[d] / nrm;
    }
    (void)first;
}

uint64_t count_hits(const Region& K, const Ball& ball, uint64_t begin, uint64_t end,
                    uint64_t seed) {
    const int dim = ball.space.real_dim();
    const int gpairs = (dim + 1) / 2;
    const int blocks = gpairs + 1;  // 2*gpairs gaussian uniforms + radius + spare
    const auto& k = kern::active();

    const uint64_t count = end - begin;
    std::vector<double> uniforms(count * (size_t)(2 * blocks));
    k.philox_u01_fill(seed, begin, count, blocks, uniforms.data());

    PointBatch batch(count, dim);
    fill_ball_points(ball, begin, count, uniforms.data(), blocks, batch);

    std::vector<uint8_t> mask(count);
    K.contains_batch(batch, mask.data());
    uint64_t hits = 0;
    for (uint64_t i = 0; i < count; ++i) hits += mask[i];
    return hits;
}

}  // namespace

VolumeEstimate relative_volume_mc(const Region& K, const Ball& B, uint64_t n_samples,
                                  uint64_t seed, int threads) {
    if (n_samples < 1) throw std::invalid_argument("volume_mc: n_samples >= 1");
    if (!(K.space() == B.space))
        throw std::invalid_argument("relative_volume_mc: space mismatch");

    const uint64_t hits = chunked_reduce<uint64_t>(
        n_samples, kChunk, 0,
        [&](uint64_t b, uint64_t e) { return count_hits(K, B, b, e, seed); },
        [](uint64_t a, uint64_t b) { return a + b; }, threads);

    const double p = (double)hits / (double)n_samples;
    const double perr = std::sqrt(std::max(p * (1.0 - p), 0.0) / (double)n_samples);
    VolumeEstimate est;
    est.relative = p;
    est.relative_std_error = perr;
    est.value = p * B.volume();
    est.std_error = perr * B.volume();
    est.n_samples = n_samples;
    est.seed = seed;
    return est;
}

VolumeEstimate volume_mc(const Region& K, uint64_t n_samples, uint64_t seed,
                         int threads) {
    return relative_volume_mc(K, K.bounding_ball(), n_samples, seed, threads);
}

SphereMomentEstimate sphere_moment(int n, uint64_t n_samples, uint64_t seed,
                                   int threads) {
    if (n < 1) throw std::domain_error("sphere_moment: n >= 1 required");
    if (n_samples < 2) throw std::invalid_argument("sphere_moment: need samples");
    const int dim = 2 * n;
    const int blocks = dim / 2;  // dim gaussians = dim uniforms

    struct Acc {
        double sum = 0.0, sum2 = 0.0;
    };
    const auto& k = kern::active();
    const Acc acc = chunked_reduce<Acc>(
        n_samples, kChunk, Acc{},
        [&](uint64_t b, uint64_t e) {
            const uint64_t count = e - b;
            std::vector<double> uniforms(count * (size_t)(2 * blocks));
            k.philox_u01_fill(seed, b, count, blocks, uniforms.data());
            Acc a;
            for (uint64_t s = 0; s < count; ++s) {
                const double* u = uniforms.data() + s * (size_t)(2 * blocks);
                double g[16];
                for (int j = 0; j < blocks; ++j) {
                    const double u1 = std::max(u[2 * j], 0x1.0p-60);
                    const double u2 = u[2 * j + 1];
                    const double r = std::sqrt(-2.0 * std::log(u1));
                    const double t = 2.0 * std::numbers::pi * u2;
                    g[2 * j] = r * std::cos(t);
                    g[2 * j + 1] = r * std::sin(t);
                }
                double n2 = 0.0;
                for (int d = 0; d < dim; ++d) n2 += g[d] * g[d];
                if (n2 <= 0.0) continue;
                const double w1sq = (g[0] * g[0] + g[1] * g[1]) / n2;
                const double v = std::pow(w1sq, (double)n);
                a.sum += v;
                a.sum2 += v * v;
            }
            return a;
        },
        [](Acc a, Acc b) {
            return Acc{a.sum + b.sum, a.sum2 + b.sum2};
        },
        threads);

    const double N = (double)n_samples;
    const double mean = acc.sum / N;
    const double var = std::max(acc.sum2 / N - mean * mean, 0.0);
    const double area = unit_sphere_area(dim);
    SphereMomentEstimate est;
    est.value = mean * area;
    est.std_error = std::sqrt(var / N) * area;
    est.n_samples = n_samples;
    est.seed = seed;
    return est;
}

double sphere_moment_exact(int n) {
    if (n < 1) throw std::domain_error("sphere_moment_exact: n >= 1 required");
    double ratio = 4.0 * n;  // 4n (n!)^2/(2n)!
    for (int k = 1; k <= n; ++k) ratio *= (double)k / (double)(n + k);
    return ratio * unit_ball_volume(2 * n);
}

std::optional<double> region_volume_closed_form(const Region& K) {
    if (const Ball* b = K.as_ball()) return b->volume();
    if (const BoxData* bx = K.as_box()) {
        double v = 1.0;
        for (size_t i = 0; i < bx->lo.size(); ++i) v *= bx->hi[i] - bx->lo[i];
        return v;
    }
    if (const ProductData* pr = K.as_product()) {
        double v = 1.0;
        for (const auto& f : pr->complex_factors) v *= f.area();
        for (const auto& iv : pr->real_factors) v *= iv.length();
        return v;
    }
    if (K.as_finite_set()) return 0.0;
    return std::nullopt;
}

}  // namespace plcap
