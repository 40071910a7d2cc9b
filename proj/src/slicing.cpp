#include "plcap/slicing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plcap/optim.hpp"
#include "plcap/rng.hpp"

namespace plcap {

namespace {

struct RatioEstimate {
    double ratio = -1.0;  // -1: degenerate slice
    double std_error = 0.0;
};

// K cap L for L = {a + zeta*w}: the ball slice is the disc
// |zeta + conj(q)| <= |q| with q = <w, a-c>, when a lies on the boundary.
RatioEstimate complex_slice_ratio(const Region& K, const Ball& B, const RVec& a,
                                  const CVec& w, uint64_t n_samples, uint64_t seed) {
    const AmbientSpace sp = B.space;
    const CVec ac = embed(sp, a);
    const CVec cc = embed(sp, B.center);
    Complex q(0.0, 0.0);
    for (int j = 0; j < sp.n; ++j) q += w[(size_t)j] * std::conj(ac[(size_t)j] - cc[(size_t)j]);
    const double qr = std::abs(q);
    if (qr < 1e-12 * B.radius) return {};

    const Complex disc_center = -std::conj(q);
    uint64_t hits = 0;
    RVec x((size_t)sp.real_dim());
    for (uint64_t i = 0; i < n_samples; ++i) {
        SampleRng rng(seed, i);
        const double r = qr * std::sqrt(rng.u01());
        const double t = 2.0 * std::numbers::pi * rng.u01();
        const Complex zeta = disc_center + Complex(r * std::cos(t), r * std::sin(t));
        for (int j = 0; j < sp.m; ++j) {
            const Complex p = ac[(size_t)j] + zeta * w[(size_t)j];
            x[(size_t)(2 * j)] = p.real();
            x[(size_t)(2 * j + 1)] = p.imag();
        }
        // complex lines stay inside G only when G = C^n
        if (K.contains(x)) ++hits;
    }
    const double p = (double)hits / (double)n_samples;
    return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / (double)n_samples)};
}

RatioEstimate real_slice_ratio(const Region& K, const Ball& B, const RVec& a,
                               const RVec& w, uint64_t n_samples, uint64_t seed) {
    const int dim = B.space.real_dim();
    double sw = 0.0, s2 = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double sd = a[(size_t)d] - B.center[(size_t)d];
        sw += sd * w[(size_t)d];
        s2 += sd * sd;
    }
    const double disc = sw * sw - (s2 - B.radius * B.radius);
    if (disc <= 1e-24 * B.radius * B.radius) return {};
    const double t_lo = -sw - std::sqrt(disc), t_hi = -sw + std::sqrt(disc);

    uint64_t hits = 0;
    RVec x((size_t)dim);
    for (uint64_t i = 0; i < n_samples; ++i) {
        SampleRng rng(seed, i);
        const double t = t_lo + (t_hi - t_lo) * rng.u01();
        for (int d = 0; d < dim; ++d) x[(size_t)d] = a[(size_t)d] + t * w[(size_t)d];
        if (K.contains(x)) ++hits;
    }
    const double p = (double)hits / (double)n_samples;
    return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / (double)n_samples)};
}

CVec gaussian_direction_complex(int n, const std::vector<double>& u) {
    // 2n uniforms -> 2n gaussians -> normalized complex vector
    CVec w((size_t)n);
    double norm2 = 0.0;
    std::vector<double> g((size_t)(2 * n));
    for (int k = 0; 2 * k < 2 * n; ++k) {
        const double u1 = std::min(std::max(u[(size_t)(2 * k)], 0x1.0p-60), 1.0 - 0x1.0p-60);
        const double u2 = u[(size_t)(2 * k + 1)];
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        g[(size_t)(2 * k)] = r * std::cos(t);
        if (2 * k + 1 < 2 * n) g[(size_t)(2 * k + 1)] = r * std::sin(t);
    }
    for (double v : g) norm2 += v * v;
    const double nrm = norm2 > 0.0 ? std::sqrt(norm2) : 1.0;
    for (int j = 0; j < n; ++j)
        w[(size_t)j] = Complex(g[(size_t)(2 * j)] / nrm, g[(size_t)(2 * j + 1)] / nrm);
    return w;
}

RVec gaussian_direction_real(int dim, const std::vector<double>& u) {
    RVec g((size_t)dim);
    for (int k = 0; 2 * k < dim + 1; ++k) {
        const double u1 = std::min(std::max(u[(size_t)(2 * k) % u.size()], 0x1.0p-60),
                                   1.0 - 0x1.0p-60);
        const double u2 = u[(size_t)(2 * k + 1) % u.size()];
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        if (2 * k < dim) g[(size_t)(2 * k)] = r * std::cos(t);
        if (2 * k + 1 < dim) g[(size_t)(2 * k + 1)] = r * std::sin(t);
    }
    double n2 = 0.0;
    for (double v : g) n2 += v * v;
    const double nrm = n2 > 0.0 ? std::sqrt(n2) : 1.0;
    for (double& v : g) v /= nrm;
    return g;
}

}  // namespace

SliceWitness slice_search_complex(const Region& K, const Ball& B, const RVec& a,
                                  int n_directions, const SliceSearchConfig& cfg) {
    const AmbientSpace sp = B.space;
    if (!sp.full_complex())
        throw std::invalid_argument("slice_search_complex: ambient must be C^n");
    if (!(K.space() == sp)) throw std::invalid_argument("slice_search_complex: space");
    if (n_directions < 1) throw std::invalid_argument("slice_search_complex: directions");

    Sobol sobol(std::min(2 * sp.n, 12));
    CVec best_w;
    double best_ratio = -1.0;
    int tried = 0;
    for (int i = 0; i < n_directions; ++i) {
        auto u = sobol.next();
        u.resize((size_t)(2 * sp.n), 0.5);
        const CVec w = gaussian_direction_complex(sp.n, u);
        const auto est =
            complex_slice_ratio(K, B, a, w, cfg.samples_per_slice, cfg.seed + 17 * i);
        if (est.ratio < 0.0) continue;
        ++tried;
        if (est.ratio > best_ratio) {
            best_ratio = est.ratio;
            best_w = w;
        }
    }
    if (best_ratio < 0.0)
        throw std::runtime_error("slice_search_complex: all slices degenerate");

    // local refinement on the real parametrization of the direction
    std::vector<double> x0((size_t)(2 * sp.n));
    for (int j = 0; j < sp.n; ++j) {
        x0[(size_t)(2 * j)] = best_w[(size_t)j].real();
        x0[(size_t)(2 * j + 1)] = best_w[(size_t)j].imag();
    }
    const uint64_t refine_samples = 4 * cfg.samples_per_slice;
    auto obj = [&](const std::vector<double>& x) {
        double n2 = 0.0;
        for (double v : x) n2 += v * v;
        if (n2 < 1e-12) return 1e300;
        CVec w((size_t)sp.n);
        const double nrm = std::sqrt(n2);
        for (int j = 0; j < sp.n; ++j)
            w[(size_t)j] = Complex(x[(size_t)(2 * j)] / nrm, x[(size_t)(2 * j + 1)] / nrm);
        const auto est = complex_slice_ratio(K, B, a, w, refine_samples, cfg.seed + 101);
        return est.ratio < 0.0 ? 1e300 : -est.ratio;
    };
    const auto nm = nelder_mead(obj, x0, 0.15, cfg.refine_iters);
    CVec w = best_w;
    if (std::isfinite(nm.value) && -nm.value >= best_ratio) {
        double n2 = 0.0;
        for (double v : nm.x) n2 += v * v;
        const double nrm = std::sqrt(n2);
        for (int j = 0; j < sp.n; ++j)
            w[(size_t)j] =
                Complex(nm.x[(size_t)(2 * j)] / nrm, nm.x[(size_t)(2 * j + 1)] / nrm);
    }

    const auto fin = complex_slice_ratio(K, B, a, w, cfg.final_samples, cfg.seed + 211);
    SliceWitness out;
    out.direction.resize((size_t)(2 * sp.n));
    for (int j = 0; j < sp.n; ++j) {
        out.direction[(size_t)(2 * j)] = w[(size_t)j].real();
        out.direction[(size_t)(2 * j + 1)] = w[(size_t)j].imag();
    }
    out.ratio = fin.ratio;
    out.std_error = fin.std_error;
    out.n_samples = cfg.final_samples;
    out.directions_tried = tried;
    return out;
}

SliceWitness slice_search_real(const Region& K, const Ball& B, const RVec& a,
                               int n_directions, const SliceSearchConfig& cfg) {
    const int dim = B.space.real_dim();
    if (!(K.space() == B.space)) throw std::invalid_argument("slice_search_real: space");
    if (n_directions < 1) throw std::invalid_argument("slice_search_real: directions");

    if (dim == 1) {
        // only one line
        const auto est = real_slice_ratio(K, B, a, {1.0}, cfg.final_samples, cfg.seed);
        if (est.ratio < 0.0) throw std::runtime_error("slice_search_real: degenerate");
        return {{1.0}, est.ratio, est.std_error, cfg.final_samples, 1};
    }

    Sobol sobol(std::min(dim + (dim & 1), 12));
    RVec best_w;
    double best_ratio = -1.0;
    int tried = 0;
    for (int i = 0; i < n_directions; ++i) {
        auto u = sobol.next();
        u.resize((size_t)(dim + 2), 0.5);
        const RVec w = gaussian_direction_real(dim, u);
        const auto est = real_slice_ratio(K, B, a, w, cfg.samples_per_slice, cfg.seed + 17 * i);
        if (est.ratio < 0.0) continue;
        ++tried;
        if (est.ratio > best_ratio) {
            best_ratio = est.ratio;
            best_w = w;
        }
    }
    if (best_ratio < 0.0) throw std::runtime_error("slice_search_real: all slices degenerate");

    const uint64_t refine_samples = 4 * cfg.samples_per_slice;
    auto obj = [&](const std::vector<double>& x) {
        double n2 = 0.0;
        for (double v : x) n2 += v * v;
        if (n2 < 1e-12) return 1e300;
        RVec w(x.size());
        const double nrm = std::sqrt(n2);
        for (size_t j = 0; j < x.size(); ++j) w[j] = x[j] / nrm;
        const auto est = real_slice_ratio(K, B, a, w, refine_samples, cfg.seed + 101);
        return est.ratio < 0.0 ? 1e300 : -est.ratio;
    };
    const auto nm = nelder_mead(obj, best_w, 0.15, cfg.refine_iters);
    RVec w = best_w;
    if (std::isfinite(nm.value) && -nm.value >= best_ratio) {
        double n2 = 0.0;
        for (double v : nm.x) n2 += v * v;
        const double nrm = std::sqrt(n2);
        w = nm.x;
        for (double& v : w) v /= nrm;
    }

    const auto fin = real_slice_ratio(K, B, a, w, cfg.final_samples, cfg.seed + 211);
    SliceWitness out;
    out.direction = w;
    out.ratio = fin.ratio;
    out.std_error = fin.std_error;
    out.n_samples = cfg.final_samples;
    out.directions_tried = tried;
    return out;
}

}  // namespace plcap
