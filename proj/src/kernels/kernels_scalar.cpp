#include "plcap/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "plcap/rng.hpp"

namespace plcap::kern {

namespace {

void philox_u01_fill_scalar(uint64_t seed, uint64_t first_sample,
                            size_t nsamples, int blocks, double* out) {
    for (size_t s = 0; s < nsamples; ++s) {
        const uint64_t idx = first_sample + s;
        double* o = out + s * (size_t)(2 * blocks);
        for (int w = 0; w < blocks; ++w) {
            const auto b = philox::block(seed, idx, (uint32_t)w);
            o[2 * w] = philox::u01(b[0], b[1]);
            o[2 * w + 1] = philox::u01(b[2], b[3]);
        }
    }
}

void sqdist_scalar(const double* const* cols, const double* center, int dim,
                   size_t n, double* out) {
    for (size_t i = 0; i < n; ++i) out[i] = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double* x = cols[d];
        const double c = center[d];
        for (size_t i = 0; i < n; ++i) {
            const double t = x[i] - c;
            out[i] = std::fma(t, t, out[i]);
        }
    }
}

size_t count_le_scalar(const double* vals, size_t n, double bound) {
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) k += (vals[i] <= bound) ? 1 : 0;
    return k;
}

void mask_le_scalar(const double* vals, size_t n, double bound, uint8_t* mask) {
    for (size_t i = 0; i < n; ++i) mask[i] = (vals[i] <= bound) ? 1 : 0;
}

double psor_sweep_scalar(double* h, const double* psi, const double* momega,
                         int nx, int ny) {
    double maxd = 0.0;
    for (int y = 1; y < ny - 1; ++y) {
        const size_t row = (size_t)y * nx;
        for (int x = 1; x < nx - 1; ++x) {
            const size_t i = row + x;
            const double s1 = h[i - 1] + h[i + 1];
            const double s2 = h[i - nx] + h[i + nx];
            const double avg = (s1 + s2) * 0.25;
            const double diff = avg - h[i];
            const double nh = std::min(psi[i], std::fma(momega[i], diff, h[i]));
            maxd = std::max(maxd, std::fabs(nh - h[i]));
            h[i] = nh;
        }
    }
    return maxd;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",         philox_u01_fill_scalar, sqdist_scalar,
        count_le_scalar,  mask_le_scalar,         psor_sweep_scalar,
    };
    return ops;
}

}  // namespace plcap::kern
