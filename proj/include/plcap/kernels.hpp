#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops used by the Monte Carlo estimators and the
// obstacle-problem solver. Each kernel has a scalar reference implementation
// and, on x86-64 with AVX2+FMA, a vector implementation selected at runtime.
// Both variants perform the same arithmetic (same FMA placement, same
// reduction structure), so they agree bit-for-bit; the equivalence tests
// assert exactly that.

namespace plcap::kern {

struct Ops {
    const char* name;

    // Philox4x32-10 uniforms for samples [first, first+nsamples), each sample
    // consuming `blocks` counter blocks of 2 doubles. Layout: sample-major,
    // out[s*2*blocks + 2*w + j]. Matches SampleRng::u01() order.
    void (*philox_u01_fill)(uint64_t seed, uint64_t first_sample,
                            size_t nsamples, int blocks, double* out);

    // out[i] = sum_d (cols[d][i] - center[d])^2, accumulated with FMA in
    // coordinate order.
    void (*sqdist)(const double* const* cols, const double* center, int dim,
                   size_t n, double* out);

    // Number of i with vals[i] <= bound.
    size_t (*count_le)(const double* vals, size_t n, double bound);

    // mask01[i] = vals[i] <= bound ? 1 : 0 (bytes).
    void (*mask_le)(const double* vals, size_t n, double bound, uint8_t* mask);

    // One projected-SOR half sweep over the interior of an nx-by-ny grid.
    // momega[i] is 0 for nodes frozen in this half sweep (wrong colour,
    // Dirichlet, exterior) and omega otherwise; psi is the upper obstacle.
    // h <- min(psi, h + momega*(avg4(h) - h)). Returns max |update|.
    double (*psor_sweep)(double* h, const double* psi, const double* momega,
                         int nx, int ny);
};

// Scalar reference kernels; always available.
const Ops& scalar_ops();

// AVX2+FMA kernels, or nullptr when unsupported (other arch / old CPU).
const Ops* avx2_ops();

// Kernels selected at startup: AVX2 when the CPU supports it, else scalar.
// Override with environment variable PLCAP_SIMD=scalar|avx2.
const Ops& active();

}  // namespace plcap::kern
