// AVX2+FMA variants of the kernels in kernels_scalar.cpp. Compiled only on
// x86-64 (see src/CMakeLists.txt); selected at runtime after a cpuid check.

#include "plcap/kernels.hpp"

#if defined(PLCAP_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "plcap/rng.hpp"

namespace plcap::kern {

namespace {

// 32x32 -> (hi, lo) for all eight 32-bit lanes.
inline void mul_hilo_epu32(__m256i a, __m256i m, __m256i& hi, __m256i& lo) {
    const __m256i even = _mm256_mul_epu32(a, m);
    const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);
    lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

void philox_u01_fill_avx2(uint64_t seed, uint64_t first_sample,
                          size_t nsamples, int blocks, double* out) {
    const size_t total = nsamples * (size_t)blocks;
    const __m256i m0 = _mm256_set1_epi32((int)philox::kMul0);
    const __m256i m1 = _mm256_set1_epi32((int)philox::kMul1);
    const __m256i w0 = _mm256_set1_epi32((int)philox::kWeyl0);
    const __m256i w1 = _mm256_set1_epi32((int)philox::kWeyl1);

    size_t f = 0;
    alignas(32) uint32_t lane[4][8];
    for (; f + 8 <= total; f += 8) {
        alignas(32) uint32_t a0[8], a2[8], a3[8];
        for (int j = 0; j < 8; ++j) {
            const size_t g = f + j;
            const uint64_t s = first_sample + g / (size_t)blocks;
            a0[j] = (uint32_t)(g % (size_t)blocks);
            a2[j] = (uint32_t)s;
            a3[j] = (uint32_t)(s >> 32);
        }
        __m256i c0 = _mm256_load_si256((const __m256i*)a0);
        __m256i c1 = _mm256_setzero_si256();
        __m256i c2 = _mm256_load_si256((const __m256i*)a2);
        __m256i c3 = _mm256_load_si256((const __m256i*)a3);
        __m256i k0 = _mm256_set1_epi32((int)(uint32_t)seed);
        __m256i k1 = _mm256_set1_epi32((int)(uint32_t)(seed >> 32));
        for (int round = 0; round < 10; ++round) {
            __m256i hi0, lo0, hi1, lo1;
            mul_hilo_epu32(c0, m0, hi0, lo0);
            mul_hilo_epu32(c2, m1, hi1, lo1);
            c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
            c1 = lo1;
            c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
            c3 = lo0;
            k0 = _mm256_add_epi32(k0, w0);
            k1 = _mm256_add_epi32(k1, w1);
        }
        _mm256_store_si256((__m256i*)lane[0], c0);
        _mm256_store_si256((__m256i*)lane[1], c1);
        _mm256_store_si256((__m256i*)lane[2], c2);
        _mm256_store_si256((__m256i*)lane[3], c3);
        for (int j = 0; j < 8; ++j) {
            const size_t g = f + j;
            out[2 * g] = philox::u01(lane[0][j], lane[1][j]);
            out[2 * g + 1] = philox::u01(lane[2][j], lane[3][j]);
        }
    }
    for (; f < total; ++f) {
        const uint64_t s = first_sample + f / (size_t)blocks;
        const auto b = philox::block(seed, s, (uint32_t)(f % (size_t)blocks));
        out[2 * f] = philox::u01(b[0], b[1]);
        out[2 * f + 1] = philox::u01(b[2], b[3]);
    }
}

void sqdist_avx2(const double* const* cols, const double* center, int dim,
                 size_t n, double* out) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_setzero_pd());
    for (; i < n; ++i) out[i] = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double* x = cols[d];
        const __m256d c = _mm256_set1_pd(center[d]);
        size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(x + j), c);
            const __m256d acc = _mm256_loadu_pd(out + j);
            _mm256_storeu_pd(out + j, _mm256_fmadd_pd(t, t, acc));
        }
        for (; j < n; ++j) {
            const double t = x[j] - center[d];
            out[j] = std::fma(t, t, out[j]);
        }
    }
}

size_t count_le_avx2(const double* vals, size_t n, double bound) {
    const __m256d b = _mm256_set1_pd(bound);
    size_t k = 0, i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(vals + i);
        const int m = _mm256_movemask_pd(_mm256_cmp_pd(v, b, _CMP_LE_OQ));
        k += (size_t)__builtin_popcount(m);
    }
    for (; i < n; ++i) k += (vals[i] <= bound) ? 1 : 0;
    return k;
}

void mask_le_avx2(const double* vals, size_t n, double bound, uint8_t* mask) {
    const __m256d b = _mm256_set1_pd(bound);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(vals + i);
        const int m = _mm256_movemask_pd(_mm256_cmp_pd(v, b, _CMP_LE_OQ));
        mask[i] = (uint8_t)(m & 1);
        mask[i + 1] = (uint8_t)((m >> 1) & 1);
        mask[i + 2] = (uint8_t)((m >> 2) & 1);
        mask[i + 3] = (uint8_t)((m >> 3) & 1);
    }
    for (; i < n; ++i) mask[i] = (vals[i] <= bound) ? 1 : 0;
}

double psor_sweep_avx2(double* h, const double* psi, const double* momega,
                       int nx, int ny) {
    const __m256d quarter = _mm256_set1_pd(0.25);
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d maxv = _mm256_setzero_pd();
    double maxd = 0.0;
    for (int y = 1; y < ny - 1; ++y) {
        const size_t row = (size_t)y * nx;
        int x = 1;
        for (; x + 4 <= nx - 1; x += 4) {
            const size_t i = row + x;
            const __m256d hc = _mm256_loadu_pd(h + i);
            const __m256d s1 =
                _mm256_add_pd(_mm256_loadu_pd(h + i - 1), _mm256_loadu_pd(h + i + 1));
            const __m256d s2 = _mm256_add_pd(_mm256_loadu_pd(h + i - nx),
                                             _mm256_loadu_pd(h + i + nx));
            const __m256d avg = _mm256_mul_pd(_mm256_add_pd(s1, s2), quarter);
            const __m256d diff = _mm256_sub_pd(avg, hc);
            const __m256d mo = _mm256_loadu_pd(momega + i);
            const __m256d cand = _mm256_fmadd_pd(mo, diff, hc);
            const __m256d nh = _mm256_min_pd(_mm256_loadu_pd(psi + i), cand);
            const __m256d ad = _mm256_andnot_pd(sign, _mm256_sub_pd(nh, hc));
            maxv = _mm256_max_pd(maxv, ad);
            _mm256_storeu_pd(h + i, nh);
        }
        for (; x < nx - 1; ++x) {
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
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, maxv);
    for (double v : lanes) maxd = std::max(maxd, v);
    return maxd;
}

}  // namespace

const Ops* avx2_ops() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
        return nullptr;
    static const Ops ops = {
        "avx2",        philox_u01_fill_avx2, sqdist_avx2,
        count_le_avx2, mask_le_avx2,         psor_sweep_avx2,
    };
    return &ops;
}

}  // namespace plcap::kern

#else

namespace plcap::kern {
const Ops* avx2_ops() { return nullptr; }
}  // namespace plcap::kern

#endif  // PLCAP_HAVE_AVX2
