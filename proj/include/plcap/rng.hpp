#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace plcap {

// Philox4x32-10 counter-based generator. Every estimator in the library
// derives its randomness from (seed, sample_index, word), so results are
// reproducible bit-for-bit and independent of thread count or batching.
namespace philox {

inline constexpr uint32_t kMul0 = 0xD2511F53u;
inline constexpr uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<uint32_t, 4> block(uint64_t seed, uint64_t sample_index,
                                     uint32_t word_block) {
    uint32_t c0 = word_block;
    uint32_t c1 = 0;
    uint32_t c2 = (uint32_t)(sample_index);
    uint32_t c3 = (uint32_t)(sample_index >> 32);
    uint32_t k0 = (uint32_t)(seed);
    uint32_t k1 = (uint32_t)(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        const uint64_t p0 = (uint64_t)kMul0 * c0;
        const uint64_t p1 = (uint64_t)kMul1 * c2;
        const uint32_t hi0 = (uint32_t)(p0 >> 32), lo0 = (uint32_t)p0;
        const uint32_t hi1 = (uint32_t)(p1 >> 32), lo1 = (uint32_t)p1;
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
}

// Double in [0,1) from two 32-bit words (53 significant bits).
inline double u01(uint32_t a, uint32_t b) {
    const uint64_t u = ((uint64_t)a << 32) | b;
    return (double)(u >> 11) * 0x1.0p-53;
}

}  // namespace philox

// Stream of variates attached to one (seed, sample_index) pair.
class SampleRng {
public:
    SampleRng(uint64_t seed, uint64_t sample_index)
        : seed_(seed), index_(sample_index) {}

    double u01() {
        if (pos_ >= 4) refill();
        const uint32_t a = buf_[pos_], b = buf_[pos_ + 1];
        pos_ += 2;
        return philox::u01(a, b);
    }

    // Uniform in [a,b)
    double uniform(double a, double b) { return a + (b - a) * u01(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Box-Muller; clamp away from 0 so log stays finite.
        const double u1 = std::max(u01(), 0x1.0p-60);
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    void refill() {
        buf_ = philox::block(seed_, index_, word_block_++);
        pos_ = 0;
    }

    uint64_t seed_;
    uint64_t index_;
    uint32_t word_block_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace plcap
