#pragma once

// Shared Monte Carlo drivers: plain means over a ball and pole-aware
// importance-sampled volume integrals (the exponential moments of potentials
// have infinite plain-MC variance near their poles).

#include <cmath>
#include <numbers>
#include <vector>

#include "plcap/ball.hpp"
#include "plcap/parallel.hpp"
#include "plcap/rng.hpp"

namespace plcap::detail {

struct McStat {
    double mean = 0.0;       // mean of the integrand (plain) or of f/q (IS)
    double std_error = 0.0;  // standard error of that mean
    uint64_t n = 0;
};

// Mean of f over the uniform distribution on B; f takes the real coordinates.
template <class F>
McStat mc_mean_over_ball(const Ball& B, uint64_t n_samples, uint64_t seed, int threads,
                         F&& f) {
    struct Acc {
        double s = 0.0, s2 = 0.0;
        uint64_t n = 0;
    };
    const Acc acc = chunked_reduce<Acc>(
        n_samples, 8192, Acc{},
        [&](uint64_t b, uint64_t e) {
            Acc a;
            RVec x;
            for (uint64_t i = b; i < e; ++i) {
                SampleRng rng(seed, i);
                x = sample_in_ball(B, rng);
                const double v = f(x, rng);
                if (!std::isfinite(v)) continue;  // measure-zero singularity hit
                a.s += v;
                a.s2 += v * v;
                ++a.n;
            }
            return a;
        },
        [](Acc a, Acc b) { return Acc{a.s + b.s, a.s2 + b.s2, a.n + b.n}; }, threads);
    McStat st;
    st.n = acc.n;
    if (acc.n == 0) return st;
    st.mean = acc.s / (double)acc.n;
    const double var = std::max(acc.s2 / (double)acc.n - st.mean * st.mean, 0.0);
    st.std_error = std::sqrt(var / (double)acc.n);
    return st;
}

struct PoleSpec {
    RVec center;        // in the ball's real coordinates
    double gamma = 0.0; // strength of the |x - pole|^{-gamma} singularity
};

// Integral of f over B (Lebesgue, not normalized) by a mixture proposal:
// one uniform component plus one radial component per pole with density
// r^{k-gamma-1}, which keeps f/q bounded near |x-pole|^{-gamma} singularities.
template <class F>
McStat mc_integral_with_poles(const Ball& B, const std::vector<PoleSpec>& poles,
                              uint64_t n_samples, uint64_t seed, int threads, F&& f) {
    const int k = B.space.real_dim();
    const double vol_B = B.volume();
    const double sphere = unit_sphere_area(k);
    const size_t P = poles.size();

    struct Comp {
        RVec c;
        double R;
        double expo;  // k - gamma
    };
    std::vector<Comp> comps;
    comps.reserve(P);
    for (const auto& p : poles) {
        const double dist = std::sqrt(sq_dist(p.center, B.center));
        const double R = std::max(B.radius - dist, 1e-6 * B.radius);
        const double expo = std::max((double)k - p.gamma, 0.25);
        comps.push_back({p.center, R, expo});
    }

    auto density = [&](const RVec& x) {
        double q = 1.0 / vol_B;
        for (const auto& c : comps) {
            const double r = std::sqrt(sq_dist(x, c.c));
            if (r >= c.R || r <= 0.0) continue;
            const double pr = c.expo * std::pow(r / c.R, c.expo) / r;  // radial pdf
            q += pr / (sphere * std::pow(r, (double)(k - 1)));
        }
        return q / (double)(P + 1);
    };

    struct Acc {
        double s = 0.0, s2 = 0.0;
        uint64_t n = 0;
    };
    const Acc acc = chunked_reduce<Acc>(
        n_samples, 8192, Acc{},
        [&](uint64_t b, uint64_t e) {
            Acc a;
            for (uint64_t i = b; i < e; ++i) {
                SampleRng rng(seed, i);
                const size_t comp = (size_t)(rng.u01() * (double)(P + 1));
                RVec x;
                if (comp >= P) {
                    x = sample_in_ball(B, rng);
                } else {
                    const Comp& c = comps[comp];
                    RVec dir = sample_on_sphere(k, rng);
                    const double r = c.R * std::pow(rng.u01(), 1.0 / c.expo);
                    x.resize((size_t)k);
                    for (int d = 0; d < k; ++d)
                        x[(size_t)d] = c.c[(size_t)d] + r * dir[(size_t)d];
                    if (!B.contains(x)) {
                        ++a.n;  // outside the domain: integrand zero, still a draw
                        continue;
                    }
                }
                const double v = f(x, rng) / density(x);
                if (!std::isfinite(v)) continue;
                a.s += v;
                a.s2 += v * v;
                ++a.n;
            }
            return a;
        },
        [](Acc a, Acc b) { return Acc{a.s + b.s, a.s2 + b.s2, a.n + b.n}; }, threads);

    McStat st;
    st.n = acc.n;
    if (acc.n == 0) return st;
    st.mean = acc.s / (double)acc.n;
    const double var = std::max(acc.s2 / (double)acc.n - st.mean * st.mean, 0.0);
    st.std_error = std::sqrt(var / (double)acc.n);
    return st;
}

}  // namespace plcap::detail
