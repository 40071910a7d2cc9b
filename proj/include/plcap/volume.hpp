#pragma once

#include <cstdint>
#include <optional>

#include "plcap/region.hpp"

namespace plcap {

struct VolumeEstimate {
    double value = 0.0;      // Lebesgue volume of K in its subspace
    double std_error = 0.0;  // binomial error scaled by bounding-ball volume
    double relative = 0.0;   // hit fraction relative to the bounding ball
    double relative_std_error = 0.0;
    uint64_t n_samples = 0;
    uint64_t seed = 0;
};

// Unbiased hit-or-miss estimate of lambda(K) with points drawn uniformly from
// the bounding ball. Deterministic given the seed, for any thread count.
VolumeEstimate volume_mc(const Region& K, uint64_t n_samples, uint64_t seed,
                         int threads = 0);

// Volume ratio lambda(K)/lambda(B) for K inside an enclosing ball B, sharing
// the sample stream of volume_mc (common random numbers across regions).
VolumeEstimate relative_volume_mc(const Region& K, const Ball& B, uint64_t n_samples,
                                  uint64_t seed, int threads = 0);

struct SphereMomentEstimate {
    double value = 0.0;  // integral over S^{2n-1} of |w_1|^{2n}, unnormalized
    double std_error = 0.0;
    uint64_t n_samples = 0;
    uint64_t seed = 0;
};

SphereMomentEstimate sphere_moment(int n, uint64_t n_samples, uint64_t seed,
                                   int threads = 0);

// Closed form 4n (n!)^2 / (2n)! * tau_{2n}.
double sphere_moment_exact(int n);

// Exact volume for balls, boxes and coordinate products; nullopt otherwise.
std::optional<double> region_volume_closed_form(const Region& K);

}  // namespace plcap
