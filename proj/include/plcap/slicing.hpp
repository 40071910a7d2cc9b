#pragma once

#include <cstdint>

#include "plcap/region.hpp"

namespace plcap {

// Witness produced by the slice searches: the best line found through the
// anchor point together with the Monte Carlo estimate of its slice ratio.
struct SliceWitness {
    RVec direction;  // complex direction as real pairs, or real unit vector
    double ratio = 0.0;
    double std_error = 0.0;
    uint64_t n_samples = 0;
    int directions_tried = 0;
};

struct SliceSearchConfig {
    uint64_t seed = 1;
    uint64_t samples_per_slice = 4096;
    uint64_t final_samples = 262144;
    int refine_iters = 60;
};

// Searches complex lines through a boundary point a of B for the largest
// 2-D slice ratio lambda_2(K cap L)/lambda_2(B cap L). Directions are drawn
// from a Sobol sequence on the sphere and the best one is refined locally.
SliceWitness slice_search_complex(const Region& K, const Ball& B, const RVec& a,
                                  int n_directions, const SliceSearchConfig& cfg = {});

// Real-line version for balls of a generic subspace; the anchor may be any
// point of B.
SliceWitness slice_search_real(const Region& K, const Ball& B, const RVec& a,
                               int n_directions, const SliceSearchConfig& cfg = {});

}  // namespace plcap
