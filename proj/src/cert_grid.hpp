#pragma once

// Grids with a derivative-based sup-norm certificate, shared by the
// polynomial norm estimator and the Chebyshev optimizer. Each coordinate
// group is either one complex coordinate on a circle (disc factor; maximum
// principle pins the sup to the boundary) or one real coordinate on a
// Chebyshev-angle grid. Freezing groups one at a time gives
//   sup_K |P| <= prod_g inflation_g * max_grid |P|
// with inflation_g = 1/(1 - d*delta_g) from the trigonometric derivative
// bound, delta_g the covering radius in angle.

#include <functional>
#include <vector>

#include "plcap/region.hpp"

namespace plcap::detail {

struct CertGrid {
    bool available = false;
    double inflation = 1.0;
    size_t total = 0;
};

// Reports availability/size/inflation without enumerating.
CertGrid cert_grid_info(const Region& region, int degree, size_t max_points);

// Enumerates the tensor grid, calling fn for every point.
CertGrid cert_grid_foreach(const Region& region, int degree, size_t max_points,
                           const std::function<void(const RVec&)>& fn);

}  // namespace plcap::detail
