#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "plcap/ambient.hpp"
#include "plcap/ball.hpp"
#include "plcap/report.hpp"

namespace plcap {

class Region;

// zeta + sqrt(zeta^2 - 1) with the branch of modulus >= 1.
Complex joukowski_h(Complex zeta);

// Closed-form nonnegative log-growth envelopes: zero on the generating
// compact set, log|z| + O(1) at infinity.
class ExtremalFn {
public:
    enum class Kind { disc, interval, real_ball, product };

    static ExtremalFn disc(Complex center, double radius);
    static ExtremalFn interval(double a, double b);
    // unit euclidean ball of R^n sitting inside C^n
    static ExtremalFn real_ball(int n);
    // coordinate-wise product set: factor j acts on z_j, value is the max
    static ExtremalFn product(std::vector<ExtremalFn> one_dim_factors);

    Kind kind() const { return kind_; }
    int nvars() const { return nvars_; }
    double eval(std::span<const Complex> z) const;
    std::string id() const;

    // data accessors for the closed-form bridges
    Complex disc_center() const { return center_; }
    double disc_radius() const { return radius_; }
    double interval_a() const { return a_; }
    double interval_b() const { return b_; }
    const std::vector<ExtremalFn>& factors() const { return factors_; }

private:
    ExtremalFn() = default;
    Kind kind_ = Kind::disc;
    int nvars_ = 1;
    Complex center_{0.0, 0.0};
    double radius_ = 1.0;
    double a_ = -1.0, b_ = 1.0;
    std::vector<ExtremalFn> factors_;
};

struct MaxOverBall {
    double value = 0.0;
    bool exact = false;  // closed-form path; otherwise a certified lower bound
};

// max of V over a euclidean ball of C^n (or of a generic subspace). Exact for
// the concentric disc/interval/real-ball cases, search with refinement
// elsewhere.
MaxOverBall max_over_ball(const ExtremalFn& fn, const Ball& B, int n_samples = 4096,
                          uint64_t seed = 1);

// max of V over a product region (polydisc-style sets), exact when each
// factor pairs with a closed-form 1-D factor of V.
MaxOverBall max_over_region(const ExtremalFn& fn, const Region& R, int n_samples = 4096,
                            uint64_t seed = 1);

// Search for max over the complex unit sphere of the real-ball envelope;
// exercised against the closed form log(1+sqrt 2).
double lundin_sphere_search(int n, int n_directions = 512, uint64_t seed = 1);

// Lelong-class growth test along sampled rays: sup_t V(t z0) - log^+ |t z0|
// must stabilize for t in [1e2, 1e6].
bool lelong_growth_check(const ExtremalFn& fn, int n_rays = 8, uint64_t seed = 1,
                         double tol = 1e-3);

}  // namespace plcap
