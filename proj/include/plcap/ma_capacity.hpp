#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "plcap/region.hpp"
#include "plcap/report.hpp"

namespace plcap {

// All masses follow the normalization dd^c = (i/pi) d d-bar, which makes the
// unit point mass out of (dd^c log|z-a|)^n. Factors of 2*pi differ across the
// literature; every capacity here uses this convention.

struct CapValue {
    double value = 0.0;
    bool infinite = false;
};

// Capacity of the concentric ball condenser (r inside R) in C^n:
// (log(R/r))^{-n}.
CapValue cap_concentric(double r, double R, int n);

// Negative psh test functions of finite Monge-Ampere mass on a ball domain.
class CegrellTestFn : public ComplexFunction {
public:
    virtual double mass() const = 0;       // total MA mass on the domain
    virtual bool mass_exact() const = 0;
    virtual int dim() const = 0;           // complex dimension n
    virtual Ball domain() const = 0;       // the hyperconvex domain (a ball)

    // radial potentials admit closed-form sublevel capacities
    virtual bool is_radial() const { return false; }
    virtual double radial_weight() const { return 0.0; }
    // isolated poles where the function blows up like strength*log|z-a|
    virtual std::vector<std::pair<CVec, double>> log_poles() const { return {}; }

    // flat descriptor for serialization
    struct Spec {
        std::string kind;
        std::vector<double> params;
    };
    virtual Spec spec() const = 0;
};

std::shared_ptr<const CegrellTestFn> cegrell_fn_from_spec(const CegrellTestFn::Spec& s);

// weight * log(|z-a|/R) on the ball B(a, R); mass = weight^n.
std::shared_ptr<const CegrellTestFn> radial_green(CVec center, double R, double weight,
                                                  int n);

// max_j weight_j * G_{pole_j} on a plane disc, G the Green function of the
// disc; mass computed numerically from the boundary flux.
std::shared_ptr<const CegrellTestFn> max_of_greens(Complex disc_center, double R,
                                                   std::vector<Complex> poles,
                                                   std::vector<double> weights);

// ----------------------------------------------------------------------------
// 1-D relative extremal function by projected SOR on a uniform grid
// ----------------------------------------------------------------------------

struct PsorConfig {
    int nx = 257;          // grid nodes per side
    double omega = 1.9;    // relaxation factor
    double tol = 1e-9;     // stop when max |update| falls below
    long max_sweeps = 400000;
    uint64_t seed = 1;
};

// Documented relative accuracy of the grid capacity at the default grids.
inline constexpr double kPsorGridTol = 0.02;

struct RelExtremalField {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0, dx = 0.0;
    std::vector<double> h;  // row-major field, -1 <= h <= 0
    double cap = 0.0;
    bool cap_infinite = false;
    bool converged = false;
    double residual = 0.0;
    long sweeps = 0;
};

// Largest subharmonic h <= 0 on Omega with h <= -1 on K, by projected SOR
// with red-black ordering; cap = interior Laplacian mass / (2 pi).
RelExtremalField rel_extremal_1d(const Region& K, const Region& omega,
                                 const PsorConfig& cfg = {});

// cap({phi <= -s}; Omega) <= s^{-n} * mass(phi); equality for radial
// potentials. Closed form for radial_green, PSOR for plane max_of_greens.
InequalityReport sublevel_cap_bound(const std::shared_ptr<const CegrellTestFn>& phi,
                                    double s, const PsorConfig& cfg = {});

// T_Xi(E) <= exp(-cap(E;Omega)^{-1/n}) with sound direction bookkeeping.
InequalityReport alexander_taylor_check(const Region& E, const Region& omega,
                                        const Ball& Xi, uint64_t seed = 1,
                                        const PsorConfig& cfg = {});

}  // namespace plcap
