#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plcap/ball.hpp"
#include "plcap/extremal.hpp"
#include "plcap/growth.hpp"
#include "plcap/ma_capacity.hpp"
#include "plcap/polynomial.hpp"
#include "plcap/region.hpp"
#include "plcap/report.hpp"

namespace plcap {

// Log-growth test functions (the competitors of the envelope class).
class LelongTestFn : public ComplexFunction {
public:
    virtual int nvars() const = 0;

    struct MaxResult {
        double value = 0.0;
        bool exact = false;
    };
    // max over a ball of the generic subspace; exact for the closed forms,
    // else a lower bound from sampled search.
    virtual MaxResult max_over(const Ball& B, uint64_t seed) const;

    // isolated logarithmic poles (u ~ strength*log|z-a| + O(1)); drives the
    // importance sampling of the exponential moments
    virtual std::vector<std::pair<CVec, double>> log_poles() const { return {}; }
};

std::shared_ptr<const LelongTestFn> log_abs(int n);
std::shared_ptr<const LelongTestFn> poly_log(Polynomial P);
std::shared_ptr<const LelongTestFn> closed_form_v(ExtremalFn fn);
std::shared_ptr<const LelongTestFn> shifted_max(
    std::vector<std::shared_ptr<const LelongTestFn>> children, std::vector<double> shifts);

bool lelong_growth_check(const LelongTestFn& u, int n_rays = 8, uint64_t seed = 1,
                         double tol = 1e-3);

struct McConfig {
    uint64_t n_samples = 200000;
    uint64_t seed = 1;
    int threads = 0;
};

struct MomentCheck {
    double mean = 0.0;
    double std_error = 0.0;
    double max_used = 0.0;
    bool max_exact = false;
    double bound = 0.0;
    InequalityReport report;
};

// mean over B of g(max_B u - u) against C * I_delta(g): complex balls use
// C = polya_constant_complex(n), delta = 2; generic-subspace balls use
// C = 8(n+m), delta = 1.
MomentCheck g_moment(const LelongTestFn& u, const Ball& B, const GrowthFunction& g,
                     const McConfig& cfg = {});

// mean over B of e^{-alpha u} against (1 + C alpha/(delta-alpha)) e^{-alpha max_B u}.
MomentCheck exp_integral(const LelongTestFn& u, const Ball& B, double alpha,
                         const McConfig& cfg = {});

struct BmoConfig {
    int n_balls = 24;
    double center_halfwidth = 2.0;
    double r_min = 1e-2;
    double r_max = 1e2;  // four decades of radii
    uint64_t samples_per_ball = 20000;
    double alpha = 0.0;  // 0: default (1 complex, 1/2 generic)
    uint64_t seed = 1;
    int threads = 0;
};

struct BmoCheck {
    double observed_sup = 0.0;  // lower bound of the true BMO norm
    std::string worst_ball;
    uint64_t flagged_samples = 0;  // resampled polar hits
    InequalityReport norm_report;  // observed <= sigma_{n,m}
    InequalityReport exp_report;   // John-Nirenberg exponential form
};

BmoCheck bmo_norm(const LelongTestFn& u, const AmbientSpace& G, const BmoConfig& cfg = {});

// ----------------------------------------------------------------------------
// capacity functions of sublevel families
// ----------------------------------------------------------------------------

struct EtaConfig {
    double s_min = 1e-2;
    double s_max = 1e2;
    int grid = 41;
    int refine_rounds = 3;
    PsorConfig psor;
};

struct EtaValue {
    double value = 0.0;
    double arg_s = 0.0;
    bool exact = false;
    double rel_tol = 0.0;  // calibrated tolerance when the PSOR path is used
    bool finite = true;
};

// eta(E;U) = sup_s s * cap(E cap {u < -s}; Omega)^{1/n}, log-spaced grid with
// local refinement near the running maximizer.
EtaValue eta(const Region& E, const std::vector<std::shared_ptr<const CegrellTestFn>>& U,
             const EtaConfig& cfg = {});

struct DecayRow {
    double s = 0.0;
    double observed = 0.0;
    double sigma = 0.0;
    double bound = 0.0;
};

struct CegrellExpCheck {
    InequalityReport exp_report;
    std::vector<InequalityReport> decay_reports;
    std::vector<DecayRow> decay;
};

// Exponential integrability of unit-mass potentials (volume form), plus the
// sublevel-volume decay rows on an s-grid. trace_m < 0 runs the complex case;
// otherwise the trace on G = C^m x R^{n-m} (m <= n-1).
CegrellExpCheck cegrell_exp_check(const CegrellTestFn& phi, double alpha, int trace_m,
                                  const McConfig& cfg = {});

// L^p moments of unit-mass potentials.
InequalityReport cegrell_lp_check(const CegrellTestFn& phi, double p, int trace_m,
                                  const McConfig& cfg = {});

// Integral bound driven by eta, one report per member of U.
std::vector<InequalityReport> eta_integral_bound(
    const Region& E, const std::vector<std::shared_ptr<const CegrellTestFn>>& U,
    const GrowthFunction& g, const McConfig& cfg = {}, const EtaConfig& eta_cfg = {});

// Exponential variant of the eta bound.
std::vector<InequalityReport> eta_exp_bound(
    const Region& E, const std::vector<std::shared_ptr<const CegrellTestFn>>& U,
    double alpha, const McConfig& cfg = {}, const EtaConfig& eta_cfg = {});

// Shifted-class construction: v = min(u + s0, 0) keeps the capacity decay,
// so the exponential integral stays uniformly bounded.
InequalityReport limsup_shift_check(const CegrellTestFn& phi, double alpha, double s0,
                                    const McConfig& cfg = {});

// ----------------------------------------------------------------------------
// sublevel decay of log-growth functions and polynomial sublevel sets
// ----------------------------------------------------------------------------

struct LelongDecayCheck {
    std::vector<InequalityReport> reports;
    std::vector<DecayRow> rows;
};

// lambda(B cap {u <= max_B u - s})/lambda(B) <= C e^{-delta s} on an s-grid.
LelongDecayCheck lelong_decay(const LelongTestFn& u, const Ball& B,
                              const std::vector<double>& s_grid, const McConfig& cfg = {});

// Normalized polynomial sublevel sets {|P| <= eps^d} relative to a ball.
LelongDecayCheck polynomial_lemniscate_decay(const Polynomial& P, const Ball& B,
                                             const std::vector<double>& eps_grid,
                                             const McConfig& cfg = {});

// Bernstein-Walsh with the volume-form constant: sup_B u <= sup_K u +
// (1/2) log C - (1/2) log(relative volume) (complex; log C variant on traces).
InequalityReport bernstein_walsh_check(const LelongTestFn& u, const Region& K,
                                       const Ball& B, const McConfig& cfg = {});

}  // namespace plcap
