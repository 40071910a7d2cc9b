#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "plcap/region.hpp"
#include "plcap/report.hpp"

namespace plcap {

// Relative logarithmic capacity estimate with explicit bound direction.
struct CapacityEstimate {
    enum class Direction { exact, upper_bound, lower_bound, two_sided };

    double value = 0.0;  // the defined side (exact value / upper / lower / hi)
    double lo = 0.0;     // two-sided bracket; lo may be heuristic (see notes)
    double hi = 1.0;
    Direction direction = Direction::exact;
    std::string provenance;
    bool pluripolar = false;
    double heuristic = std::numeric_limits<double>::quiet_NaN();
    std::string notes;

    static CapacityEstimate exact(double v, std::string prov);
    static CapacityEstimate upper(double v, std::string prov);
    static CapacityEstimate lower(double v, std::string prov);
    static CapacityEstimate two_sided(double lo, double hi, std::string prov);

    // Sound sides for inequality bookkeeping (NaN-free infinities).
    double sound_upper() const;
    double sound_lower() const;
};

// Lower bound of the log-growth envelope at a point, from the convex
// fixed-value minimization min ||P||_{K,grid} s.t. P(z) = 1, deg P <= d.
struct GreenValue {
    double lower = 0.0;         // certified when `certified`, else 0
    double raw = 0.0;           // best grid value, running max over degrees
    double extrapolated = 0.0;  // degree-Richardson estimate of the limit
    double extrapolated_spread = 0.0;
    double duality_gap = 0.0;  // worst relative Lawson gap across solves
    int degree = 0;
    bool certified = false;
    bool degenerate = false;  // z collides with the discretization
};

struct GreenConfig {
    size_t max_grid_points = 400000;
    int lawson_iters = 120;
    double lawson_tol = 1e-9;
    uint64_t seed = 1;
    int fallback_grid = 2048;  // candidates when no certified grid exists
};

GreenValue green_value(const Region& K, const CVec& z, int d_max,
                       const GreenConfig& cfg = {});

struct ChebyshevConfig {
    GreenConfig green;
    int boundary_samples = 16;
    int refine_rounds = 3;
};

// Two-sided estimate of T_B(K) = exp(-max_B V_K): certified upper bound from
// green_value lower bounds at boundary points, heuristic lower bound from the
// degree-extrapolated raw values.
CapacityEstimate chebyshev_T(const Region& K, const Ball& B, int d_max,
                             const ChebyshevConfig& cfg = {});

// Fekete configuration search for the 1-D logarithmic capacity.
struct FeketeResult {
    CapacityEstimate estimate;          // delta_{k_max}, upper bound direction
    std::vector<int> ks;                // configuration sizes evaluated
    std::vector<double> deltas;         // delta_k, nonincreasing in k
    std::vector<Complex> points;        // final configuration
};

FeketeResult fekete_capacity_1d(const Region& K, int k_max, uint64_t seed = 1,
                                int pool_size = 4096);

// 3-sigma-sound lower bound of the 1-D capacity from the Monte Carlo energy
// of the uniform measure on K.
CapacityEstimate capacity_lower_energy(const Region& K, int n_points = 512,
                                       uint64_t seed = 1);

// Product formula T_B(K) = min_j T_{B_j}(K_j) for coordinate product sets.
struct FactorPair {
    PlaneSet K;
    PlaneSet B;
};

CapacityEstimate factor_T(const PlaneSet& K, const PlaneSet& B);
CapacityEstimate product_T(const std::vector<FactorPair>& factors);

// 1-D comparison c(K) <= 2R T_D(K) on a closed disc D of radius R.
InequalityReport compare_c_and_T_1d(const Region& K, const Ball& D, uint64_t seed = 1);

// Closed-form capacities of the calibration sets: disc -> R, interval -> L/4.
double capacity_1d_closed_form(const Region& K, bool* ok);

}  // namespace plcap
