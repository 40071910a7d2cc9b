#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace plcap {

// Small dense Nelder-Mead minimizer for the local refinement steps of the
// search operations. Objective may return +inf to reject a point.
struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evals = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, int max_iters = 200,
                             double tol = 1e-10);

// Golden-section minimizer on [a,b] for unimodal-ish 1-D refinements.
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          int iters = 80);

// Sobol low-discrepancy sequence, dimensions <= 12 (direction search only).
class Sobol {
public:
    explicit Sobol(int dim);
    // Next point in [0,1)^dim.
    std::vector<double> next();

private:
    int dim_;
    uint64_t index_ = 0;
    std::vector<std::array<uint32_t, 32>> dirs_;
    std::vector<uint32_t> state_;
};

}  // namespace plcap
