#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plcap/ambient.hpp"

namespace plcap {

class Region;

using MultiIndex = std::vector<int>;

// Sparse multivariate polynomial with complex coefficients, stored as
// lexicographically sorted (multi-index, coefficient) terms.
class Polynomial {
public:
    struct Term {
        MultiIndex alpha;
        Complex c;
    };

    explicit Polynomial(int nvars = 1);

    static Polynomial constant(int nvars, Complex c);
    static Polynomial monomial(MultiIndex alpha, Complex c);

    void set_coeff(const MultiIndex& alpha, Complex c);
    Complex coeff(const MultiIndex& alpha) const;

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    // Total degree; -1 stands for the zero polynomial (degree minus infinity).
    int degree() const { return degree_; }
    const std::vector<Term>& terms() const { return terms_; }

    // Nested Horner evaluation, variable by variable.
    Complex eval(std::span<const Complex> z) const;
    double abs_eval(std::span<const Complex> z) const;

    Polynomial scaled(Complex factor) const;

private:
    int nvars_ = 1;
    int degree_ = -1;
    std::vector<Term> terms_;  // sorted lexicographically by alpha
    void normalize();
};

// Certified-or-heuristic sup norm over a region.
//   lower:     max |P| over the sampled/grid points (always <= ||P||_K)
//   heuristic: lower improved by local maximization restarts
//   certified_upper: present for disc/box/product regions whose grids admit a
//     derivative-based inflation factor; upper bound of the true sup norm
struct SupNormResult {
    double lower = 0.0;
    double heuristic = 0.0;
    std::optional<double> certified_upper;
    std::string flavor;  // "certified" or "heuristic"
};

SupNormResult sup_norm(const Polynomial& p, const Region& region,
                       int n_samples = 4096, uint64_t seed = 1);

struct NormalizeMeta {
    double norm_used = 0.0;
    std::string flavor;
};

// P / ||P||_B with the certified norm when available.
Polynomial normalize_on(const Polynomial& p, const Region& region,
                        NormalizeMeta* meta = nullptr, int n_samples = 4096,
                        uint64_t seed = 1);

}  // namespace plcap
