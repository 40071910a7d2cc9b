#include "plcap/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cert_grid.hpp"
#include "plcap/optim.hpp"
#include "plcap/region.hpp"
#include "plcap/rng.hpp"

namespace plcap {

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("Polynomial: nvars >= 1 required");
}

Polynomial Polynomial::constant(int nvars, Complex c) {
    Polynomial p(nvars);
    p.set_coeff(MultiIndex((size_t)nvars, 0), c);
    return p;
}

Polynomial Polynomial::monomial(MultiIndex alpha, Complex c) {
    Polynomial p((int)alpha.size());
    p.set_coeff(alpha, c);
    return p;
}

void Polynomial::set_coeff(const MultiIndex& alpha, Complex c) {
    if ((int)alpha.size() != nvars_)
        throw std::invalid_argument("Polynomial::set_coeff: bad multi-index length");
    for (int e : alpha)
        if (e < 0) throw std::invalid_argument("Polynomial::set_coeff: negative exponent");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                               [](const Term& t, const MultiIndex& a) { return t.alpha < a; });
    if (it != terms_.end() && it->alpha == alpha) {
        if (c == Complex(0.0, 0.0))
            terms_.erase(it);
        else
            it->c = c;
    } else if (c != Complex(0.0, 0.0)) {
        terms_.insert(it, Term{alpha, c});
    }
    normalize();
}

Complex Polynomial::coeff(const MultiIndex& alpha) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                               [](const Term& t, const MultiIndex& a) { return t.alpha < a; });
    if (it != terms_.end() && it->alpha == alpha) return it->c;
    return {0.0, 0.0};
}

void Polynomial::normalize() {
    degree_ = -1;
    for (const auto& t : terms_) {
        int d = 0;
        for (int e : t.alpha) d += e;
        degree_ = std::max(degree_, d);
    }
}

namespace {

// Horner over variable `var` of the lexicographically sorted slice [lo, hi).
Complex eval_rec(const std::vector<Polynomial::Term>& terms, size_t lo, size_t hi,
                 int var, int nvars, std::span<const Complex> z) {
    if (var == nvars - 1) {
        // terms sorted by ascending exponent of the last variable
        Complex acc(0.0, 0.0);
        int prev_exp = -1;
        for (size_t i = hi; i-- > lo;) {
            const int e = terms[i].alpha[(size_t)var];
            if (prev_exp < 0) {
                acc = terms[i].c;
            } else {
                for (int k = 0; k < prev_exp - e; ++k) acc *= z[(size_t)var];
                acc += terms[i].c;
            }
            prev_exp = e;
        }
        if (prev_exp > 0)
            for (int k = 0; k < prev_exp; ++k) acc *= z[(size_t)var];
        return acc;
    }
    // group consecutive runs with equal exponent in `var`, descending Horner
    Complex acc(0.0, 0.0);
    int prev_exp = -1;
    size_t run_end = hi;
    while (run_end > lo) {
        const int e = terms[run_end - 1].alpha[(size_t)var];
        size_t run_begin = run_end;
        while (run_begin > lo && terms[run_begin - 1].alpha[(size_t)var] == e) --run_begin;
        const Complex inner = eval_rec(terms, run_begin, run_end, var + 1, nvars, z);
        if (prev_exp < 0) {
            acc = inner;
        } else {
            for (int k = 0; k < prev_exp - e; ++k) acc *= z[(size_t)var];
            acc += inner;
        }
        prev_exp = e;
        run_end = run_begin;
    }
    if (prev_exp > 0)
        for (int k = 0; k < prev_exp; ++k) acc *= z[(size_t)var];
    return acc;
}

}  // namespace

Complex Polynomial::eval(std::span<const Complex> z) const {
    if ((int)z.size() != nvars_)
        throw std::invalid_argument("Polynomial::eval: dimension mismatch");
    if (terms_.empty()) return {0.0, 0.0};
    return eval_rec(terms_, 0, terms_.size(), 0, nvars_, z);
}

double Polynomial::abs_eval(std::span<const Complex> z) const { return std::abs(eval(z)); }

Polynomial Polynomial::scaled(Complex factor) const {
    Polynomial out(nvars_);
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.c *= factor;
    if (factor == Complex(0.0, 0.0)) out.terms_.clear();
    out.normalize();
    return out;
}

SupNormResult sup_norm(const Polynomial& p, const Region& region, int n_samples,
                       uint64_t seed) {
    const AmbientSpace sp = region.space();
    if (p.nvars() != sp.n)
        throw std::invalid_argument("sup_norm: polynomial arity vs region space");

    SupNormResult res;
    if (p.is_zero()) {
        res.flavor = "certified";
        res.certified_upper = 0.0;
        return res;
    }

    auto value_at = [&](std::span<const double> x) {
        return p.abs_eval(embed(sp, x));
    };

    // sampled lower bound
    auto cands = region.candidate_points(n_samples, seed);
    double lower = 0.0;
    std::vector<RVec> top;
    for (const auto& x : cands) {
        const double v = value_at(x);
        if (v > lower) {
            lower = v;
            top.push_back(x);
        }
    }
    res.lower = lower;

    // local maximization restarts from the best few samples
    double heuristic = lower;
    const Ball bb = region.bounding_ball();
    const int restarts = std::min<size_t>(top.size(), 4);
    for (int r = 0; r < restarts; ++r) {
        const RVec& x0 = top[top.size() - 1 - (size_t)r];
        auto obj = [&](const std::vector<double>& x) {
            if (!region.contains(x)) return 1e300;
            return -value_at(x);
        };
        const auto nm = nelder_mead(obj, x0, 0.05 * bb.radius, 120);
        if (-nm.value > heuristic && std::isfinite(nm.value)) heuristic = -nm.value;
    }
    res.heuristic = heuristic;

    // derivative-based certificate on discs/boxes/products
    double grid_max = 0.0;
    const detail::CertGrid grid = detail::cert_grid_foreach(
        region, p.degree(), 3'000'000,
        [&](const RVec& x) { grid_max = std::max(grid_max, value_at(x)); });
    if (grid.available) {
        res.lower = std::max(res.lower, grid_max);
        res.heuristic = std::max(res.heuristic, grid_max);
        res.certified_upper = grid_max * grid.inflation;
        res.flavor = "certified";
        return res;
    }
    res.flavor = "heuristic";
    return res;
}

Polynomial normalize_on(const Polynomial& p, const Region& region, NormalizeMeta* meta,
                        int n_samples, uint64_t seed) {
    if (p.is_zero()) throw std::domain_error("normalize_on: zero polynomial");
    const SupNormResult sn = sup_norm(p, region, n_samples, seed);
    // The certified path pins the norm to [grid max, grid max * inflation];
    // scaling by the grid max keeps exact instances exact (|2 z| on the unit
    // circle) and stays idempotent.
    const double norm = sn.heuristic;
    if (!(norm > 0.0)) throw std::domain_error("normalize_on: vanishing sup norm");
    if (meta) {
        meta->norm_used = norm;
        meta->flavor = sn.flavor;
    }
    return p.scaled(Complex(1.0 / norm, 0.0));
}

}  // namespace plcap
