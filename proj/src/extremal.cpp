#include "plcap/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plcap/optim.hpp"
#include "plcap/region.hpp"
#include "plcap/rng.hpp"

namespace plcap {

Complex joukowski_h(Complex zeta) {
    const Complex s = std::sqrt(zeta * zeta - Complex(1.0, 0.0));
    const Complex plus = zeta + s, minus = zeta - s;
    return std::norm(plus) >= std::norm(minus) ? plus : minus;
}

ExtremalFn ExtremalFn::disc(Complex center, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("ExtremalFn::disc: radius > 0");
    ExtremalFn f;
    f.kind_ = Kind::disc;
    f.nvars_ = 1;
    f.center_ = center;
    f.radius_ = radius;
    return f;
}

ExtremalFn ExtremalFn::interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("ExtremalFn::interval: a < b");
    ExtremalFn f;
    f.kind_ = Kind::interval;
    f.nvars_ = 1;
    f.a_ = a;
    f.b_ = b;
    return f;
}

ExtremalFn ExtremalFn::real_ball(int n) {
    if (n < 1) throw std::invalid_argument("ExtremalFn::real_ball: n >= 1");
    ExtremalFn f;
    f.kind_ = Kind::real_ball;
    f.nvars_ = n;
    return f;
}

ExtremalFn ExtremalFn::product(std::vector<ExtremalFn> factors) {
    if (factors.empty()) throw std::invalid_argument("ExtremalFn::product: empty");
    for (const auto& g : factors)
        if (g.nvars() != 1)
            throw std::invalid_argument("ExtremalFn::product: factors must be 1-D");
    ExtremalFn f;
    f.kind_ = Kind::product;
    f.nvars_ = (int)factors.size();
    f.factors_ = std::move(factors);
    return f;
}

namespace {

double interval_envelope(double a, double b, Complex z) {
    const Complex w = (2.0 * z - Complex(a + b, 0.0)) / (b - a);
    return std::max(0.0, std::log(std::abs(joukowski_h(w))));
}

// max over the image ellipse {(x.xi, y.xi) : xi in S^{n-1}} of log|h(u+iv)|.
double real_ball_envelope(std::span<const Complex> z) {
    double xx = 0.0, xy = 0.0, yy = 0.0;
    for (const Complex& c : z) {
        xx += c.real() * c.real();
        xy += c.real() * c.imag();
        yy += c.imag() * c.imag();
    }
    const double scale = xx + yy;
    if (scale < 1e-300) return 0.0;

    // distinguished families: real and purely imaginary points
    if (yy <= 1e-28 * scale) {
        const double t = std::sqrt(xx);
        return t <= 1.0 ? 0.0 : std::log(t + std::sqrt(t * t - 1.0));
    }
    if (xx <= 1e-28 * scale) {
        const double t = std::sqrt(yy);
        return std::log(t + std::sqrt(t * t + 1.0));
    }

    // 2x2 spectral decomposition of [[xx,xy],[xy,yy]]
    const double tr = xx + yy;
    const double det = xx * yy - xy * xy;
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    const double l1 = 0.5 * (tr + disc), l2 = std::max(0.5 * (tr - disc), 0.0);
    double q1x = xy, q1y = l1 - xx;
    double qn = std::hypot(q1x, q1y);
    if (qn < 1e-150) {
        q1x = 1.0;
        q1y = 0.0;
        qn = 1.0;
    }
    q1x /= qn;
    q1y /= qn;
    const double q2x = -q1y, q2y = q1x;
    const double s1 = std::sqrt(l1), s2 = std::sqrt(l2);

    auto value_at = [&](double t) {
        const double ct = std::cos(t), st = std::sin(t);
        const double u = s1 * ct * q1x + s2 * st * q2x;
        const double v = s1 * ct * q1y + s2 * st * q2y;
        return std::log(std::abs(joukowski_h(Complex(u, v))));
    };

    // coarse sweep over half the ellipse (the envelope is even), then refine
    const int M = 256;
    double best_t = 0.0, best = -1e300;
    for (int i = 0; i < M; ++i) {
        const double t = std::numbers::pi * i / M;
        const double v = value_at(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    const double h = std::numbers::pi / M;
    const double t_ref =
        golden_section_min([&](double t) { return -value_at(t); }, best_t - h, best_t + h);
    return std::max(0.0, std::max(best, value_at(t_ref)));
}

}  // namespace

double ExtremalFn::eval(std::span<const Complex> z) const {
    if ((int)z.size() != nvars_)
        throw std::invalid_argument("ExtremalFn::eval: dimension mismatch");
    switch (kind_) {
        case Kind::disc: {
            const double r = std::abs(z[0] - center_);
            return r <= radius_ ? 0.0 : std::log(r / radius_);
        }
        case Kind::interval:
            return interval_envelope(a_, b_, z[0]);
        case Kind::real_ball:
            return real_ball_envelope(z);
        case Kind::product: {
            double v = 0.0;
            for (size_t j = 0; j < factors_.size(); ++j)
                v = std::max(v, factors_[j].eval(std::span<const Complex>(&z[j], 1)));
            return v;
        }
    }
    return 0.0;
}

std::string ExtremalFn::id() const {
    switch (kind_) {
        case Kind::disc:
            return "V[disc(r=" + std::to_string(radius_) + ")]";
        case Kind::interval:
            return "V[interval(" + std::to_string(a_) + "," + std::to_string(b_) + ")]";
        case Kind::real_ball:
            return "V[real_ball(n=" + std::to_string(nvars_) + ")]";
        case Kind::product:
            return "V[product(" + std::to_string(nvars_) + ")]";
    }
    return "V[?]";
}

namespace {

bool ball_is_centered(const Ball& B, Complex at = Complex(0.0, 0.0)) {
    double off = 0.0;
    for (size_t i = 0; i < B.center.size(); ++i) {
        double want = 0.0;
        if (i == 0) want = at.real();
        if (i == 1) want = at.imag();
        off = std::max(off, std::fabs(B.center[i] - want));
    }
    return off <= 1e-14 * std::max(1.0, B.radius);
}

MaxOverBall search_max(const ExtremalFn& fn, const Ball& B, int n_samples,
                       uint64_t seed) {
    const AmbientSpace sp = B.space;
    double best = 0.0;
    RVec best_x = B.center;
    for (int i = 0; i < n_samples; ++i) {
        SampleRng rng(seed, (uint64_t)i);
        // the envelopes peak on the boundary, bias there
        RVec x = (i % 4 == 0) ? sample_in_ball(B, rng) : sample_on_sphere(sp.real_dim(), rng);
        if (i % 4 != 0)
            for (int d = 0; d < sp.real_dim(); ++d)
                x[(size_t)d] = B.center[(size_t)d] + B.radius * x[(size_t)d];
        const double v = fn.eval(embed(sp, x));
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    auto obj = [&](const std::vector<double>& x) {
        if (!B.contains(x)) return 1e300;
        return -fn.eval(embed(sp, x));
    };
    const auto nm = nelder_mead(obj, best_x, 0.05 * B.radius, 200);
    if (std::isfinite(nm.value)) best = std::max(best, -nm.value);
    return {best, false};
}

}  // namespace

MaxOverBall max_over_ball(const ExtremalFn& fn, const Ball& B, int n_samples,
                          uint64_t seed) {
    const AmbientSpace sp = B.space;
    if (fn.nvars() != sp.n)
        throw std::invalid_argument("max_over_ball: arity vs ball space");

    if (fn.kind() == ExtremalFn::Kind::disc && sp.n == 1 && sp.full_complex()) {
        const Complex c(B.center[0], B.center[1]);
        const double d = std::abs(c - fn.disc_center());
        return {std::max(0.0, std::log((d + B.radius) / fn.disc_radius())), true};
    }
    if (fn.kind() == ExtremalFn::Kind::interval && sp.n == 1 && sp.full_complex()) {
        const double mid = 0.5 * (fn.interval_a() + fn.interval_b());
        const double half = 0.5 * (fn.interval_b() - fn.interval_a());
        if (ball_is_centered(B, Complex(mid, 0.0))) {
            const double t = B.radius / half;
            return {std::log(t + std::sqrt(t * t + 1.0)), true};
        }
        // 1-D circle sweep is effectively exact for the plane case
        const Complex c(B.center[0], B.center[1]);
        auto val = [&](double t) {
            const Complex z = c + B.radius * Complex(std::cos(t), std::sin(t));
            return interval_envelope(fn.interval_a(), fn.interval_b(), z);
        };
        double best = 0.0, best_t = 0.0;
        const int M = 1024;
        for (int i = 0; i < M; ++i) {
            const double t = 2.0 * std::numbers::pi * i / M;
            const double v = val(t);
            if (v > best) {
                best = v;
                best_t = t;
            }
        }
        const double h = 2.0 * std::numbers::pi / M;
        const double tr = golden_section_min([&](double t) { return -val(t); },
                                             best_t - h, best_t + h);
        return {std::max(best, val(tr)), false};
    }
    if (fn.kind() == ExtremalFn::Kind::real_ball) {
        if (sp.full_complex() && ball_is_centered(B)) {
            // union of the diagonal slices of the complex ball is the plane
            // disc of the same radius; the envelope peaks on its imaginary axis
            const double r = B.radius;
            return {std::log(r + std::sqrt(r * r + 1.0)), true};
        }
        if (sp.m == 0 && ball_is_centered(B)) {
            const double r = B.radius;
            return {r <= 1.0 ? 0.0 : std::log(r + std::sqrt(r * r - 1.0)), true};
        }
    }
    return search_max(fn, B, n_samples, seed);
}

MaxOverBall max_over_region(const ExtremalFn& fn, const Region& R, int n_samples,
                            uint64_t seed) {
    const AmbientSpace sp = R.space();
    if (fn.nvars() != sp.n)
        throw std::invalid_argument("max_over_region: arity vs region space");

    if (const Ball* b = R.as_ball()) return max_over_ball(fn, *b, n_samples, seed);

    if (const ProductData* pd = R.as_product();
        pd && fn.kind() == ExtremalFn::Kind::product && sp.full_complex()) {
        double value = 0.0;
        bool exact = true;
        for (int j = 0; j < sp.n; ++j) {
            const ExtremalFn& fj = fn.factors()[(size_t)j];
            const PlaneSet& set = pd->complex_factors[(size_t)j];
            const AmbientSpace plane(1, 1);
            MaxOverBall mj{0.0, false};
            if (set.kind == PlaneSet::Kind::disc) {
                mj = max_over_ball(fj, Ball({set.center.real(), set.center.imag()},
                                            set.radius, plane));
            } else if (set.is_interval() && fj.kind() == ExtremalFn::Kind::interval) {
                const double va = interval_envelope(fj.interval_a(), fj.interval_b(),
                                                    Complex(set.x0, 0.0));
                const double vb = interval_envelope(fj.interval_a(), fj.interval_b(),
                                                    Complex(set.x1, 0.0));
                mj = {std::max(va, vb), true};
            } else if (set.is_interval() && fj.kind() == ExtremalFn::Kind::disc) {
                const double da = std::abs(Complex(set.x0, 0.0) - fj.disc_center());
                const double db = std::abs(Complex(set.x1, 0.0) - fj.disc_center());
                mj = {std::max(0.0, std::log(std::max(da, db) / fj.disc_radius())), true};
            } else {
                // rect factor: boundary sampling of the 1-D factor set
                Region plane_set = Region::plane(set);
                auto cands = plane_set.candidate_points(1024, seed + j);
                double best = 0.0;
                for (const auto& x : cands) {
                    const Complex z(x[0], x[1]);
                    best = std::max(best,
                                    fj.eval(std::span<const Complex>(&z, 1)));
                }
                mj = {best, false};
            }
            value = std::max(value, mj.value);
            exact = exact && mj.exact;
        }
        return {value, exact};
    }

    // generic sampled search with refinement
    auto cands = R.candidate_points(n_samples, seed);
    double best = 0.0;
    RVec best_x;
    for (const auto& x : cands) {
        const double v = fn.eval(embed(sp, x));
        if (v >= best) {
            best = v;
            best_x = x;
        }
    }
    if (!best_x.empty()) {
        auto obj = [&](const std::vector<double>& x) {
            if (!R.contains(x)) return 1e300;
            return -fn.eval(embed(sp, x));
        };
        const auto nm = nelder_mead(obj, best_x, 0.05 * R.bounding_ball().radius, 150);
        if (std::isfinite(nm.value)) best = std::max(best, -nm.value);
    }
    return {best, false};
}

double lundin_sphere_search(int n, int n_directions, uint64_t seed) {
    const ExtremalFn fn = ExtremalFn::real_ball(n);
    const AmbientSpace sp = AmbientSpace::full(n);
    const int dim = 2 * n;

    Sobol sobol(std::min(dim, 12));
    double best = 0.0;
    RVec best_x((size_t)dim, 0.0);
    best_x[0] = 1.0;
    for (int i = 0; i < n_directions; ++i) {
        auto u = sobol.next();
        SampleRng rng(seed, (uint64_t)i);
        RVec x((size_t)dim);
        double n2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            // gaussian shaping of the Sobol point, Box-Muller on pairs
            const double u1 =
                std::min(std::max(u[(size_t)(d % (int)u.size())], 0x1.0p-60), 1.0 - 0x1.0p-60);
            const double u2 = rng.u01();
            x[(size_t)d] = std::sqrt(-2.0 * std::log(u1)) *
                           std::cos(2.0 * std::numbers::pi * u2);
            n2 += x[(size_t)d] * x[(size_t)d];
        }
        if (n2 < 1e-12) continue;
        for (int d = 0; d < dim; ++d) x[(size_t)d] /= std::sqrt(n2);
        const double v = fn.eval(embed(sp, x));
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    auto obj = [&](const std::vector<double>& x) {
        double n2 = 0.0;
        for (double v : x) n2 += v * v;
        if (n2 < 1e-12) return 1e300;
        RVec y(x.size());
        for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] / std::sqrt(n2);
        return -fn.eval(embed(sp, y));
    };
    const auto nm = nelder_mead(obj, best_x, 0.1, 300);
    if (std::isfinite(nm.value)) best = std::max(best, -nm.value);
    return best;
}

bool lelong_growth_check(const ExtremalFn& fn, int n_rays, uint64_t seed, double tol) {
    const AmbientSpace sp = AmbientSpace::full(fn.nvars());
    for (int r = 0; r < n_rays; ++r) {
        SampleRng rng(seed, (uint64_t)r);
        const RVec dir = sample_on_sphere(sp.real_dim(), rng);
        double prev = 0.0;
        bool first = true;
        for (double t : {1e2, 1e3, 1e4, 1e5, 1e6}) {
            RVec x(dir.size());
            for (size_t i = 0; i < dir.size(); ++i) x[i] = t * dir[i];
            const double excess = fn.eval(embed(sp, x)) - std::log(t);
            if (!std::isfinite(excess) || std::fabs(excess) > 50.0) return false;
            if (!first && t >= 1e5 && std::fabs(excess - prev) > tol) return false;
            prev = excess;
            first = false;
        }
    }
    return true;
}

}  // namespace plcap
