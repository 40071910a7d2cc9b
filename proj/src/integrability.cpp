#include "plcap/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mc.hpp"
#include "plcap/capacity.hpp"
#include "plcap/constants.hpp"
#include "plcap/optim.hpp"
#include "plcap/volume.hpp"

namespace plcap {

namespace {

// poles of u that lie on the generic subspace carrying the ball B
std::vector<detail::PoleSpec> poles_in_space(
    const std::vector<std::pair<CVec, double>>& poles, const AmbientSpace& sp,
    double gamma_scale) {
    std::vector<detail::PoleSpec> out;
    for (const auto& [z, w] : poles) {
        bool on_subspace = true;
        RVec x((size_t)sp.real_dim());
        for (int j = 0; j < sp.m; ++j) {
            x[(size_t)(2 * j)] = z[(size_t)j].real();
            x[(size_t)(2 * j + 1)] = z[(size_t)j].imag();
        }
        for (int j = sp.m; j < sp.n; ++j) {
            if (std::fabs(z[(size_t)j].imag()) > 1e-12) on_subspace = false;
            x[(size_t)(sp.m + j)] = z[(size_t)j].real();
        }
        if (on_subspace) out.push_back({std::move(x), gamma_scale * w});
    }
    return out;
}

double bound_constant(const AmbientSpace& sp) {
    return sp.full_complex() ? to_double(polya_constant_complex(sp.n))
                             : 8.0 * (sp.n + sp.m);
}

double bound_delta(const AmbientSpace& sp) { return sp.full_complex() ? 2.0 : 1.0; }

}  // namespace

// ----------------------------------------------------------------------------
// test functions
// ----------------------------------------------------------------------------

LelongTestFn::MaxResult LelongTestFn::max_over(const Ball& B, uint64_t seed) const {
    // sampled search with refinement: a lower bound of the true maximum
    const AmbientSpace sp = B.space;
    double best = -std::numeric_limits<double>::infinity();
    RVec best_x = B.center;
    for (int i = 0; i < 2048; ++i) {
        SampleRng rng(seed, (uint64_t)i);
        RVec x = (i % 3 == 0) ? sample_in_ball(B, rng) : sample_on_sphere(sp.real_dim(), rng);
        if (i % 3 != 0)
            for (int d = 0; d < sp.real_dim(); ++d)
                x[(size_t)d] = B.center[(size_t)d] + B.radius * x[(size_t)d];
        const double v = eval(embed(sp, x));
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    auto obj = [&](const std::vector<double>& x) {
        if (!B.contains(x)) return 1e300;
        return -eval(embed(sp, x));
    };
    const auto nm = nelder_mead(obj, best_x, 0.05 * B.radius, 150);
    if (std::isfinite(nm.value)) best = std::max(best, -nm.value);
    return {best, false};
}

namespace {

struct LogAbsFn final : LelongTestFn {
    int n;
    explicit LogAbsFn(int n_) : n(n_) {}
    int nvars() const override { return n; }
    double eval(std::span<const Complex> z) const override {
        double s = 0.0;
        for (const Complex& c : z) s += std::norm(c);
        if (s <= 0.0) return -std::numeric_limits<double>::infinity();
        return 0.5 * std::log(s);
    }
    std::string id() const override { return "log|z| (n=" + std::to_string(n) + ")"; }
    MaxResult max_over(const Ball& B, uint64_t) const override {
        // max of |z| over a ball of the subspace: |center| + radius
        return {std::log(std::sqrt(sq_norm(B.center)) + B.radius), true};
    }
    std::vector<std::pair<CVec, double>> log_poles() const override {
        return {{CVec((size_t)n, Complex(0.0, 0.0)), 1.0}};
    }
};

struct PolyLogFn final : LelongTestFn {
    Polynomial p;
    int d;
    explicit PolyLogFn(Polynomial p_) : p(std::move(p_)), d(p.degree()) {}
    int nvars() const override { return p.nvars(); }
    double eval(std::span<const Complex> z) const override {
        const double a = p.abs_eval(z);
        if (a <= 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(a) / d;
    }
    std::string id() const override {
        return "(1/" + std::to_string(d) + ")log|P|";
    }
    MaxResult max_over(const Ball& B, uint64_t seed) const override {
        const Region rb = Region::ball(B);
        const SupNormResult sn = sup_norm(p, rb, 4096, seed);
        if (sn.certified_upper)  // grid max with certificate: treat as exact at
            return {std::log(sn.heuristic) / d, true};  // grid tolerance
        return {std::log(sn.heuristic) / d, false};
    }
};

struct ClosedFormVFn final : LelongTestFn {
    ExtremalFn fn;
    explicit ClosedFormVFn(ExtremalFn f) : fn(std::move(f)) {}
    int nvars() const override { return fn.nvars(); }
    double eval(std::span<const Complex> z) const override { return fn.eval(z); }
    std::string id() const override { return fn.id(); }
    MaxResult max_over(const Ball& B, uint64_t seed) const override {
        const MaxOverBall m = max_over_ball(fn, B, 4096, seed);
        return {m.value, m.exact};
    }
};

struct ShiftedMaxFn final : LelongTestFn {
    std::vector<std::shared_ptr<const LelongTestFn>> children;
    std::vector<double> shifts;
    ShiftedMaxFn(std::vector<std::shared_ptr<const LelongTestFn>> c, std::vector<double> s)
        : children(std::move(c)), shifts(std::move(s)) {}
    int nvars() const override { return children.front()->nvars(); }
    double eval(std::span<const Complex> z) const override {
        double v = -std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < children.size(); ++j)
            v = std::max(v, children[j]->eval(z) + shifts[j]);
        return v;
    }
    std::string id() const override {
        return "max_shift(" + std::to_string(children.size()) + ")";
    }
    MaxResult max_over(const Ball& B, uint64_t seed) const override {
        double v = -std::numeric_limits<double>::infinity();
        bool exact = true;
        for (size_t j = 0; j < children.size(); ++j) {
            const MaxResult m = children[j]->max_over(B, seed + j);
            v = std::max(v, m.value + shifts[j]);
            exact = exact && m.exact;
        }
        return {v, exact};
    }
    std::vector<std::pair<CVec, double>> log_poles() const override {
        if (children.size() == 1) return children.front()->log_poles();
        return {};  // the max regularizes isolated poles
    }
};

}  // namespace

std::shared_ptr<const LelongTestFn> log_abs(int n) {
    if (n < 1) throw std::invalid_argument("log_abs: n >= 1");
    return std::make_shared<LogAbsFn>(n);
}

std::shared_ptr<const LelongTestFn> poly_log(Polynomial P) {
    if (P.is_zero() || P.degree() < 1)
        throw std::invalid_argument("poly_log: nonconstant polynomial required");
    return std::make_shared<PolyLogFn>(std::move(P));
}

std::shared_ptr<const LelongTestFn> closed_form_v(ExtremalFn fn) {
    return std::make_shared<ClosedFormVFn>(std::move(fn));
}

std::shared_ptr<const LelongTestFn> shifted_max(
    std::vector<std::shared_ptr<const LelongTestFn>> children,
    std::vector<double> shifts) {
    if (children.empty() || children.size() != shifts.size())
        throw std::invalid_argument("shifted_max: children/shifts mismatch");
    for (const auto& c : children)
        if (c->nvars() != children.front()->nvars())
            throw std::invalid_argument("shifted_max: mixed arities");
    return std::make_shared<ShiftedMaxFn>(std::move(children), std::move(shifts));
}

bool lelong_growth_check(const LelongTestFn& u, int n_rays, uint64_t seed, double tol) {
    const AmbientSpace sp = AmbientSpace::full(u.nvars());
    for (int r = 0; r < n_rays; ++r) {
        SampleRng rng(seed, (uint64_t)r);
        const RVec dir = sample_on_sphere(sp.real_dim(), rng);
        double prev = 0.0;
        bool first = true;
        for (double t : {1e2, 1e3, 1e4, 1e5, 1e6}) {
            RVec x(dir.size());
            for (size_t i = 0; i < dir.size(); ++i) x[i] = t * dir[i];
            const double excess = u.eval(embed(sp, x)) - std::log(t);
            if (!std::isfinite(excess) || excess > 50.0) return false;
            if (!first && t >= 1e5 && std::fabs(excess - prev) > tol) return false;
            prev = excess;
            first = false;
        }
    }
    return true;
}

// ----------------------------------------------------------------------------
// moments over balls
// ----------------------------------------------------------------------------

MomentCheck g_moment(const LelongTestFn& u, const Ball& B, const GrowthFunction& g,
                     const McConfig& cfg) {
    const AmbientSpace sp = B.space;
    if (u.nvars() != sp.n) throw std::invalid_argument("g_moment: arity mismatch");
    const double C = bound_constant(sp);
    const double delta = bound_delta(sp);

    MomentCheck out;
    const auto M = u.max_over(B, cfg.seed + 1);
    out.max_used = M.value;
    out.max_exact = M.exact;

    const IntegralValue I = stieltjes_I(g, delta);
    std::ostringstream inst;
    inst << u.id() << " on ball(r=" << B.radius << ",n=" << sp.n << ",m=" << sp.m
         << "), g=" << g.label();
    if (I.divergent) {
        out.report.check_id = "integrability.g_moment";
        out.report.instance = inst.str();
        out.report.status = CheckStatus::inconclusive;
        out.report.notes = "I_delta(g) divergent; instance skipped";
        out.bound = std::numeric_limits<double>::infinity();
        return out;
    }
    out.bound = C * I.value;

    auto f = [&](const RVec& x, SampleRng&) {
        return g.eval(std::max(M.value - u.eval(embed(sp, x)), 0.0));
    };
    const double gamma = (g.kind == GrowthFunction::Kind::expm1) ? g.alpha : 0.9;
    const auto poles = poles_in_space(u.log_poles(), sp, gamma);
    detail::McStat st;
    if (poles.empty()) {
        st = detail::mc_mean_over_ball(B, cfg.n_samples, cfg.seed, cfg.threads, f);
    } else {
        st = detail::mc_integral_with_poles(B, poles, cfg.n_samples, cfg.seed,
                                            cfg.threads, f);
        st.mean /= B.volume();
        st.std_error /= B.volume();
    }
    out.mean = st.mean;
    out.std_error = st.std_error;

    out.report = check_inequality("integrability.g_moment", inst.str(),
                                  Bound::stat(st.mean, st.std_error),
                                  Bound::exact(out.bound), C, cfg.seed);
    if (!M.exact) out.report.notes = "max_B u from search (weakened instance)";
    return out;
}

MomentCheck exp_integral(const LelongTestFn& u, const Ball& B, double alpha,
                         const McConfig& cfg) {
    const AmbientSpace sp = B.space;
    if (u.nvars() != sp.n) throw std::invalid_argument("exp_integral: arity mismatch");
    const double delta = bound_delta(sp);
    if (!(alpha > 0.0) || alpha >= delta)
        throw std::domain_error("exp_integral: need 0 < alpha < " +
                                std::to_string(delta));
    const double C = bound_constant(sp);

    MomentCheck out;
    const auto M = u.max_over(B, cfg.seed + 1);
    out.max_used = M.value;
    out.max_exact = M.exact;
    out.bound = (1.0 + C * alpha / (delta - alpha)) * std::exp(-alpha * M.value);

    auto f = [&](const RVec& x, SampleRng&) {
        return std::exp(-alpha * u.eval(embed(sp, x)));
    };
    const auto poles = poles_in_space(u.log_poles(), sp, alpha);
    detail::McStat st;
    if (poles.empty()) {
        st = detail::mc_mean_over_ball(B, cfg.n_samples, cfg.seed, cfg.threads, f);
    } else {
        st = detail::mc_integral_with_poles(B, poles, cfg.n_samples, cfg.seed,
                                            cfg.threads, f);
        st.mean /= B.volume();
        st.std_error /= B.volume();
    }
    out.mean = st.mean;
    out.std_error = st.std_error;

    std::ostringstream inst;
    inst << u.id() << " on ball(r=" << B.radius << ",n=" << sp.n << ",m=" << sp.m
         << "), alpha=" << alpha;
    // the bound needs max_B u from above; a searched max is only a lower bound
    const Bound rhs = M.exact ? Bound::exact(out.bound) : Bound::upper(out.bound);
    out.report = check_inequality("integrability.exponential", inst.str(),
                                  Bound::stat(st.mean, st.std_error), rhs,
                                  1.0 + C * alpha / (delta - alpha), cfg.seed,
                                  !M.exact);
    if (!M.exact) out.report.notes = "max_B u unsound for the bound; report only";
    return out;
}

// ----------------------------------------------------------------------------
// BMO
// ----------------------------------------------------------------------------

BmoCheck bmo_norm(const LelongTestFn& u, const AmbientSpace& G, const BmoConfig& cfg) {
    if (u.nvars() != G.n) throw std::invalid_argument("bmo_norm: arity mismatch");
    const int dim = G.real_dim();
    const double sigma_bound = bmo_constant(G.n, G.m);
    const double C = bound_constant(G);
    const double delta = bound_delta(G);
    const double alpha = cfg.alpha > 0.0 ? cfg.alpha : (G.full_complex() ? 1.0 : 0.5);

    BmoCheck out;
    double worst_dev = -1.0, worst_dev_sigma = 0.0;
    double worst_exp = -1.0, worst_exp_sigma = 0.0;
    std::string worst_desc;

    for (int bi = 0; bi < cfg.n_balls; ++bi) {
        SampleRng rng(cfg.seed, (uint64_t)(1000 + bi));
        RVec c((size_t)dim);
        for (int d = 0; d < dim; ++d)
            c[(size_t)d] = cfg.center_halfwidth * (2.0 * rng.u01() - 1.0);
        const double r = cfg.r_min * std::pow(cfg.r_max / cfg.r_min, rng.u01());
        const Ball Bb(c, r, G);

        const uint64_t ball_seed = cfg.seed + 7919 * (uint64_t)(bi + 1);
        // two passes over the same sample stream: mean, then mean deviation
        const auto mean_st = detail::mc_mean_over_ball(
            Bb, cfg.samples_per_ball, ball_seed, cfg.threads,
            [&](const RVec& x, SampleRng&) { return u.eval(embed(G, x)); });
        out.flagged_samples += cfg.samples_per_ball - mean_st.n;
        if (mean_st.n == 0 || !std::isfinite(mean_st.mean)) continue;
        const double ubar = mean_st.mean;

        const auto dev_st = detail::mc_mean_over_ball(
            Bb, cfg.samples_per_ball, ball_seed, cfg.threads,
            [&](const RVec& x, SampleRng&) {
                return std::fabs(u.eval(embed(G, x)) - ubar);
            });
        if (dev_st.n == 0) continue;
        if (dev_st.mean > worst_dev) {
            worst_dev = dev_st.mean;
            worst_dev_sigma = dev_st.std_error;
            std::ostringstream os;
            os << "ball(r=" << r << ")";
            worst_desc = os.str();
        }

        // John-Nirenberg exponential form on the same ball
        const auto poles = poles_in_space(u.log_poles(), G, alpha);
        auto fexp = [&](const RVec& x, SampleRng&) {
            return std::exp(alpha * std::fabs(u.eval(embed(G, x)) - ubar));
        };
        detail::McStat est;
        if (poles.empty()) {
            est = detail::mc_mean_over_ball(Bb, cfg.samples_per_ball, ball_seed + 1,
                                            cfg.threads, fexp);
        } else {
            est = detail::mc_integral_with_poles(Bb, poles, cfg.samples_per_ball,
                                                 ball_seed + 1, cfg.threads, fexp);
            est.mean /= Bb.volume();
            est.std_error /= Bb.volume();
        }
        if (est.mean > worst_exp) {
            worst_exp = est.mean;
            worst_exp_sigma = est.std_error;
        }
    }

    out.observed_sup = std::max(worst_dev, 0.0);
    out.worst_ball = worst_desc;

    std::ostringstream inst;
    inst << u.id() << " on G(n=" << G.n << ",m=" << G.m << "), " << cfg.n_balls
         << " balls";
    out.norm_report = check_inequality("bmo.norm_bound", inst.str(),
                                       Bound::stat(out.observed_sup, worst_dev_sigma),
                                       Bound::exact(sigma_bound), sigma_bound, cfg.seed);
    out.norm_report.notes = "observed sup over sampled balls (lower bound of the norm)";

    const double jn_bound =
        (1.0 + C * alpha / (delta - alpha)) *
        std::exp(alpha * (G.full_complex() ? 0.5 * C : C));
    std::ostringstream inst2;
    inst2 << inst.str() << ", alpha=" << alpha;
    out.exp_report = check_inequality("bmo.john_nirenberg", inst2.str(),
                                      Bound::stat(worst_exp, worst_exp_sigma),
                                      Bound::exact(jn_bound), jn_bound, cfg.seed);
    return out;
}

// ----------------------------------------------------------------------------
// eta and the capacity-driven integrability bounds
// ----------------------------------------------------------------------------

namespace {

struct CapAtS {
    double value = 0.0;
    bool exact = false;
    bool infinite = false;
};

CapAtS sublevel_capacity(const Region& E, const std::shared_ptr<const CegrellTestFn>& u,
                         double s, const PsorConfig& psor) {
    const int n = u->dim();
    const Ball dom = u->domain();
    if (u->is_radial()) {
        const double w = u->radial_weight();
        const double r_s = dom.radius * std::exp(-s / w);
        if (const Ball* eb = E.as_ball()) {
            const double d = std::sqrt(sq_dist(eb->center, dom.center));
            if (d <= 1e-14) {
                const double rho = std::min(eb->radius, r_s);
                if (rho >= dom.radius) return {0.0, true, true};
                return {cap_concentric(rho, dom.radius, n).value, true, false};
            }
            if (d > eb->radius + r_s) return {0.0, true, false};  // empty slice
        }
    }
    if (n != 1) throw std::invalid_argument("sublevel_capacity: unsupported variant");
    const Region sub = Region::sublevel(AmbientSpace(1, 1), u, s, dom);
    const Region cut = Region::intersection({E, sub});
    // quick emptiness probe before burning a solve
    if (cut.candidate_points(64, psor.seed + 13).empty()) return {0.0, false, false};
    const RelExtremalField f = rel_extremal_1d(cut, Region::ball(dom), psor);
    if (f.cap_infinite) return {0.0, false, true};
    return {std::max(f.cap, 0.0), false, false};
}

}  // namespace

EtaValue eta(const Region& E, const std::vector<std::shared_ptr<const CegrellTestFn>>& U,
             const EtaConfig& cfg) {
    if (U.empty()) throw std::invalid_argument("eta: empty class");
    const int n = U.front()->dim();

    bool all_exact = true;
    bool infinite = false;
    auto value_at = [&](double s) {
        double c = 0.0;
        for (const auto& u : U) {
            const CapAtS cs = sublevel_capacity(E, u, s, cfg.psor);
            all_exact = all_exact && cs.exact;
            infinite = infinite || cs.infinite;
            c = std::max(c, cs.value);
        }
        return s * std::pow(c, 1.0 / n);
    };

    double best = 0.0, best_s = cfg.s_min;
    const double ratio = std::pow(cfg.s_max / cfg.s_min, 1.0 / (cfg.grid - 1));
    for (int i = 0; i < cfg.grid; ++i) {
        const double s = cfg.s_min * std::pow(ratio, (double)i);
        const double v = value_at(s);
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    double window = ratio;
    for (int round = 0; round < cfg.refine_rounds; ++round) {
        const double lo = best_s / window, hi = best_s * window;
        for (int i = 0; i < 9; ++i) {
            const double s = lo * std::pow(hi / lo, i / 8.0);
            const double v = value_at(s);
            if (v > best) {
                best = v;
                best_s = s;
            }
        }
        window = std::pow(window, 0.5);
    }

    EtaValue out;
    out.value = best;
    out.arg_s = best_s;
    out.exact = all_exact;
    out.rel_tol = all_exact ? 0.0 : kPsorGridTol;
    out.finite = !infinite;
    return out;
}

CegrellExpCheck cegrell_exp_check(const CegrellTestFn& phi, double alpha, int trace_m,
                                  const McConfig& cfg) {
    const int n = phi.dim();
    const Ball dom = phi.domain();
    if (phi.mass() > 1.0 + 1e-9)
        throw std::invalid_argument("cegrell_exp_check: mass > 1, rescale refused");
    const bool complex_case = trace_m < 0;
    const double delta = complex_case ? 2.0 : 1.0;
    if (!(alpha > 0.0) || alpha >= delta)
        throw std::domain_error("cegrell_exp_check: need 0 < alpha < " +
                                std::to_string(delta));
    if (!complex_case && trace_m > n - 1)
        throw std::invalid_argument("cegrell_exp_check: trace needs m <= n-1");

    const AmbientSpace sp = complex_case ? AmbientSpace::full(n)
                                         : AmbientSpace(n, trace_m);
    // trace of the ball: drop the imaginary parts of the real coordinates
    RVec center((size_t)sp.real_dim(), 0.0);
    for (int j = 0; j < sp.m; ++j) {
        center[(size_t)(2 * j)] = dom.center[(size_t)(2 * j)];
        center[(size_t)(2 * j + 1)] = dom.center[(size_t)(2 * j + 1)];
    }
    for (int j = sp.m; j < sp.n; ++j) {
        center[(size_t)(sp.m + j)] = dom.center[(size_t)(2 * j)];
        if (!complex_case && std::fabs(dom.center[(size_t)(2 * j + 1)]) > 1e-12)
            throw std::invalid_argument("cegrell_exp_check: domain center off the trace");
    }
    const Ball D(center, dom.radius, sp);

    const double C = complex_case ? to_double(polya_constant_complex(n))
                                  : cegrell_trace_constant(n, trace_m);
    const double tau = D.volume();
    const double rhs = tau + C * tau * alpha / (delta - alpha);

    auto f = [&](const RVec& x, SampleRng&) {
        return std::exp(-alpha * phi.eval(embed(sp, x)));
    };
    const auto poles = poles_in_space(phi.log_poles(), sp, alpha);
    detail::McStat st = poles.empty()
                            ? detail::mc_mean_over_ball(D, cfg.n_samples, cfg.seed,
                                                        cfg.threads, f)
                            : detail::mc_integral_with_poles(D, poles, cfg.n_samples,
                                                             cfg.seed, cfg.threads, f);
    if (poles.empty()) {
        st.mean *= D.volume();
        st.std_error *= D.volume();
    }

    CegrellExpCheck out;
    std::ostringstream inst;
    inst << phi.id() << " alpha=" << alpha
         << (complex_case ? " (volume)" : " (trace m=" + std::to_string(trace_m) + ")");
    const Bound rhs_b = phi.mass_exact() ? Bound::exact(rhs) : Bound::calibrated(rhs, 0.01);
    out.exp_report = check_inequality("cegrell.exponential", inst.str(),
                                      Bound::stat(st.mean, st.std_error), rhs_b,
                                      C * alpha / (delta - alpha), cfg.seed);
    if (poles.empty() && !phi.log_poles().empty())
        out.exp_report.notes = "plain MC (pole off the trace); heavy tails possible";

    // sublevel-volume decay rows
    const double decay_C = complex_case ? to_double(polya_constant_complex(n))
                                        : cegrell_trace_constant(n, trace_m);
    for (int i = 0; i < 12; ++i) {
        const double s = 0.25 * std::pow(20.0, i / 11.0);
        DecayRow row;
        row.s = s;
        row.bound = decay_C * tau * std::exp(-delta * s);
        Bound lhs;
        if (phi.is_radial()) {
            const double r_s = dom.radius * std::exp(-s / phi.radial_weight());
            row.observed = unit_ball_volume(sp.real_dim()) *
                           std::pow(r_s, (double)sp.real_dim());
            lhs = Bound::exact(row.observed);
        } else {
            std::shared_ptr<const ComplexFunction> fn(&phi, [](const ComplexFunction*) {});
            const Region sub = Region::sublevel(sp, fn, s, D);
            const auto est = relative_volume_mc(sub, D, cfg.n_samples / 4, cfg.seed + i,
                                                cfg.threads);
            row.observed = est.value;
            row.sigma = est.std_error;
            lhs = Bound::stat(row.observed, row.sigma);
        }
        out.decay.push_back(row);
        std::ostringstream di;
        di << inst.str() << " s=" << s;
        out.decay_reports.push_back(check_inequality(
            "lemniscate.cegrell", di.str(), lhs, Bound::exact(row.bound), decay_C,
            cfg.seed));
    }
    return out;
}

InequalityReport cegrell_lp_check(const CegrellTestFn& phi, double p, int trace_m,
                                  const McConfig& cfg) {
    if (!(p > 0.0)) throw std::domain_error("cegrell_lp_check: p > 0");
    const int n = phi.dim();
    const bool complex_case = trace_m < 0;
    const AmbientSpace sp = complex_case ? AmbientSpace::full(n)
                                         : AmbientSpace(n, trace_m);
    const Ball dom = phi.domain();
    RVec center((size_t)sp.real_dim(), 0.0);
    for (int j = 0; j < sp.m; ++j) {
        center[(size_t)(2 * j)] = dom.center[(size_t)(2 * j)];
        center[(size_t)(2 * j + 1)] = dom.center[(size_t)(2 * j + 1)];
    }
    for (int j = sp.m; j < sp.n; ++j) center[(size_t)(sp.m + j)] = dom.center[(size_t)(2 * j)];
    const Ball D(center, dom.radius, sp);

    const double tau = D.volume();
    const double mass_pow = std::pow(phi.mass(), p / (double)n);
    const double rhs = complex_case
                           ? to_double(polya_constant_complex(n)) * tau *
                                 std::pow(2.0, -p) * std::tgamma(p + 1.0) * mass_pow
                           : cegrell_trace_constant(n, trace_m) * tau *
                                 std::tgamma(p + 1.0) * mass_pow;

    auto f = [&](const RVec& x, SampleRng&) {
        const double v = -phi.eval(embed(sp, x));
        return v <= 0.0 ? 0.0 : std::pow(v, p);
    };
    const auto st =
        detail::mc_mean_over_ball(D, cfg.n_samples, cfg.seed, cfg.threads, f);

    std::ostringstream inst;
    inst << phi.id() << " p=" << p
         << (complex_case ? " (volume)" : " (trace m=" + std::to_string(trace_m) + ")");
    const Bound rhs_b = phi.mass_exact() ? Bound::exact(rhs) : Bound::calibrated(rhs, 0.01);
    return check_inequality("cegrell.lp", inst.str(),
                            Bound::stat(st.mean * tau, st.std_error * tau), rhs_b,
                            std::tgamma(p + 1.0), cfg.seed);
}

std::vector<InequalityReport> eta_integral_bound(
    const Region& E, const std::vector<std::shared_ptr<const CegrellTestFn>>& U,
    const GrowthFunction& g, const McConfig& cfg, const EtaConfig& eta_cfg) {
    std::vector<InequalityReport> out;
    const EtaValue ev = eta(E, U, eta_cfg);
    const int n = U.front()->dim();
    const double C = to_double(polya_constant_complex(n));
    const double tau = E.bounding_ball().volume();

    const double eta_lo = ev.value * (1.0 - ev.rel_tol);
    const IntegralValue I = stieltjes_I(g, 2.0 / std::max(eta_lo, 1e-12));

    for (const auto& u : U) {
        std::ostringstream inst;
        inst << u->id() << " on " << E.describe() << ", g=" << g.label()
             << ", eta=" << ev.value;
        if (!ev.finite || I.divergent) {
            InequalityReport r;
            r.check_id = "eta.integral";
            r.instance = inst.str();
            r.status = CheckStatus::inconclusive;
            r.notes = ev.finite ? "I divergent at 2/eta; skipped" : "eta infinite";
            out.push_back(std::move(r));
            continue;
        }
        const AmbientSpace sp = AmbientSpace::full(n);
        const Ball dom = u->domain();
        auto f = [&](const RVec& x, SampleRng&) {
            if (!E.contains(x)) return 0.0;
            const double v = -u->eval(embed(sp, x));
            return v <= 0.0 ? 0.0 : g.eval(v);
        };
        const double gamma = (g.kind == GrowthFunction::Kind::expm1) ? g.alpha : 0.9;
        const auto poles = poles_in_space(u->log_poles(), sp, gamma);
        detail::McStat st =
            poles.empty()
                ? detail::mc_mean_over_ball(dom, cfg.n_samples, cfg.seed, cfg.threads, f)
                : detail::mc_integral_with_poles(dom, poles, cfg.n_samples, cfg.seed,
                                                 cfg.threads, f);
        if (poles.empty()) {
            st.mean *= dom.volume();
            st.std_error *= dom.volume();
        }
        const double rhs = C * tau * I.value;
        const Bound rhs_b = ev.exact ? Bound::exact(rhs) : Bound::calibrated(rhs, 0.0);
        out.push_back(check_inequality("eta.integral", inst.str(),
                                       Bound::stat(st.mean, st.std_error), rhs_b, C,
                                       cfg.seed));
    }
    return out;
}

std::vector<InequalityReport> eta_exp_bound(
    const Region& E, const std::vector<std::shared_ptr<const CegrellTestFn>>& U,
    double alpha, const McConfig& cfg, const EtaConfig& eta_cfg) {
    std::vector<InequalityReport> out;
    const EtaValue ev = eta(E, U, eta_cfg);
    const int n = U.front()->dim();
    const double C = to_double(polya_constant_complex(n));
    const double tau = E.bounding_ball().volume();
    const auto vol = region_volume_closed_form(E);

    const double eta_lo = ev.value * (1.0 - ev.rel_tol);
    const double eta_hi = ev.value * (1.0 + ev.rel_tol);

    for (const auto& u : U) {
        std::ostringstream inst;
        inst << u->id() << " on " << E.describe() << ", alpha=" << alpha
             << ", eta=" << ev.value;
        if (!ev.finite || !(alpha < 2.0 / eta_hi) || !vol) {
            InequalityReport r;
            r.check_id = "eta.exponential";
            r.instance = inst.str();
            r.status = CheckStatus::inconclusive;
            r.notes = !ev.finite ? "eta infinite"
                                 : (!vol ? "no closed-form volume for E"
                                         : "alpha out of range for this eta");
            out.push_back(std::move(r));
            continue;
        }
        const AmbientSpace sp = AmbientSpace::full(n);
        const Ball dom = u->domain();
        auto f = [&](const RVec& x, SampleRng&) {
            if (!E.contains(x)) return 0.0;
            return std::exp(-alpha * u->eval(embed(sp, x)));
        };
        const auto poles = poles_in_space(u->log_poles(), sp, alpha);
        detail::McStat st =
            poles.empty()
                ? detail::mc_mean_over_ball(dom, cfg.n_samples, cfg.seed, cfg.threads, f)
                : detail::mc_integral_with_poles(dom, poles, cfg.n_samples, cfg.seed,
                                                 cfg.threads, f);
        if (poles.empty()) {
            st.mean *= dom.volume();
            st.std_error *= dom.volume();
        }
        const double rhs = *vol + C * tau * alpha * eta_lo / (2.0 - alpha * eta_lo);
        const Bound rhs_b = ev.exact ? Bound::exact(rhs) : Bound::calibrated(rhs, 0.0);
        out.push_back(check_inequality("eta.exponential", inst.str(),
                                       Bound::stat(st.mean, st.std_error), rhs_b,
                                       alpha * eta_lo / (2.0 - alpha * eta_lo),
                                       cfg.seed));
    }
    return out;
}

InequalityReport limsup_shift_check(const CegrellTestFn& phi, double alpha, double s0,
                                    const McConfig& cfg) {
    const int n = phi.dim();
    const Ball dom = phi.domain();
    const AmbientSpace sp = AmbientSpace::full(n);
    const double gamma0 = std::pow(phi.mass(), 1.0 / n);  // eta of the shifted class
    if (!(alpha > 0.0) || !(alpha < 2.0 / gamma0))
        throw std::domain_error("limsup_shift_check: need 0 < alpha < 2/gamma");

    auto f = [&](const RVec& x, SampleRng&) {
        const double v = std::min(phi.eval(embed(sp, x)) + s0, 0.0);
        return std::exp(-alpha * v);
    };
    const auto poles = poles_in_space(phi.log_poles(), sp, alpha);
    detail::McStat st =
        poles.empty()
            ? detail::mc_mean_over_ball(dom, cfg.n_samples, cfg.seed, cfg.threads, f)
            : detail::mc_integral_with_poles(dom, poles, cfg.n_samples, cfg.seed,
                                             cfg.threads, f);
    if (poles.empty()) {
        st.mean *= dom.volume();
        st.std_error *= dom.volume();
    }
    const double C = to_double(polya_constant_complex(n));
    const double tau = dom.volume();
    const double rhs = tau + C * tau * alpha * gamma0 / (2.0 - alpha * gamma0);

    std::ostringstream inst;
    inst << "shift(" << phi.id() << ", s0=" << s0 << ") alpha=" << alpha;
    const Bound rhs_b = phi.mass_exact() ? Bound::exact(rhs) : Bound::calibrated(rhs, 0.01);
    auto rep = check_inequality("eta.limsup_shift", inst.str(),
                                Bound::stat(st.mean, st.std_error), rhs_b,
                                alpha * gamma0 / (2.0 - alpha * gamma0), cfg.seed);
    rep.notes = "shifted class v = min(u+s0, 0), gamma0 = mass^{1/n}";
    return rep;
}

// ----------------------------------------------------------------------------
// sublevel decay
// ----------------------------------------------------------------------------

LelongDecayCheck lelong_decay(const LelongTestFn& u, const Ball& B,
                              const std::vector<double>& s_grid, const McConfig& cfg) {
    const AmbientSpace sp = B.space;
    if (u.nvars() != sp.n) throw std::invalid_argument("lelong_decay: arity mismatch");
    const double C = bound_constant(sp);
    const double delta = bound_delta(sp);
    const auto M = u.max_over(B, cfg.seed + 1);

    LelongDecayCheck out;
    double worst_margin = std::numeric_limits<double>::infinity();
    DecayRow worst_row;
    for (double s : s_grid) {
        auto f = [&](const RVec& x, SampleRng&) {
            return u.eval(embed(sp, x)) <= M.value - s ? 1.0 : 0.0;
        };
        const auto st = detail::mc_mean_over_ball(B, cfg.n_samples, cfg.seed, cfg.threads, f);
        DecayRow row{s, st.mean, st.std_error, C * std::exp(-delta * s)};
        out.rows.push_back(row);
        const double margin = row.bound - (row.observed + 3.0 * row.sigma);
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_row = row;
        }
    }
    std::ostringstream inst;
    inst << u.id() << " on ball(r=" << B.radius << ",n=" << sp.n << ",m=" << sp.m
         << "), worst s=" << worst_row.s;
    auto rep = check_inequality("lemniscate.lelong", inst.str(),
                                Bound::stat(worst_row.observed, worst_row.sigma),
                                Bound::exact(worst_row.bound), C, cfg.seed);
    if (!M.exact) rep.notes = "max_B u from search (weakened instance)";
    out.reports.push_back(std::move(rep));
    return out;
}

LelongDecayCheck polynomial_lemniscate_decay(const Polynomial& P, const Ball& B,
                                             const std::vector<double>& eps_grid,
                                             const McConfig& cfg) {
    const AmbientSpace sp = B.space;
    if (P.nvars() != sp.n)
        throw std::invalid_argument("polynomial_lemniscate_decay: arity mismatch");
    const int d = P.degree();
    if (d < 1) throw std::invalid_argument("polynomial_lemniscate_decay: degree >= 1");
    const double C = bound_constant(sp);
    const double expo = bound_delta(sp);  // eps^2 on complex balls, eps on traces

    // normalize by the observed sup (a lower bound of the true norm): the
    // sublevel sets shrink, which keeps the check sound against false fails
    NormalizeMeta meta;
    const Polynomial Pn = normalize_on(P, Region::ball(B), &meta, 4096, cfg.seed);

    LelongDecayCheck out;
    double worst_margin = std::numeric_limits<double>::infinity();
    DecayRow worst_row;
    for (double eps : eps_grid) {
        const double level = std::pow(eps, (double)d);
        auto f = [&](const RVec& x, SampleRng&) {
            return Pn.abs_eval(embed(sp, x)) <= level ? 1.0 : 0.0;
        };
        const auto st = detail::mc_mean_over_ball(B, cfg.n_samples, cfg.seed, cfg.threads, f);
        DecayRow row{eps, st.mean, st.std_error, C * std::pow(eps, expo)};
        out.rows.push_back(row);
        const double margin = row.bound - (row.observed + 3.0 * row.sigma);
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_row = row;
        }
    }
    std::ostringstream inst;
    inst << "deg-" << d << " polynomial on ball(r=" << B.radius << ",n=" << sp.n
         << ",m=" << sp.m << "), worst eps=" << worst_row.s << ", norm " << meta.flavor;
    auto rep = check_inequality("lemniscate.polynomial", inst.str(),
                                Bound::stat(worst_row.observed, worst_row.sigma),
                                Bound::exact(worst_row.bound), C, cfg.seed);
    out.reports.push_back(std::move(rep));
    return out;
}

InequalityReport bernstein_walsh_check(const LelongTestFn& u, const Region& K,
                                       const Ball& B, const McConfig& cfg) {
    const AmbientSpace sp = B.space;
    if (u.nvars() != sp.n)
        throw std::invalid_argument("bernstein_walsh_check: arity mismatch");
    if (!lelong_growth_check(u, 6, cfg.seed))
        throw std::invalid_argument("bernstein_walsh_check: log-growth test failed");

    const auto MB = u.max_over(B, cfg.seed + 1);

    // sup over K from sampled candidates (a lower bound, sound on the right)
    double supK = -std::numeric_limits<double>::infinity();
    for (const auto& x : K.candidate_points(4096, cfg.seed + 2))
        supK = std::max(supK, u.eval(embed(sp, x)));

    const auto vol = relative_volume_mc(K, B, cfg.n_samples, cfg.seed + 3, cfg.threads);
    const double vol_hi = std::min(vol.relative + 3.0 * vol.relative_std_error, 1.0);
    const double C = bound_constant(sp);
    const double scale = sp.full_complex() ? 0.5 : 1.0;
    const double rhs_sound = supK + scale * std::log(C) - scale * std::log(vol_hi);
    const double rhs_raw =
        supK + scale * std::log(C) - scale * std::log(std::max(vol.relative, 1e-300));

    std::ostringstream inst;
    inst << u.id() << " K=" << K.describe() << " ball(r=" << B.radius << ",n=" << sp.n
         << ",m=" << sp.m << ")";
    const Bound lhs = MB.exact ? Bound::exact(MB.value) : Bound::lower(MB.value);
    const Bound rhs = Bound::lower(rhs_sound);
    auto rep = check_inequality("bernstein_walsh.volume", inst.str(), lhs, rhs, C,
                                cfg.seed, !MB.exact);
    {
        std::ostringstream notes;
        notes << "sup_K from search " << supK << "; relvol " << vol.relative << " +- "
              << vol.relative_std_error << "; undiscounted rhs " << rhs_raw;
        if (!MB.exact) notes << "; sup_B searched (report only)";
        rep.notes = notes.str();
    }
    return rep;
}

}  // namespace plcap
