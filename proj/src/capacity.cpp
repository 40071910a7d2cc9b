#include "plcap/capacity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cert_grid.hpp"
#include "plcap/extremal.hpp"
#include "plcap/rng.hpp"

namespace plcap {

CapacityEstimate CapacityEstimate::exact(double v, std::string prov) {
    CapacityEstimate e;
    e.value = v;
    e.lo = v;
    e.hi = v;
    e.direction = Direction::exact;
    e.provenance = std::move(prov);
    e.pluripolar = v <= 0.0;
    return e;
}

CapacityEstimate CapacityEstimate::upper(double v, std::string prov) {
    CapacityEstimate e;
    e.value = v;
    e.lo = 0.0;
    e.hi = v;
    e.direction = Direction::upper_bound;
    e.provenance = std::move(prov);
    return e;
}

CapacityEstimate CapacityEstimate::lower(double v, std::string prov) {
    CapacityEstimate e;
    e.value = v;
    e.lo = v;
    e.hi = 1.0;
    e.direction = Direction::lower_bound;
    e.provenance = std::move(prov);
    return e;
}

CapacityEstimate CapacityEstimate::two_sided(double lo, double hi, std::string prov) {
    CapacityEstimate e;
    e.lo = std::min(lo, hi);
    e.hi = hi;
    e.value = hi;
    e.direction = Direction::two_sided;
    e.provenance = std::move(prov);
    return e;
}

double CapacityEstimate::sound_upper() const {
    switch (direction) {
        case Direction::exact:
        case Direction::upper_bound:
            return value;
        case Direction::two_sided:
            return hi;
        case Direction::lower_bound:
            return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::infinity();
}

double CapacityEstimate::sound_lower() const {
    switch (direction) {
        case Direction::exact:
        case Direction::lower_bound:
            return value;
        case Direction::two_sided:
            return 0.0;  // the lower end of the bracket is heuristic
        case Direction::upper_bound:
            return 0.0;
    }
    return 0.0;
}

namespace {

// ----------------------------------------------------------------------------
// Lawson iteration for min_c max_i |(A c)_i| subject to f.c = 1. Weighted
// least squares under probability weights lower-bounds the minimax value, so
// each iteration brackets the discrete optimum.
// ----------------------------------------------------------------------------

struct MinimaxSolve {
    Eigen::VectorXcd coeffs;
    double upper = 0.0;  // max residual of the best iterate (achieved)
    double lower = 0.0;  // best weighted-L2 certificate
    double gap = 1.0;
};

MinimaxSolve lawson_minimax(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& f,
                            int max_iters, double tol) {
    const Eigen::Index rows = A.rows(), cols = A.cols();
    // particular solution of f.c = 1 and a basis of the null space of f^T
    const Eigen::VectorXcd g = f.conjugate();
    Eigen::MatrixXcd gm = g;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gm);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(cols, cols);
    const Eigen::MatrixXcd N = Q.rightCols(cols - 1);
    const Eigen::VectorXcd c0 = g / g.squaredNorm();

    const Eigen::MatrixXcd AN = A * N;
    const Eigen::VectorXcd Ac0 = A * c0;

    Eigen::VectorXd w = Eigen::VectorXd::Constant(rows, 1.0 / (double)rows);
    MinimaxSolve best;
    best.upper = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iters; ++it) {
        const Eigen::VectorXd sw = w.cwiseSqrt();
        const Eigen::MatrixXcd Aw = sw.asDiagonal() * AN;
        const Eigen::VectorXcd bw = sw.asDiagonal() * Ac0;
        Eigen::VectorXcd y;
        if (cols > 1)
            y = Aw.colPivHouseholderQr().solve(-bw);
        else
            y = Eigen::VectorXcd::Zero(0);
        const Eigen::VectorXcd c = c0 + N * y;
        const Eigen::VectorXd r = (A * c).cwiseAbs();
        const double ub = r.maxCoeff();
        const double lb = std::sqrt((w.array() * r.array().square()).sum());
        if (ub < best.upper) {
            best.upper = ub;
            best.coeffs = c;
        }
        best.lower = std::max(best.lower, lb);
        if (best.upper > 0.0 && (best.upper - best.lower) / best.upper < tol) break;
        w = (w.array() * r.array()).max(1e-300);
        w /= w.sum();
    }
    best.gap = best.upper > 0.0 ? (best.upper - best.lower) / best.upper : 0.0;
    return best;
}

std::vector<MultiIndex> monomials_up_to(int nvars, int d) {
    std::vector<MultiIndex> out;
    MultiIndex idx((size_t)nvars, 0);
    // odometer over exponents with total degree <= d
    for (;;) {
        int total = 0;
        for (int e : idx) total += e;
        if (total <= d) out.push_back(idx);
        int k = 0;
        while (k < nvars) {
            if (++idx[(size_t)k] <= d) break;
            idx[(size_t)k] = 0;
            ++k;
        }
        if (k == nvars) break;
    }
    return out;
}

Eigen::RowVectorXcd monomial_row(const std::vector<MultiIndex>& basis, const CVec& z) {
    Eigen::RowVectorXcd row(basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
        Complex v(1.0, 0.0);
        for (size_t k = 0; k < basis[j].size(); ++k)
            for (int e = 0; e < basis[j][k]; ++e) v *= z[k];
        row((Eigen::Index)j) = v;
    }
    return row;
}

}  // namespace

GreenValue green_value(const Region& K, const CVec& z, int d_max, const GreenConfig& cfg) {
    const AmbientSpace sp = K.space();
    if ((int)z.size() != sp.n) throw std::invalid_argument("green_value: point arity");
    if (d_max < 1) throw std::invalid_argument("green_value: d_max >= 1");

    // discretize K once at the largest degree
    std::vector<RVec> pts;
    detail::CertGrid grid =
        detail::cert_grid_foreach(K, d_max, cfg.max_grid_points,
                                  [&](const RVec& x) { pts.push_back(x); });
    bool certified = grid.available;
    double inflation = grid.inflation;
    if (!certified) {
        pts = K.candidate_points(cfg.fallback_grid, cfg.seed);
        inflation = 1.0;
        if (pts.empty()) throw std::runtime_error("green_value: empty discretization");
    }

    GreenValue out;
    out.degree = d_max;
    out.certified = certified;

    // degenerate when the target point collides with the discretization
    const Ball bb = K.bounding_ball();
    RVec zx((size_t)sp.real_dim());
    {
        // z must lie in G for a real-coordinate comparison; embed loosely
        for (int j = 0; j < sp.m; ++j) {
            zx[(size_t)(2 * j)] = z[(size_t)j].real();
            zx[(size_t)(2 * j + 1)] = z[(size_t)j].imag();
        }
        for (int j = sp.m; j < sp.n; ++j) zx[(size_t)(sp.m + j)] = z[(size_t)j].real();
    }
    for (const auto& p : pts) {
        if (sq_dist(p, zx) < 1e-18 * bb.radius * bb.radius) {
            out.degenerate = true;
            break;
        }
    }

    std::vector<CVec> zpts;
    zpts.reserve(pts.size());
    for (const auto& p : pts) zpts.push_back(embed(sp, p));

    std::vector<double> raw_running;  // running max of -log(m_d)/d
    double best_cert = 0.0, best_raw = 0.0, worst_gap = 0.0;
    for (int d = 1; d <= d_max; ++d) {
        const auto basis = monomials_up_to(sp.n, d);
        Eigen::MatrixXcd A((Eigen::Index)zpts.size(), (Eigen::Index)basis.size());
        for (size_t i = 0; i < zpts.size(); ++i) A.row((Eigen::Index)i) = monomial_row(basis, zpts[i]);
        const Eigen::RowVectorXcd fz = monomial_row(basis, z);
        const auto solve = lawson_minimax(A, fz.transpose(), cfg.lawson_iters, cfg.lawson_tol);
        worst_gap = std::max(worst_gap, solve.gap);
        if (solve.upper <= 0.0) continue;
        const double v_raw = -std::log(solve.upper) / d;
        best_raw = std::max(best_raw, v_raw);
        raw_running.push_back(best_raw);
        if (certified) {
            const double v_cert = -std::log(solve.upper * inflation) / d;
            best_cert = std::max(best_cert, v_cert);
        }
    }
    out.raw = best_raw;
    out.lower = std::max(best_cert, 0.0);
    out.duality_gap = worst_gap;

    // two-point Richardson in 1/d on the running values
    out.extrapolated = best_raw;
    out.extrapolated_spread = 0.0;
    const int n = (int)raw_running.size();
    if (n >= 2 && n % 2 == 0) {
        const double vfull = raw_running[(size_t)n - 1];
        const double vhalf = raw_running[(size_t)(n / 2) - 1];
        const double ex1 = 2.0 * vfull - vhalf;
        out.extrapolated = std::max(ex1, best_raw);
        if (n % 4 == 0) {
            const double vq = raw_running[(size_t)(n / 4) - 1];
            const double ex2 = 2.0 * vhalf - vq;
            out.extrapolated_spread = std::fabs(ex1 - ex2);
        } else {
            out.extrapolated_spread = 0.5 * std::fabs(ex1 - vfull);
        }
    }
    return out;
}

namespace {

std::vector<RVec> sphere_grid(const Ball& B, int count, uint64_t seed) {
    const int dim = B.space.real_dim();
    std::vector<RVec> out;
    out.reserve((size_t)count);
    if (dim == 2) {
        for (int i = 0; i < count; ++i) {
            const double t = 2.0 * std::numbers::pi * i / count;
            out.push_back({B.center[0] + B.radius * std::cos(t),
                           B.center[1] + B.radius * std::sin(t)});
        }
        return out;
    }
    for (int i = 0; i < count; ++i) {
        SampleRng rng(seed, (uint64_t)i);
        RVec w = sample_on_sphere(dim, rng);
        for (int d = 0; d < dim; ++d) w[(size_t)d] = B.center[(size_t)d] + B.radius * w[(size_t)d];
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

CapacityEstimate chebyshev_T(const Region& K, const Ball& B, int d_max,
                             const ChebyshevConfig& cfg) {
    const AmbientSpace sp = K.space();
    if (!(B.space == sp)) throw std::invalid_argument("chebyshev_T: space mismatch");
    if (d_max < 1) throw std::invalid_argument("chebyshev_T: d_max >= 1");

    auto boundary = sphere_grid(B, cfg.boundary_samples, cfg.green.seed + 7);

    double best_lower = 0.0;        // certified lower bound of max_B V_K
    double best_extrap = 0.0;       // heuristic estimate of max_B V_K
    double best_spread = 0.0;
    double worst_gap = 0.0;
    bool any_cert = false;
    RVec best_b;

    auto eval_at = [&](const RVec& bx) {
        const GreenValue gv = green_value(K, embed(sp, bx), d_max, cfg.green);
        worst_gap = std::max(worst_gap, gv.duality_gap);
        any_cert = any_cert || gv.certified;
        if (gv.lower > best_lower) best_lower = gv.lower;
        if (gv.extrapolated > best_extrap) {
            best_extrap = gv.extrapolated;
            best_spread = gv.extrapolated_spread;
            best_b = bx;
        }
        return gv;
    };

    for (const auto& bx : boundary) eval_at(bx);

    // refinement near the running maximizer
    const int dim = sp.real_dim();
    for (int round = 0; round < cfg.refine_rounds && !best_b.empty(); ++round) {
        const double eps = B.radius * std::pow(0.35, round + 1);
        const RVec anchor = best_b;
        for (int j = 0; j < 8; ++j) {
            SampleRng rng(cfg.green.seed + 31 * (round + 1), (uint64_t)j);
            RVec x((size_t)dim);
            double n2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                x[(size_t)d] = anchor[(size_t)d] - B.center[(size_t)d] + eps * rng.gaussian();
                n2 += x[(size_t)d] * x[(size_t)d];
            }
            const double nrm = std::sqrt(n2);
            if (nrm < 1e-12) continue;
            for (int d = 0; d < dim; ++d)
                x[(size_t)d] = B.center[(size_t)d] + B.radius * x[(size_t)d] / nrm;
            eval_at(x);
        }
    }

    const double hi = std::exp(-best_lower);
    const double slack = std::max(2.0 * best_spread, 1e-6);
    double lo = std::exp(-(best_extrap + slack));
    lo = std::min(lo, hi);

    std::ostringstream prov;
    prov << "chebyshev_optimizer(d_max=" << d_max << ")";
    CapacityEstimate est = CapacityEstimate::two_sided(lo, hi, prov.str());
    est.heuristic = std::exp(-best_extrap);
    if (!any_cert) {
        est.direction = CapacityEstimate::Direction::two_sided;
        est.notes = "uncertified discretization; both sides heuristic";
    }
    if (worst_gap > 1e-6) {
        std::ostringstream n2;
        n2 << "achieved duality gap " << worst_gap;
        est.notes += (est.notes.empty() ? "" : "; ") + n2.str();
    }
    if (est.hi < 1e-12) est.pluripolar = true;
    return est;
}

// ----------------------------------------------------------------------------
// Fekete configurations
// ----------------------------------------------------------------------------

namespace {

double log_dist(Complex a, Complex b) {
    return std::log(std::max(std::abs(a - b), 1e-300));
}

double config_log_product(const std::vector<Complex>& zs) {
    double s = 0.0;
    for (size_t i = 0; i < zs.size(); ++i)
        for (size_t j = i + 1; j < zs.size(); ++j) s += log_dist(zs[i], zs[j]);
    return s;
}

std::vector<Complex> fekete_config(const std::vector<Complex>& pool, int k) {
    std::vector<Complex> zs;
    if (pool.empty() || k < 2) return zs;
    // farthest pair seed
    size_t i0 = 0;
    Complex mean(0, 0);
    for (const auto& p : pool) mean += p / (double)pool.size();
    double best = -1.0;
    for (size_t i = 0; i < pool.size(); ++i)
        if (std::abs(pool[i] - mean) > best) {
            best = std::abs(pool[i] - mean);
            i0 = i;
        }
    size_t i1 = 0;
    best = -1.0;
    for (size_t i = 0; i < pool.size(); ++i)
        if (std::abs(pool[i] - pool[i0]) > best) {
            best = std::abs(pool[i] - pool[i0]);
            i1 = i;
        }
    zs.push_back(pool[i0]);
    zs.push_back(pool[i1]);

    // greedy growth
    while ((int)zs.size() < k) {
        double bs = -std::numeric_limits<double>::infinity();
        size_t bi = 0;
        for (size_t i = 0; i < pool.size(); ++i) {
            double s = 0.0;
            for (const auto& z : zs) s += log_dist(pool[i], z);
            if (s > bs) {
                bs = s;
                bi = i;
            }
        }
        zs.push_back(pool[bi]);
    }

    // coordinate-exchange sweeps
    for (int sweep = 0; sweep < 8; ++sweep) {
        bool improved = false;
        for (size_t pos = 0; pos < zs.size(); ++pos) {
            double cur = 0.0;
            for (size_t j = 0; j < zs.size(); ++j)
                if (j != pos) cur += log_dist(zs[pos], zs[j]);
            double bs = cur;
            size_t bi = SIZE_MAX;
            for (size_t i = 0; i < pool.size(); ++i) {
                double s = 0.0;
                for (size_t j = 0; j < zs.size(); ++j)
                    if (j != pos) s += log_dist(pool[i], zs[j]);
                if (s > bs + 1e-14) {
                    bs = s;
                    bi = i;
                }
            }
            if (bi != SIZE_MAX) {
                zs[pos] = pool[bi];
                improved = true;
            }
        }
        if (!improved) break;
    }
    return zs;
}

}  // namespace

FeketeResult fekete_capacity_1d(const Region& K, int k_max, uint64_t seed, int pool_size) {
    const AmbientSpace sp = K.space();
    if (!(sp.n == 1 && sp.full_complex()))
        throw std::invalid_argument("fekete_capacity_1d: plane regions only");
    if (k_max < 2) throw std::invalid_argument("fekete_capacity_1d: k_max >= 2");

    auto cands = K.candidate_points(pool_size, seed);
    std::vector<Complex> pool;
    pool.reserve(cands.size());
    for (const auto& x : cands) pool.emplace_back(x[0], x[1]);

    FeketeResult res;
    if (pool.size() < 2) {
        res.estimate = CapacityEstimate::exact(0.0, "fekete(k=" + std::to_string(k_max) + ")");
        res.estimate.pluripolar = true;
        return res;
    }

    std::vector<int> ks;
    for (int k : {k_max / 4, k_max / 2, k_max})
        if (k >= 2 && (ks.empty() || k > ks.back())) ks.push_back(k);

    for (int k : ks) {
        const auto zs = fekete_config(pool, k);
        const double S = config_log_product(zs);
        const double delta = std::exp(2.0 * S / ((double)k * (k - 1)));
        res.ks.push_back(k);
        res.deltas.push_back(delta);
        if (k == k_max) res.points = zs;
    }

    const double dmax = res.deltas.back();
    CapacityEstimate est = CapacityEstimate::upper(dmax, "fekete(k=" + std::to_string(k_max) + ")");
    if (dmax < 1e-12) {
        est.pluripolar = true;
        est.value = 0.0;
        est.hi = 0.0;
    }

    // Richardson fit ln delta_k = ln c + a ln k / k + b / k on three sizes
    if (res.ks.size() == 3 && dmax > 0.0) {
        Eigen::Matrix3d M;
        Eigen::Vector3d y;
        for (int i = 0; i < 3; ++i) {
            const double k = res.ks[(size_t)i];
            M(i, 0) = 1.0;
            M(i, 1) = std::log(k) / k;
            M(i, 2) = 1.0 / k;
            y(i) = std::log(res.deltas[(size_t)i]);
        }
        const Eigen::Vector3d sol = M.fullPivLu().solve(y);
        est.heuristic = std::exp(sol(0));
    } else {
        est.heuristic = dmax;
    }
    res.estimate = est;
    return res;
}

CapacityEstimate capacity_lower_energy(const Region& K, int n_points, uint64_t seed) {
    const AmbientSpace sp = K.space();
    if (!(sp.n == 1 && sp.full_complex()))
        throw std::invalid_argument("capacity_lower_energy: plane regions only");

    // uniform points of K by rejection from the bounding ball
    const Ball bb = K.bounding_ball();
    std::vector<Complex> zs;
    uint64_t idx = 0;
    const uint64_t budget = (uint64_t)n_points * 4096;
    while ((int)zs.size() < n_points && idx < budget) {
        SampleRng rng(seed, idx++);
        RVec x = sample_in_ball(bb, rng);
        if (K.contains(x)) zs.emplace_back(x[0], x[1]);
    }
    if (zs.size() < 8) {
        CapacityEstimate e = CapacityEstimate::lower(0.0, "energy_lower");
        e.notes = "rejection sampling starved";
        return e;
    }

    const size_t N = zs.size();
    // U-statistic mean and its asymptotic variance via per-point means
    std::vector<double> mi(N, 0.0);
    double mean = 0.0;
    for (size_t i = 0; i < N; ++i) {
        double s = 0.0;
        for (size_t j = 0; j < N; ++j)
            if (j != i) s += -log_dist(zs[i], zs[j]);
        mi[i] = s / (double)(N - 1);
        mean += mi[i] / (double)N;
    }
    double var1 = 0.0;
    for (size_t i = 0; i < N; ++i) var1 += (mi[i] - mean) * (mi[i] - mean) / (double)(N - 1);
    const double sigma = 2.0 * std::sqrt(var1 / (double)N);

    CapacityEstimate e =
        CapacityEstimate::lower(std::exp(-(mean + 3.0 * sigma)), "energy_lower");
    std::ostringstream os;
    os << "energy " << mean << " +- " << sigma << " (3-sigma folded)";
    e.notes = os.str();
    e.heuristic = std::exp(-mean);
    return e;
}

// ----------------------------------------------------------------------------
// Product formula and 1-D closed forms
// ----------------------------------------------------------------------------

CapacityEstimate factor_T(const PlaneSet& K, const PlaneSet& B) {
    // K == B
    const bool same =
        K.kind == B.kind && K.center == B.center && K.radius == B.radius &&
        K.x0 == B.x0 && K.x1 == B.x1 && K.y0 == B.y0 && K.y1 == B.y1;
    if (same) return CapacityEstimate::exact(1.0, "closed_form");

    if (K.kind == PlaneSet::Kind::disc && B.kind == PlaneSet::Kind::disc) {
        const double d = std::abs(K.center - B.center);
        if (d + K.radius > B.radius * (1.0 + 1e-12))
            throw std::invalid_argument("factor_T: K not inside B");
        return CapacityEstimate::exact(K.radius / (d + B.radius), "closed_form");
    }
    if (K.is_interval() && B.is_interval()) {
        if (K.x0 < B.x0 - 1e-12 || K.x1 > B.x1 + 1e-12)
            throw std::invalid_argument("factor_T: K not inside B");
        const ExtremalFn v = ExtremalFn::interval(K.x0, K.x1);
        const double va = v.eval(CVec{Complex(B.x0, 0.0)});
        const double vb = v.eval(CVec{Complex(B.x1, 0.0)});
        return CapacityEstimate::exact(std::exp(-std::max(va, vb)), "closed_form");
    }
    if (K.is_interval() && B.kind == PlaneSet::Kind::disc) {
        const ExtremalFn v = ExtremalFn::interval(K.x0, K.x1);
        const Ball disc({B.center.real(), B.center.imag()}, B.radius, AmbientSpace(1, 1));
        const MaxOverBall m = max_over_ball(v, disc);
        CapacityEstimate e = CapacityEstimate::exact(std::exp(-m.value), "closed_form");
        if (!m.exact) {
            e.direction = CapacityEstimate::Direction::upper_bound;
            e.notes = "boundary sweep maximizer";
            e.lo = 0.0;
        }
        return e;
    }
    // generic plane factor: optimizer path
    const Region Kr = Region::plane(K);
    PlaneSet Bd = B;
    if (B.kind != PlaneSet::Kind::disc)
        throw std::invalid_argument("factor_T: unsupported factor pair");
    CapacityEstimate e = chebyshev_T(
        Kr, Ball({B.center.real(), B.center.imag()}, B.radius, AmbientSpace(1, 1)), 8);
    return e;
}

CapacityEstimate product_T(const std::vector<FactorPair>& factors) {
    if (factors.empty()) throw std::invalid_argument("product_T: no factors");
    double lo = std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool all_exact = true;
    bool pluripolar = false;
    for (const auto& fp : factors) {
        const CapacityEstimate e = factor_T(fp.K, fp.B);
        all_exact = all_exact && e.direction == CapacityEstimate::Direction::exact;
        lo = std::min(lo, e.direction == CapacityEstimate::Direction::exact ? e.value : e.lo);
        hi = std::min(hi, e.direction == CapacityEstimate::Direction::exact ? e.value : e.hi);
        pluripolar = pluripolar || e.pluripolar;
    }
    CapacityEstimate out = all_exact ? CapacityEstimate::exact(hi, "product_formula")
                                     : CapacityEstimate::two_sided(lo, hi, "product_formula");
    out.pluripolar = pluripolar;
    return out;
}

double capacity_1d_closed_form(const Region& K, bool* ok) {
    if (ok) *ok = false;
    const AmbientSpace sp = K.space();
    if (!(sp.n == 1 && sp.full_complex())) return 0.0;
    if (const Ball* b = K.as_ball()) {
        if (ok) *ok = true;
        return b->radius;
    }
    if (const BoxData* bx = K.as_box()) {
        if (bx->hi[1] == bx->lo[1]) {  // interval on the real axis
            if (ok) *ok = true;
            return 0.25 * (bx->hi[0] - bx->lo[0]);
        }
    }
    if (const FiniteSetData* fs = K.as_finite_set()) {
        (void)fs;
        if (ok) *ok = true;
        return 0.0;
    }
    return 0.0;
}

InequalityReport compare_c_and_T_1d(const Region& K, const Ball& D, uint64_t seed) {
    const AmbientSpace sp(1, 1);
    if (!(K.space() == sp) || !(D.space == sp))
        throw std::invalid_argument("compare_c_and_T_1d: plane instances only");

    bool closed = false;
    const double c_exact = capacity_1d_closed_form(K, &closed);

    const FeketeResult fek = fekete_capacity_1d(K, 32, seed);
    if (fek.estimate.pluripolar && !closed) {
        InequalityReport r;
        r.check_id = "capacity.c_vs_T";
        r.instance = K.describe() + " in " + "disc(R=" + std::to_string(D.radius) + ")";
        r.status = CheckStatus::inconclusive;
        r.notes = "pluripolar instance skipped";
        return r;
    }

    Bound lhs = closed ? Bound::exact(c_exact) : Bound::upper(fek.estimate.value);

    // right side: 2R T_D(K), closed form when available, else optimizer bracket
    double T_lo = 0.0;
    bool t_closed = false;
    if (const Ball* kb = K.as_ball()) {
        const double d = std::hypot(kb->center[0] - D.center[0], kb->center[1] - D.center[1]);
        T_lo = kb->radius / (d + D.radius);
        t_closed = true;
    } else if (const BoxData* bx = K.as_box(); bx && bx->hi[1] == bx->lo[1]) {
        const ExtremalFn v = ExtremalFn::interval(bx->lo[0], bx->hi[0]);
        const MaxOverBall m = max_over_ball(v, D);
        if (m.exact) {
            T_lo = std::exp(-m.value);
            t_closed = true;
        }
    }
    std::string notes;
    bool report_only = false;
    if (!t_closed) {
        const CapacityEstimate T = chebyshev_T(K, D, 8);
        T_lo = T.lo;
        notes = "optimizer bracket [" + std::to_string(T.lo) + "," + std::to_string(T.hi) +
                "]; lower side heuristic";
        report_only = true;
    }
    Bound rhs = t_closed ? Bound::exact(2.0 * D.radius * T_lo)
                         : Bound::lower(2.0 * D.radius * T_lo);

    std::ostringstream inst;
    inst << K.describe() << " in disc(R=" << D.radius << ")";
    auto r = check_inequality("capacity.c_vs_T", inst.str(), lhs, rhs, 2.0 * D.radius,
                              seed, report_only, notes);
    return r;
}

}  // namespace plcap
