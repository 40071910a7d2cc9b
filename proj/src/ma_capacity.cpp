#include "plcap/ma_capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "plcap/capacity.hpp"
#include "plcap/extremal.hpp"
#include "plcap/kernels.hpp"

namespace plcap {

CapValue cap_concentric(double r, double R, int n) {
    if (n < 1) throw std::domain_error("cap_concentric: n >= 1 required");
    if (!(r > 0.0) || r >= R) throw std::domain_error("cap_concentric: need 0 < r < R");
    const double L = std::log(R / r);
    if (L < 1e-12) return {std::numeric_limits<double>::infinity(), true};
    return {std::pow(L, -(double)n), false};
}

namespace {

struct RadialGreenFn final : CegrellTestFn {
    CVec a;
    double R;
    double w;
    int n;

    RadialGreenFn(CVec a_, double R_, double w_, int n_)
        : a(std::move(a_)), R(R_), w(w_), n(n_) {}

    double eval(std::span<const Complex> z) const override {
        double d2 = 0.0;
        for (int j = 0; j < n; ++j) d2 += std::norm(z[(size_t)j] - a[(size_t)j]);
        const double d = std::sqrt(d2);
        if (d <= 0.0) return -std::numeric_limits<double>::infinity();
        return w * std::log(d / R);
    }

    std::string id() const override {
        std::ostringstream os;
        os << "radial_green(n=" << n << ",R=" << R << ",w=" << w << ")";
        return os.str();
    }

    double mass() const override { return std::pow(w, (double)n); }
    bool mass_exact() const override { return true; }
    int dim() const override { return n; }
    bool is_radial() const override { return true; }
    double radial_weight() const override { return w; }
    std::vector<std::pair<CVec, double>> log_poles() const override { return {{a, w}}; }
    Spec spec() const override {
        Spec s{"radial_green", {(double)n, R, w}};
        for (const Complex& c : a) {
            s.params.push_back(c.real());
            s.params.push_back(c.imag());
        }
        return s;
    }
    Ball domain() const override {
        RVec c((size_t)(2 * n));
        for (int j = 0; j < n; ++j) {
            c[(size_t)(2 * j)] = a[(size_t)j].real();
            c[(size_t)(2 * j + 1)] = a[(size_t)j].imag();
        }
        return Ball(std::move(c), R, AmbientSpace::full(n));
    }
};

struct MaxOfGreensFn final : CegrellTestFn {
    Complex c0;
    double R;
    std::vector<Complex> poles;
    std::vector<double> weights;
    double mass_ = 0.0;

    MaxOfGreensFn(Complex c0_, double R_, std::vector<Complex> p, std::vector<double> w)
        : c0(c0_), R(R_), poles(std::move(p)), weights(std::move(w)) {
        mass_ = boundary_flux_mass();
    }

    double green(Complex z, Complex a) const {
        const Complex u = (z - c0) / R;
        const Complex al = (a - c0) / R;
        const double num = std::abs(u - al);
        const double den = std::abs(Complex(1.0, 0.0) - std::conj(al) * u);
        if (num <= 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(num / den);
    }

    double eval(std::span<const Complex> z) const override {
        double v = -std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < poles.size(); ++j)
            v = std::max(v, weights[j] * green(z[0], poles[j]));
        return v;
    }

    std::string id() const override {
        return "max_of_greens(" + std::to_string(poles.size()) + ")";
    }

    // total Laplacian mass / 2 pi from the radial derivative on a ring near
    // the boundary (the poles stay well inside)
    double boundary_flux_mass() const {
        const int M = 4096;
        const double rho = 0.985 * R;
        const double dr = 1e-4 * R;
        double flux = 0.0;
        for (int i = 0; i < M; ++i) {
            const double t = 2.0 * std::numbers::pi * i / M;
            const Complex dir(std::cos(t), std::sin(t));
            const Complex zi = c0 + (rho - dr) * dir;
            const Complex zo = c0 + (rho + dr) * dir;
            const CVec vin{zi}, vout{zo};
            flux += (eval(vout) - eval(vin)) / (2.0 * dr);
        }
        return flux * rho * (2.0 * std::numbers::pi / M) / (2.0 * std::numbers::pi);
    }

    double mass() const override { return mass_; }
    bool mass_exact() const override { return false; }
    int dim() const override { return 1; }
    std::vector<std::pair<CVec, double>> log_poles() const override {
        // the maximum of two or more potentials stays bounded near each pole
        if (poles.size() != 1) return {};
        return {{CVec{poles[0]}, weights[0]}};
    }
    Spec spec() const override {
        Spec s{"max_of_greens", {R, c0.real(), c0.imag()}};
        for (size_t j = 0; j < poles.size(); ++j) {
            s.params.push_back(weights[j]);
            s.params.push_back(poles[j].real());
            s.params.push_back(poles[j].imag());
        }
        return s;
    }
    Ball domain() const override {
        return Ball({c0.real(), c0.imag()}, R, AmbientSpace(1, 1));
    }
};

}  // namespace

std::shared_ptr<const CegrellTestFn> radial_green(CVec center, double R, double weight,
                                                  int n) {
    if ((int)center.size() != n) throw std::invalid_argument("radial_green: center arity");
    if (R <= 0.0 || weight <= 0.0) throw std::invalid_argument("radial_green: R, w > 0");
    return std::make_shared<RadialGreenFn>(std::move(center), R, weight, n);
}

std::shared_ptr<const CegrellTestFn> max_of_greens(Complex disc_center, double R,
                                                   std::vector<Complex> poles,
                                                   std::vector<double> weights) {
    if (poles.empty() || poles.size() != weights.size())
        throw std::invalid_argument("max_of_greens: poles/weights mismatch");
    for (const Complex& a : poles)
        if (std::abs(a - disc_center) >= 0.9 * R)
            throw std::invalid_argument("max_of_greens: poles must sit inside the disc");
    return std::make_shared<MaxOfGreensFn>(disc_center, R, std::move(poles),
                                           std::move(weights));
}

std::shared_ptr<const CegrellTestFn> cegrell_fn_from_spec(const CegrellTestFn::Spec& s) {
    if (s.kind == "radial_green") {
        if (s.params.size() < 3) throw std::invalid_argument("radial_green spec");
        const int n = (int)s.params[0];
        if ((int)s.params.size() != 3 + 2 * n)
            throw std::invalid_argument("radial_green spec arity");
        CVec center((size_t)n);
        for (int j = 0; j < n; ++j)
            center[(size_t)j] = Complex(s.params[(size_t)(3 + 2 * j)],
                                        s.params[(size_t)(4 + 2 * j)]);
        return radial_green(std::move(center), s.params[1], s.params[2], n);
    }
    if (s.kind == "max_of_greens") {
        if (s.params.size() < 6 || (s.params.size() - 3) % 3 != 0)
            throw std::invalid_argument("max_of_greens spec");
        const double R = s.params[0];
        const Complex c0(s.params[1], s.params[2]);
        std::vector<Complex> poles;
        std::vector<double> weights;
        for (size_t j = 3; j + 2 < s.params.size() + 1; j += 3) {
            weights.push_back(s.params[j]);
            poles.emplace_back(s.params[j + 1], s.params[j + 2]);
        }
        return max_of_greens(c0, R, std::move(poles), std::move(weights));
    }
    throw std::invalid_argument("unknown psh test function kind: " + s.kind);
}

// ----------------------------------------------------------------------------
// projected SOR
// ----------------------------------------------------------------------------

RelExtremalField rel_extremal_1d(const Region& K, const Region& omega,
                                 const PsorConfig& cfg) {
    const AmbientSpace sp(1, 1);
    if (!(K.space() == sp) || !(omega.space() == sp))
        throw std::invalid_argument("rel_extremal_1d: plane condensers only");
    if (cfg.nx < 16) throw std::invalid_argument("rel_extremal_1d: grid too small");

    const Ball bb = omega.bounding_ball();
    const int nx = cfg.nx, ny = cfg.nx;
    const double x0 = bb.center[0] - bb.radius, y0 = bb.center[1] - bb.radius;
    const double dx = 2.0 * bb.radius / (nx - 1);

    const size_t total = (size_t)nx * ny;
    std::vector<double> h(total, 0.0), psi(total, 0.0);
    std::vector<double> mo_red(total, 0.0), mo_black(total, 0.0);
    std::vector<uint8_t> in_omega(total, 0);

    RVec p(2);
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            const size_t i = (size_t)y * nx + x;
            p[0] = x0 + x * dx;
            p[1] = y0 + y * dx;
            const bool border = (x == 0 || y == 0 || x == nx - 1 || y == ny - 1);
            const bool inside = !border && omega.contains(p);
            in_omega[i] = inside ? 1 : 0;
            if (!inside) continue;  // Dirichlet 0 outside and on the frame
            if (K.contains(p)) psi[i] = -1.0;
            const bool red = ((x + y) & 1) == 0;
            (red ? mo_red : mo_black)[i] = cfg.omega;
        }
    }
    for (size_t i = 0; i < total; ++i) h[i] = std::min(h[i], psi[i]);

    const auto& kern = kern::active();
    RelExtremalField out;
    out.nx = nx;
    out.ny = ny;
    out.x0 = x0;
    out.y0 = y0;
    out.dx = dx;

    double res = std::numeric_limits<double>::infinity();
    long sweep = 0;
    for (; sweep < cfg.max_sweeps; ++sweep) {
        const double r1 = kern.psor_sweep(h.data(), psi.data(), mo_red.data(), nx, ny);
        const double r2 = kern.psor_sweep(h.data(), psi.data(), mo_black.data(), nx, ny);
        res = std::max(r1, r2);
        if (res <= cfg.tol) {
            ++sweep;
            break;
        }
    }
    out.sweeps = sweep;
    out.residual = res;
    out.converged = res <= cfg.tol;

    // interior Laplacian mass / 2 pi over Omega nodes
    double mass = 0.0;
    size_t omega_nodes = 0, saturated = 0;
    for (int y = 1; y < ny - 1; ++y) {
        for (int x = 1; x < nx - 1; ++x) {
            const size_t i = (size_t)y * nx + x;
            if (!in_omega[i]) continue;
            ++omega_nodes;
            if (h[i] <= -1.0 + 1e-7) ++saturated;
            mass += h[i - 1] + h[i + 1] + h[i - (size_t)nx] + h[i + (size_t)nx] - 4.0 * h[i];
        }
    }
    out.cap = mass / (2.0 * std::numbers::pi);
    if (omega_nodes > 0 && (double)saturated >= 0.995 * (double)omega_nodes) {
        out.cap_infinite = true;  // obstacle saturates the whole domain
    }
    out.h = std::move(h);
    return out;
}

InequalityReport sublevel_cap_bound(const std::shared_ptr<const CegrellTestFn>& phi,
                                    double s, const PsorConfig& cfg) {
    if (!phi) throw std::invalid_argument("sublevel_cap_bound: null function");
    if (!(s > 0.0)) throw std::domain_error("sublevel_cap_bound: s > 0 required");
    const int n = phi->dim();
    const Ball dom = phi->domain();

    std::ostringstream inst;
    inst << phi->id() << " s=" << s;

    if (phi->is_radial()) {
        // sublevel = concentric ball of radius R e^{-s/w}
        const double w = phi->radial_weight();
        const double r_sub = dom.radius * std::exp(-s / w);
        const CapValue cap = cap_concentric(r_sub, dom.radius, n);
        const double rhs = std::pow(s, -(double)n) * phi->mass();
        auto rep = check_inequality("sublevel_capacity_bound", inst.str(),
                                    Bound::exact(cap.value), Bound::exact(rhs),
                                    std::pow(s, -(double)n), cfg.seed);
        std::ostringstream notes;
        notes << "ratio " << cap.value / rhs;
        rep.notes = notes.str();
        return rep;
    }

    if (n == 1) {
        // PSOR path on the sublevel set
        const Region sub = Region::sublevel(AmbientSpace(1, 1), phi, s, dom);
        const Region om = Region::ball(dom);
        const RelExtremalField field = rel_extremal_1d(sub, om, cfg);
        const double rhs = phi->mass() / s;
        auto rep = check_inequality(
            "sublevel_capacity_bound", inst.str(),
            Bound::calibrated(field.cap, kPsorGridTol),
            Bound::calibrated(rhs, phi->mass_exact() ? 0.0 : 0.01), 1.0 / s, cfg.seed);
        std::ostringstream notes;
        notes << "ratio " << field.cap / rhs << "; psor sweeps " << field.sweeps;
        rep.notes = notes.str();
        return rep;
    }

    InequalityReport rep;
    rep.check_id = "sublevel_capacity_bound";
    rep.instance = inst.str();
    rep.status = CheckStatus::inconclusive;
    rep.notes = "unsupported variant";
    return rep;
}

InequalityReport alexander_taylor_check(const Region& E, const Region& omega,
                                        const Ball& Xi, uint64_t seed,
                                        const PsorConfig& cfg) {
    std::ostringstream inst;
    inst << E.describe() << " in " << omega.describe() << " in ball(R=" << Xi.radius
         << ")";

    const Ball* eb = E.as_ball();
    const Ball* ob = omega.as_ball();

    auto concentric = [](const RVec& a, const RVec& b) {
        return std::sqrt(sq_dist(a, b)) <= 1e-14;
    };

    // closed-form ball condensers
    if (eb && ob && concentric(eb->center, ob->center) && concentric(eb->center, Xi.center)) {
        const int n = Xi.space.n;
        if (eb->radius >= ob->radius * (1.0 - 1e-14)) {
            // E fills Omega: cap = infinity, right side is 1
            const double T = eb->radius / Xi.radius;
            auto rep = check_inequality("capacity.alexander_taylor", inst.str(),
                                        Bound::exact(T), Bound::exact(1.0), 1.0, seed);
            rep.notes = "degenerate condenser: cap = infinity";
            return rep;
        }
        const double T = eb->radius / Xi.radius;  // envelope of the ball is exact
        const CapValue cap = cap_concentric(eb->radius, ob->radius, n);
        const double rhs = std::exp(-std::pow(cap.value, -1.0 / n));
        auto rep = check_inequality("capacity.alexander_taylor", inst.str(),
                                    Bound::exact(T), Bound::exact(rhs), 1.0, seed);
        std::ostringstream notes;
        notes << "cap=" << cap.value << " T=" << T;
        rep.notes = notes.str();
        return rep;
    }

    // 1-D numeric path: exact/closed T upper when available, PSOR cap
    if (E.space().n == 1 && E.space().full_complex()) {
        Bound lhs = Bound::upper(0.0);
        bool have_lhs = false;
        if (const BoxData* bx = E.as_box(); bx && bx->hi[1] == bx->lo[1]) {
            const ExtremalFn v = ExtremalFn::interval(bx->lo[0], bx->hi[0]);
            const MaxOverBall m = max_over_ball(v, Xi);
            lhs = m.exact ? Bound::exact(std::exp(-m.value))
                          : Bound::lower(std::exp(-m.value));
            have_lhs = m.exact;
        } else if (eb) {
            const double d = std::hypot(eb->center[0] - Xi.center[0],
                                        eb->center[1] - Xi.center[1]);
            lhs = Bound::exact(eb->radius / (d + Xi.radius));
            have_lhs = true;
        }
        if (!have_lhs) {
            const CapacityEstimate T = chebyshev_T(E, Xi, 8);
            lhs = Bound::upper(T.hi);
        }
        const RelExtremalField field = rel_extremal_1d(E, omega, cfg);
        if (field.cap_infinite) {
            auto rep = check_inequality("capacity.alexander_taylor", inst.str(), lhs,
                                        Bound::exact(1.0), 1.0, seed);
            rep.notes = "cap = infinity (saturated obstacle)";
            return rep;
        }
        // rhs is increasing in cap, so feed its calibrated lower end
        const double cap_lo = field.cap * (1.0 - kPsorGridTol);
        const double rhs = std::exp(-std::pow(std::max(cap_lo, 1e-300), -1.0));
        auto rep = check_inequality("capacity.alexander_taylor", inst.str(), lhs,
                                    Bound::lower(rhs), 1.0, seed);
        std::ostringstream notes;
        notes << "psor cap " << field.cap << " (grid tol " << kPsorGridTol
              << "), sweeps " << field.sweeps;
        rep.notes = notes.str();
        return rep;
    }

    InequalityReport rep;
    rep.check_id = "capacity.alexander_taylor";
    rep.instance = inst.str();
    rep.status = CheckStatus::inconclusive;
    rep.notes = "incompatible bound directions for this variant";
    return rep;
}

}  // namespace plcap
