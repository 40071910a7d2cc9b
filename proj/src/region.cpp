#include "plcap/region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "plcap/kernels.hpp"
#include "plcap/rng.hpp"

namespace plcap {

PlaneSet PlaneSet::disc(Complex c, double r) {
    if (r <= 0.0) throw std::invalid_argument("PlaneSet::disc: radius > 0 required");
    PlaneSet f;
    f.kind = Kind::disc;
    f.center = c;
    f.radius = r;
    return f;
}

PlaneSet PlaneSet::rect(double x0, double x1, double y0, double y1) {
    if (x1 < x0 || y1 < y0) throw std::invalid_argument("PlaneSet::rect: empty");
    PlaneSet f;
    f.kind = Kind::rect;
    f.x0 = x0;
    f.x1 = x1;
    f.y0 = y0;
    f.y1 = y1;
    return f;
}

PlaneSet PlaneSet::interval(double a, double b) { return rect(a, b, 0.0, 0.0); }

bool PlaneSet::contains(Complex z) const {
    if (kind == Kind::disc) return std::norm(z - center) <= radius * radius;
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
}

double PlaneSet::area() const {
    if (kind == Kind::disc) return std::numbers::pi * radius * radius;
    return (x1 - x0) * (y1 - y0);
}

RVec sample_in_ball(const Ball& b, SampleRng& rng) {
    const int k = b.space.real_dim();
    RVec g((size_t)k);
    for (int i = 0; i < k; ++i) g[(size_t)i] = rng.gaussian();
    double nrm = std::sqrt(sq_norm(g));
    if (nrm == 0.0) nrm = 1.0;
    const double r = b.radius * std::pow(rng.u01(), 1.0 / k);
    RVec x((size_t)k);
    for (int i = 0; i < k; ++i) x[(size_t)i] = b.center[(size_t)i] + r * g[(size_t)i] / nrm;
    return x;
}

RVec sample_on_sphere(int dim, SampleRng& rng) {
    RVec g((size_t)dim);
    for (;;) {
        for (int i = 0; i < dim; ++i) g[(size_t)i] = rng.gaussian();
        const double nrm = std::sqrt(sq_norm(g));
        if (nrm > 1e-12) {
            for (int i = 0; i < dim; ++i) g[(size_t)i] /= nrm;
            return g;
        }
    }
}

struct Region::Impl {
    RegionKind kind;
    AmbientSpace space;

    Impl(RegionKind k, AmbientSpace sp) : kind(k), space(sp) {}
    virtual ~Impl() = default;

    virtual bool contains(std::span<const double> x) const = 0;
    virtual Ball bounding() const = 0;
    virtual std::vector<RVec> candidates(int k, uint64_t seed) const = 0;
    virtual std::string describe() const = 0;

    virtual void contains_batch(const PointBatch& pts, uint8_t* out) const {
        RVec x((size_t)pts.dim);
        for (size_t i = 0; i < pts.n; ++i) {
            for (int d = 0; d < pts.dim; ++d) x[(size_t)d] = pts.col(d)[i];
            out[i] = contains(x) ? 1 : 0;
        }
    }
};

namespace {

struct BallImpl final : Region::Impl {
    Ball b;
    explicit BallImpl(Ball bb) : Impl(RegionKind::ball, bb.space), b(std::move(bb)) {}

    bool contains(std::span<const double> x) const override { return b.contains(x); }
    Ball bounding() const override { return b; }

    void contains_batch(const PointBatch& pts, uint8_t* out) const override {
        const auto& k = kern::active();
        std::vector<const double*> cols((size_t)pts.dim);
        for (int d = 0; d < pts.dim; ++d) cols[(size_t)d] = pts.col(d);
        std::vector<double> d2(pts.n);
        k.sqdist(cols.data(), b.center.data(), pts.dim, pts.n, d2.data());
        k.mask_le(d2.data(), pts.n, b.radius * b.radius, out);
    }

    std::vector<RVec> candidates(int k, uint64_t seed) const override {
        std::vector<RVec> out;
        out.reserve((size_t)k);
        const int dim = space.real_dim();
        const int n_boundary = (2 * k) / 3;
        if (dim == 2) {
            SampleRng rot(seed, 0);
            const double phase = rot.u01() * 2.0 * std::numbers::pi;
            for (int i = 0; i < n_boundary; ++i) {
                const double t = phase + 2.0 * std::numbers::pi * i / n_boundary;
                out.push_back({b.center[0] + b.radius * std::cos(t),
                               b.center[1] + b.radius * std::sin(t)});
            }
        } else {
            for (int i = 0; i < n_boundary; ++i) {
                SampleRng rng(seed, (uint64_t)i);
                RVec w = sample_on_sphere(dim, rng);
                for (int d = 0; d < dim; ++d)
                    w[(size_t)d] = b.center[(size_t)d] + b.radius * w[(size_t)d];
                out.push_back(std::move(w));
            }
        }
        for (int i = n_boundary; i < k; ++i) {
            SampleRng rng(seed, (uint64_t)i);
            out.push_back(sample_in_ball(b, rng));
        }
        return out;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "ball(r=" << b.radius << ",dim=" << space.real_dim() << ")";
        return os.str();
    }
};

struct BoxImpl final : Region::Impl {
    BoxData d;
    explicit BoxImpl(BoxData dd) : Impl(RegionKind::box, dd.space), d(std::move(dd)) {}

    bool contains(std::span<const double> x) const override {
        for (size_t i = 0; i < d.lo.size(); ++i)
            if (x[i] < d.lo[i] || x[i] > d.hi[i]) return false;
        return true;
    }

    Ball bounding() const override {
        RVec c(d.lo.size());
        double r2 = 0.0;
        for (size_t i = 0; i < d.lo.size(); ++i) {
            c[i] = 0.5 * (d.lo[i] + d.hi[i]);
            const double h = 0.5 * (d.hi[i] - d.lo[i]);
            r2 += h * h;
        }
        return Ball(std::move(c), std::max(std::sqrt(r2), 1e-300), space);
    }

    std::vector<RVec> candidates(int k, uint64_t seed) const override {
        std::vector<RVec> out;
        out.reserve((size_t)k);
        const size_t dim = d.lo.size();
        for (int i = 0; i < k; ++i) {
            SampleRng rng(seed, (uint64_t)i);
            RVec x(dim);
            for (size_t j = 0; j < dim; ++j) {
                if (d.hi[j] == d.lo[j]) {
                    x[j] = d.lo[j];
                    continue;
                }
                const double u = rng.u01();
                // boundary-biased: snap a third of the draws to a face
                if (u < 1.0 / 6.0)
                    x[j] = d.lo[j];
                else if (u < 1.0 / 3.0)
                    x[j] = d.hi[j];
                else
                    x[j] = d.lo[j] + (d.hi[j] - d.lo[j]) * rng.u01();
            }
            out.push_back(std::move(x));
        }
        return out;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "box(dim=" << d.lo.size() << ")";
        return os.str();
    }
};

struct ProductImpl final : Region::Impl {
    ProductData d;
    explicit ProductImpl(ProductData dd)
        : Impl(RegionKind::product, dd.space), d(std::move(dd)) {}

    bool contains(std::span<const double> x) const override {
        for (int j = 0; j < space.m; ++j) {
            if (!d.complex_factors[(size_t)j].contains(
                    Complex(x[(size_t)(2 * j)], x[(size_t)(2 * j + 1)])))
                return false;
        }
        for (int j = 0; j < space.n - space.m; ++j) {
            const double v = x[(size_t)(2 * space.m + j)];
            const auto& iv = d.real_factors[(size_t)j];
            if (v < iv.a || v > iv.b) return false;
        }
        return true;
    }

    Ball bounding() const override {
        RVec c((size_t)space.real_dim(), 0.0);
        double r2 = 0.0;
        for (int j = 0; j < space.m; ++j) {
            const auto& f = d.complex_factors[(size_t)j];
            if (f.kind == PlaneSet::Kind::disc) {
                c[(size_t)(2 * j)] = f.center.real();
                c[(size_t)(2 * j + 1)] = f.center.imag();
                r2 += f.radius * f.radius;
            } else {
                c[(size_t)(2 * j)] = 0.5 * (f.x0 + f.x1);
                c[(size_t)(2 * j + 1)] = 0.5 * (f.y0 + f.y1);
                const double hx = 0.5 * (f.x1 - f.x0), hy = 0.5 * (f.y1 - f.y0);
                r2 += hx * hx + hy * hy;
            }
        }
        for (int j = 0; j < space.n - space.m; ++j) {
            const auto& iv = d.real_factors[(size_t)j];
            c[(size_t)(2 * space.m + j)] = 0.5 * (iv.a + iv.b);
            const double h = 0.5 * (iv.b - iv.a);
            r2 += h * h;
        }
        return Ball(std::move(c), std::max(std::sqrt(r2), 1e-300), space);
    }

    std::vector<RVec> candidates(int k, uint64_t seed) const override {
        std::vector<RVec> out;
        out.reserve((size_t)k);
        for (int i = 0; i < k; ++i) {
            SampleRng rng(seed, (uint64_t)i);
            RVec x((size_t)space.real_dim());
            for (int j = 0; j < space.m; ++j) {
                const auto& f = d.complex_factors[(size_t)j];
                Complex z;
                if (f.kind == PlaneSet::Kind::disc) {
                    const double u = rng.u01();
                    const double t = 2.0 * std::numbers::pi * rng.u01();
                    const double r = (u < 0.5) ? f.radius : f.radius * std::sqrt(rng.u01());
                    z = f.center + Complex(r * std::cos(t), r * std::sin(t));
                } else {
                    const double ux = rng.u01(), uy = rng.u01();
                    const double px = (ux < 0.2) ? f.x0 : (ux < 0.4 ? f.x1 : f.x0 + (f.x1 - f.x0) * rng.u01());
                    const double py = (f.y0 == f.y1)
                                          ? f.y0
                                          : ((uy < 0.2) ? f.y0
                                                        : (uy < 0.4 ? f.y1 : f.y0 + (f.y1 - f.y0) * rng.u01()));
                    z = Complex(px, py);
                }
                x[(size_t)(2 * j)] = z.real();
                x[(size_t)(2 * j + 1)] = z.imag();
            }
            for (int j = 0; j < space.n - space.m; ++j) {
                const auto& iv = d.real_factors[(size_t)j];
                const double u = rng.u01();
                x[(size_t)(2 * space.m + j)] =
                    (u < 0.2) ? iv.a : (u < 0.4 ? iv.b : iv.a + (iv.b - iv.a) * rng.u01());
            }
            out.push_back(std::move(x));
        }
        return out;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "product(m=" << space.m << ",n=" << space.n << ")";
        return os.str();
    }
};

struct LemniscateImpl final : Region::Impl {
    LemniscateData d;
    explicit LemniscateImpl(LemniscateData dd)
        : Impl(RegionKind::lemniscate, dd.space), d(std::move(dd)) {}

    bool contains(std::span<const double> x) const override {
        if (!d.bounding.contains(x)) return false;
        const CVec z = embed(space, x);
        return d.poly.abs_eval(z) <= d.threshold;
    }

    Ball bounding() const override { return d.bounding; }

    std::vector<RVec> candidates(int k, uint64_t seed) const override {
        std::vector<RVec> out;
        out.reserve((size_t)k);
        uint64_t idx = 0;
        const uint64_t budget = (uint64_t)k * 256;
        while ((int)out.size() < k && idx < budget) {
            SampleRng rng(seed, idx++);
            RVec x = sample_in_ball(d.bounding, rng);
            if (contains(x)) out.push_back(std::move(x));
        }
        return out;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "lemniscate(d=" << d.poly.degree() << ",t=" << d.threshold << ")";
        return os.str();
    }
};

struct SublevelImpl final : Region::Impl {
    SublevelData d;
    explicit SublevelImpl(SublevelData dd)
        : Impl(RegionKind::sublevel, dd.space), d(std::move(dd)) {}

    bool contains(std::span<const double> x) const override {
        if (!d.bounding.contains(x)) return false;
        const CVec z = embed(space, x);
        return d.fn->eval(z) <= -d.s;
    }

    Ball bounding() const override { return d.bounding; }

    std::vector<RVec> candidates(int k, uint64_t seed) const override {
        std::vector<RVec> out;
        out.reserve((size_t)k);
        uint64_t idx = 0;
        const uint64_t budget = (uint64_t)k * 256;
        while ((int)out.size() < k && idx < budget) {
            SampleRng rng(seed, idx++);
            RVec x = sample_in_ball(d.bounding, rng);
            if (contains(x)) out.push_back(std::move(x));
        }
        return out;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "sublevel(" << d.fn->id() << ",s=" << d.s << ")";
        return os.str();
    }
};

struct UnionImpl final : Region::Impl {
    std::vector<Region> members;
    explicit UnionImpl(std::vector<Region> m)
        : Impl(RegionKind::union_of, m.at(0).space()), members(std::move(m)) {}

    bool contains(std::span<const double> x) const override {
        for (const auto& r : members)
            if (r.contains(x)) return true;
        return false;
    }

    void contains_batch(const PointBatch& pts, uint8_t* out) const override {
        std::fill(out, out + pts.n, (uint8_t)0);
        std::vector<uint8_t> tmp(pts.n);
        for (const auto& r : members) {
            r.contains_batch(pts, tmp.data());
            for (size_t i = 0; i < pts.n; ++i) out[i] |= tmp[i];
        }
    }

    Ball bounding() const override {
        // Enclosing (not necessarily smallest) ball of the member balls.
        const int dim = space.real_dim();
        RVec c((size_t)dim, 0.0);
        std::vector<Ball> bs;
        for (const auto& r : members) bs.push_back(r.bounding_ball());
        for (const auto& b : bs)
            for (int d = 0; d < dim; ++d) c[(size_t)d] += b.center[(size_t)d] / bs.size();
        double rad = 0.0;
        for (const auto& b : bs) {
            const double dist = std::sqrt(sq_dist(b.center, c));
            rad = std::max(rad, dist + b.radius);
        }
        return Ball(std::move(c), rad, space);
    }

    std::vector<RVec> candidates(int k, uint64_t seed) const override {
        std::vector<RVec> out;
        const int per = std::max(1, k / (int)members.size());
        for (size_t j = 0; j < members.size(); ++j) {
            auto c = members[j].candidate_points(per, seed + j + 1);
            out.insert(out.end(), c.begin(), c.end());
        }
        return out;
    }

    std::string describe() const override {
        return "union(" + std::to_string(members.size()) + ")";
    }
};

struct IntersectionImpl final : Region::Impl {
    std::vector<Region> members;
    explicit IntersectionImpl(std::vector<Region> m)
        : Impl(RegionKind::intersection, m.at(0).space()), members(std::move(m)) {}

    bool contains(std::span<const double> x) const override {
        for (const auto& r : members)
            if (!r.contains(x)) return false;
        return true;
    }

    void contains_batch(const PointBatch& pts, uint8_t* out) const override {
        std::fill(out, out + pts.n, (uint8_t)1);
        std::vector<uint8_t> tmp(pts.n);
        for (const auto& r : members) {
            r.contains_batch(pts, tmp.data());
            for (size_t i = 0; i < pts.n; ++i) out[i] &= tmp[i];
        }
    }

    Ball bounding() const override {
        // any member ball encloses the intersection; take the smallest
        Ball best = members.front().bounding_ball();
        for (size_t j = 1; j < members.size(); ++j) {
            const Ball b = members[j].bounding_ball();
            if (b.radius < best.radius) best = b;
        }
        return best;
    }

    std::vector<RVec> candidates(int k, uint64_t seed) const override {
        std::vector<RVec> out;
        uint64_t idx = 0;
        const Ball bb = bounding();
        const uint64_t budget = (uint64_t)k * 256;
        while ((int)out.size() < k && idx < budget) {
            SampleRng rng(seed, idx++);
            RVec x = sample_in_ball(bb, rng);
            if (contains(x)) out.push_back(std::move(x));
        }
        return out;
    }

    std::string describe() const override {
        return "intersection(" + std::to_string(members.size()) + ")";
    }
};

struct FiniteSetImpl final : Region::Impl {
    FiniteSetData d;
    explicit FiniteSetImpl(FiniteSetData dd)
        : Impl(RegionKind::finite_set, dd.space), d(std::move(dd)) {}

    bool contains(std::span<const double> x) const override {
        for (const auto& p : d.points)
            if (sq_dist(x, p) <= d.tol * d.tol) return true;
        return false;
    }

    Ball bounding() const override {
        const int dim = space.real_dim();
        RVec c((size_t)dim, 0.0);
        for (const auto& p : d.points)
            for (int j = 0; j < dim; ++j) c[(size_t)j] += p[(size_t)j] / d.points.size();
        double rad = 1e-9;
        for (const auto& p : d.points) rad = std::max(rad, std::sqrt(sq_dist(p, c)));
        return Ball(std::move(c), rad * (1.0 + 1e-12) + 1e-12, space);
    }

    std::vector<RVec> candidates(int k, uint64_t) const override {
        std::vector<RVec> out;
        for (int i = 0; i < k && !d.points.empty(); ++i)
            out.push_back(d.points[(size_t)i % d.points.size()]);
        return out;
    }

    std::string describe() const override {
        return "finite_set(" + std::to_string(d.points.size()) + ")";
    }
};

}  // namespace

RegionKind Region::kind() const { return impl_->kind; }
const AmbientSpace& Region::space() const { return impl_->space; }
bool Region::contains(std::span<const double> x) const { return impl_->contains(x); }
void Region::contains_batch(const PointBatch& pts, uint8_t* out) const {
    impl_->contains_batch(pts, out);
}
Ball Region::bounding_ball() const { return impl_->bounding(); }
std::vector<RVec> Region::candidate_points(int k, uint64_t seed) const {
    return impl_->candidates(k, seed);
}
std::string Region::describe() const { return impl_->describe(); }

Region Region::ball(Ball b) { return Region(std::make_shared<BallImpl>(std::move(b))); }

Region Region::box(AmbientSpace sp, RVec lo, RVec hi) {
    if ((int)lo.size() != sp.real_dim() || lo.size() != hi.size())
        throw std::invalid_argument("Region::box: dimension mismatch");
    for (size_t i = 0; i < lo.size(); ++i)
        if (hi[i] < lo[i]) throw std::invalid_argument("Region::box: empty box");
    return Region(std::make_shared<BoxImpl>(BoxData{sp, std::move(lo), std::move(hi)}));
}

Region Region::product(AmbientSpace sp, std::vector<PlaneSet> cf, std::vector<Interval> rf) {
    if ((int)cf.size() != sp.m || (int)rf.size() != sp.n - sp.m)
        throw std::invalid_argument("Region::product: factor count mismatch");
    return Region(std::make_shared<ProductImpl>(
        ProductData{sp, std::move(cf), std::move(rf)}));
}

Region Region::plane(const PlaneSet& f) {
    const AmbientSpace sp(1, 1);
    if (f.kind == PlaneSet::Kind::disc)
        return Region::ball(Ball({f.center.real(), f.center.imag()}, f.radius, sp));
    return Region::box(sp, {f.x0, f.y0}, {f.x1, f.y1});
}

Region Region::lemniscate(AmbientSpace sp, Polynomial p, double threshold, Ball bounding) {
    if (p.nvars() != sp.n)
        throw std::invalid_argument("Region::lemniscate: polynomial arity mismatch");
    if (threshold <= 0.0)
        throw std::invalid_argument("Region::lemniscate: threshold > 0 required");
    return Region(std::make_shared<LemniscateImpl>(
        LemniscateData{sp, std::move(p), threshold, std::move(bounding)}));
}

Region Region::sublevel(AmbientSpace sp, std::shared_ptr<const ComplexFunction> fn,
                        double s, Ball bounding) {
    if (!fn) throw std::invalid_argument("Region::sublevel: null function");
    return Region(std::make_shared<SublevelImpl>(
        SublevelData{sp, std::move(fn), s, std::move(bounding)}));
}

Region Region::union_of(std::vector<Region> members) {
    if (members.empty()) throw std::invalid_argument("Region::union_of: empty union");
    for (const auto& r : members)
        if (!(r.space() == members.front().space()))
            throw std::invalid_argument("Region::union_of: mixed spaces");
    return Region(std::make_shared<UnionImpl>(std::move(members)));
}

Region Region::intersection(std::vector<Region> members) {
    if (members.empty()) throw std::invalid_argument("Region::intersection: empty");
    for (const auto& r : members)
        if (!(r.space() == members.front().space()))
            throw std::invalid_argument("Region::intersection: mixed spaces");
    return Region(std::make_shared<IntersectionImpl>(std::move(members)));
}

Region Region::finite_set(AmbientSpace sp, std::vector<RVec> points) {
    return Region(std::make_shared<FiniteSetImpl>(FiniteSetData{sp, std::move(points)}));
}

const Ball* Region::as_ball() const {
    return kind() == RegionKind::ball ? &static_cast<const BallImpl*>(impl_.get())->b
                                      : nullptr;
}
const BoxData* Region::as_box() const {
    return kind() == RegionKind::box ? &static_cast<const BoxImpl*>(impl_.get())->d
                                     : nullptr;
}
const ProductData* Region::as_product() const {
    return kind() == RegionKind::product
               ? &static_cast<const ProductImpl*>(impl_.get())->d
               : nullptr;
}
const LemniscateData* Region::as_lemniscate() const {
    return kind() == RegionKind::lemniscate
               ? &static_cast<const LemniscateImpl*>(impl_.get())->d
               : nullptr;
}
const SublevelData* Region::as_sublevel() const {
    return kind() == RegionKind::sublevel
               ? &static_cast<const SublevelImpl*>(impl_.get())->d
               : nullptr;
}
const std::vector<Region>* Region::as_union() const {
    return kind() == RegionKind::union_of
               ? &static_cast<const UnionImpl*>(impl_.get())->members
               : nullptr;
}
const FiniteSetData* Region::as_finite_set() const {
    return kind() == RegionKind::finite_set
               ? &static_cast<const FiniteSetImpl*>(impl_.get())->d
               : nullptr;
}

}  // namespace plcap
