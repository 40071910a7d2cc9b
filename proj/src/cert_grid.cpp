#include "cert_grid.hpp"

#include <cmath>
#include <numbers>

namespace plcap::detail {

namespace {

struct Group {
    std::vector<RVec> values;
    std::vector<int> coords;
    double inflation = 1.0;
};

Group circle_group(int d, int cx, int cy, Complex center, double radius) {
    const int M = std::max(64, 40 * d);
    Group g;
    g.coords = {cx, cy};
    g.values.reserve((size_t)M);
    for (int i = 0; i < M; ++i) {
        const double t = 2.0 * std::numbers::pi * i / M;
        g.values.push_back(
            {center.real() + radius * std::cos(t), center.imag() + radius * std::sin(t)});
    }
    g.inflation = 1.0 / (1.0 - std::numbers::pi * d / M);
    return g;
}

Group cheb_group(int d, int coord, double lo, double hi) {
    Group g;
    g.coords = {coord};
    if (hi == lo) {
        g.values.push_back({lo});
        return g;
    }
    const int M = std::max(33, 20 * d);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    g.values.reserve((size_t)M);
    for (int i = 0; i < M; ++i) {
        const double th = std::numbers::pi * (i + 0.5) / M;
        g.values.push_back({mid + half * std::cos(th)});
    }
    g.inflation = 1.0 / (1.0 - d * std::numbers::pi / (2.0 * M));
    return g;
}

bool build_groups(const Region& region, int degree, std::vector<Group>& groups) {
    const AmbientSpace sp = region.space();
    const int d = std::max(degree, 1);
    if (const Ball* b = region.as_ball()) {
        if (sp.real_dim() != 2 || !sp.full_complex()) return false;
        groups.push_back(circle_group(d, 0, 1, Complex(b->center[0], b->center[1]), b->radius));
        return true;
    }
    if (const BoxData* bx = region.as_box()) {
        for (int c = 0; c < sp.real_dim(); ++c)
            groups.push_back(cheb_group(d, c, bx->lo[(size_t)c], bx->hi[(size_t)c]));
        return true;
    }
    if (const ProductData* pr = region.as_product()) {
        for (int j = 0; j < sp.m; ++j) {
            const PlaneSet& f = pr->complex_factors[(size_t)j];
            if (f.kind == PlaneSet::Kind::disc) {
                groups.push_back(circle_group(d, 2 * j, 2 * j + 1, f.center, f.radius));
            } else {
                groups.push_back(cheb_group(d, 2 * j, f.x0, f.x1));
                groups.push_back(cheb_group(d, 2 * j + 1, f.y0, f.y1));
            }
        }
        for (int j = 0; j < sp.n - sp.m; ++j) {
            const Interval& iv = pr->real_factors[(size_t)j];
            groups.push_back(cheb_group(d, 2 * sp.m + j, iv.a, iv.b));
        }
        return true;
    }
    return false;
}

}  // namespace

CertGrid cert_grid_info(const Region& region, int degree, size_t max_points) {
    std::vector<Group> groups;
    CertGrid out;
    if (!build_groups(region, degree, groups)) return out;
    out.total = 1;
    for (const auto& g : groups) {
        out.total *= g.values.size();
        out.inflation *= g.inflation;
        if (out.total > max_points || g.inflation <= 0.0) return CertGrid{};
    }
    out.available = true;
    return out;
}

CertGrid cert_grid_foreach(const Region& region, int degree, size_t max_points,
                           const std::function<void(const RVec&)>& fn) {
    const CertGrid info = cert_grid_info(region, degree, max_points);
    if (!info.available) return info;
    std::vector<Group> groups;
    build_groups(region, degree, groups);

    RVec x((size_t)region.space().real_dim(), 0.0);
    std::vector<size_t> idx(groups.size(), 0);
    for (;;) {
        for (size_t gi = 0; gi < groups.size(); ++gi) {
            const auto& tuple = groups[gi].values[idx[gi]];
            for (size_t c = 0; c < groups[gi].coords.size(); ++c)
                x[(size_t)groups[gi].coords[c]] = tuple[c];
        }
        fn(x);
        size_t gi = 0;
        while (gi < groups.size()) {
            if (++idx[gi] < groups[gi].values.size()) break;
            idx[gi] = 0;
            ++gi;
        }
        if (gi == groups.size()) break;
    }
    return info;
}

}  // namespace plcap::detail
