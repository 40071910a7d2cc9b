#include "plcap/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace plcap {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, int max_iters,
                             double tol) {
    const size_t n = x0.size();
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    for (int it = 0; it < max_iters; ++it) {
        std::vector<size_t> ord(n + 1);
        std::iota(ord.begin(), ord.end(), (size_t)0);
        std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        const size_t best = ord[0], worst = ord[n], second = ord[n - 1];
        if (std::isfinite(vals[worst]) && vals[worst] - vals[best] < tol) break;

        std::vector<double> centroid(n, 0.0);
        for (size_t k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (size_t i = 0; i < n; ++i) centroid[i] += pts[k][i] / (double)n;
        }
        auto mix = [&](double t) {
            std::vector<double> x(n);
            for (size_t i = 0; i < n; ++i)
                x[i] = centroid[i] + t * (pts[worst][i] - centroid[i]);
            return x;
        };

        const auto xr = mix(-1.0);
        const double fr = eval(xr);
        if (fr < vals[best]) {
            const auto xe = mix(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            const auto xc = mix(0.5);
            const double fc = eval(xc);
            if (fc < vals[worst]) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (size_t k = 0; k <= n; ++k) {
                    if (k == best) continue;
                    for (size_t i = 0; i < n; ++i)
                        pts[k][i] = 0.5 * (pts[k][i] + pts[best][i]);
                    vals[k] = eval(pts[k]);
                }
            }
        }
    }

    size_t bi = 0;
    for (size_t i = 1; i <= n; ++i)
        if (vals[i] < vals[bi]) bi = i;
    return {pts[bi], vals[bi], evals};
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          int iters) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

namespace {

struct SobolRow {
    int s;
    uint32_t a;
    std::array<uint32_t, 8> m;
};

// Primitive-polynomial direction numbers for the first twelve dimensions.
constexpr SobolRow kRows[] = {
    {1, 0, {1}},           {2, 1, {1, 3}},        {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},     {4, 1, {1, 1, 3, 3}},  {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}}, {5, 4, {1, 1, 5, 5, 5}}, {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}}, {5, 13, {1, 1, 1, 3, 11}},
};

}  // namespace

Sobol::Sobol(int dim) : dim_(dim) {
    if (dim < 1 || dim > 12) throw std::invalid_argument("Sobol: 1 <= dim <= 12");
    dirs_.resize((size_t)dim);
    state_.assign((size_t)dim, 0);
    // Dimension 0: van der Corput.
    for (int k = 0; k < 32; ++k) dirs_[0][(size_t)k] = 1u << (31 - k);
    for (int d = 1; d < dim; ++d) {
        const SobolRow& row = kRows[d - 1];
        const int s = row.s;
        std::array<uint32_t, 32> m{};
        for (int k = 0; k < s; ++k) m[(size_t)k] = row.m[(size_t)k];
        for (int k = s; k < 32; ++k) {
            uint32_t v = m[(size_t)(k - s)] ^ (m[(size_t)(k - s)] << s);
            for (int j = 1; j < s; ++j)
                if ((row.a >> (s - 1 - j)) & 1u) v ^= m[(size_t)(k - j)] << j;
            m[(size_t)k] = v;
        }
        for (int k = 0; k < 32; ++k) dirs_[(size_t)d][(size_t)k] = m[(size_t)k] << (31 - k);
    }
}

std::vector<double> Sobol::next() {
    // Gray-code update: flip the direction of the lowest zero bit of index.
    const uint64_t i = index_++;
    int c = 0;
    uint64_t v = i;
    while (v & 1) {
        v >>= 1;
        ++c;
    }
    std::vector<double> out((size_t)dim_);
    for (int d = 0; d < dim_; ++d) {
        state_[(size_t)d] ^= dirs_[(size_t)d][(size_t)std::min(c, 31)];
        out[(size_t)d] = (double)state_[(size_t)d] * 0x1.0p-32;
    }
    return out;
}

}  // namespace plcap
