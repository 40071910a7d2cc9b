#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace plcap {

using Complex = std::complex<double>;
using RVec = std::vector<double>;   // point of a generic subspace, real coordinates
using CVec = std::vector<Complex>;  // point of C^n

// Generic subspace G = C^m x R^{n-m} inside C^n, with its induced euclidean
// structure. m == n means G is all of C^n. Real points of G are stored as
// (Re z_1, Im z_1, ..., Re z_m, Im z_m, x_{m+1}, ..., x_n).
struct AmbientSpace {
    int n = 1;  // complex dimension of the ambient C^n
    int m = 1;  // complex dimension of G, 0 <= m <= n

    AmbientSpace() = default;
    AmbientSpace(int n_, int m_) : n(n_), m(m_) {
        if (n < 1 || m < 0 || m > n)
            throw std::invalid_argument("AmbientSpace: need 1 <= n and 0 <= m <= n");
    }

    static AmbientSpace full(int n_) { return AmbientSpace(n_, n_); }
    static AmbientSpace totally_real(int n_) { return AmbientSpace(n_, 0); }

    int real_dim() const { return n + m; }
    bool full_complex() const { return m == n; }

    bool operator==(const AmbientSpace& o) const { return n == o.n && m == o.m; }
};

// Embed a real point of G into C^n.
inline CVec embed(const AmbientSpace& sp, std::span<const double> x) {
    if ((int)x.size() != sp.real_dim())
        throw std::invalid_argument("embed: coordinate count does not match space");
    CVec z(sp.n);
    for (int j = 0; j < sp.m; ++j) z[j] = Complex(x[2 * j], x[2 * j + 1]);
    for (int j = sp.m; j < sp.n; ++j) z[j] = Complex(x[sp.m + j], 0.0);
    return z;
}

inline double sq_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

inline double sq_dist(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

}  // namespace plcap
