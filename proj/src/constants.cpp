#include "plcap/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace plcap {

using boost::multiprecision::cpp_int;

namespace {

cpp_int factorial(int k) {
    cpp_int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

Rational polya_constant_complex(int n) {
    if (n < 1) throw std::domain_error("polya_constant_complex: n >= 1 required");
    cpp_int num = cpp_int(1) << (2 * n);  // 4^n
    const cpp_int f = factorial(n);
    num *= f * f;
    return Rational(num, factorial(2 * n - 1));
}

Rational slice_constant_complex(int n) { return polya_constant_complex(n) / 4; }

Rational polya_constant(int n, int m) {
    if (m < 0 || m > n) throw std::domain_error("polya_constant: 0 <= m <= n required");
    if (m == n) return polya_constant_complex(n);
    return Rational(8 * (n + m));
}

int polya_exponent(int n, int m) {
    if (m < 0 || m > n) throw std::domain_error("polya_exponent: 0 <= m <= n required");
    return m == n ? 2 : 1;
}

double cegrell_trace_constant(int n, int m) {
    if (m < 0 || m > n) throw std::domain_error("cegrell_trace_constant: 0 <= m <= n");
    return 8.0 * (1.0 + std::sqrt(2.0)) * (n + m);
}

double bmo_constant(int n, int m) {
    if (m < 0 || m > n) throw std::domain_error("bmo_constant: 0 <= m <= n required");
    if (m == n) {
        const double c = to_double(polya_constant_complex(n));
        return std::log1p(c) + 0.5 * c;
    }
    const double a = 8.0 * (n + m);
    return 2.0 * std::log1p(a) + a;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace plcap
