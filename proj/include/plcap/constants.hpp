#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace plcap {

using Rational = boost::multiprecision::cpp_rational;

// Constant of the complex volume-capacity inequality:
//   lambda_{2n}(K)/lambda_{2n}(B) <= C_c(n) * T_B(K)^2,
// with C_c(n) = 4^n (n!)^2 / (2n-1)!. Exact rational arithmetic.
Rational polya_constant_complex(int n);

// C_c(n)/4, the constant of the complex slicing bound.
Rational slice_constant_complex(int n);

// Unified constant for a generic subspace of complex dimension m <= n:
// 8(n+m) when m < n, and polya_constant_complex(n) when m == n.
Rational polya_constant(int n, int m);

// Exponent of T_B(K) in the unified inequality: 2 when m == n, else 1.
int polya_exponent(int n, int m);

// Constant of the volume bound for sublevel sets of unit-mass potentials on
// the trace of a generic subspace: 8(1+sqrt 2)(n+m).
double cegrell_trace_constant(int n, int m);

// Uniform bound for the BMO norm of log-growth psh functions restricted to a
// generic subspace: 2 log(1+8(n+m)) + 8(n+m) for m < n, and
// log(1+C_c(n)) + C_c(n)/2 for m == n.
double bmo_constant(int n, int m);

double to_double(const Rational& r);
std::string to_string(const Rational& r);

}  // namespace plcap
